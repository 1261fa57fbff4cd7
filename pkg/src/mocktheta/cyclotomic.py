"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis {zeta_n^j : 0 <= j < phi(n)} of
Q[x]/(Phi_n(x)), with zeta_n = e(1/n) = exp(2*pi*i/n).  The representation
is canonical: a value is a dict of integer numerators over one positive
denominator, reduced so that gcd(all numerators, denominator) = 1 and no
stored numerator is zero.  Two values of the same order are equal iff their
reduced data are identical; mixed orders are compared after embedding into
the lcm order.

Reduction mod Phi_n is table driven: each order keeps an integer matrix
whose row j is x^j mod Phi_n(x).  Sums of many roots of unity (Gauss sums,
DFT kernels) reduce in one matrix product, which is the hot path of the
verification suites.
"""

from __future__ import annotations

import cmath
import threading
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Union

import numpy as np

RationalLike = Union[int, Fraction]

# float64 matmul is exact on integers as long as every intermediate stays
# below 2^53; above that we fall back to object (big-int) arithmetic.
_FLOAT_EXACT_BOUND = 1 << 53
_INT64_BOUND = 1 << 62


def _poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        out[i - dn] = q
        for j, d in enumerate(den):
            num[i - dn + j] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _squarefree_cyclotomic(n: int, cache: dict[int, list[int]]) -> list[int]:
    if n in cache:
        return cache[n]
    if n == 1:
        cache[1] = [-1, 1]
        return cache[1]
    # x^n - 1 divided by the product of Phi_d over proper divisors d | n
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, _squarefree_cyclotomic(d, cache))
    out = _poly_div_exact(num, den)
    cache[n] = out
    return out


_SQFREE_CACHE: dict[int, list[int]] = {}


def cyclotomic_polynomial(n: int) -> list[int]:
    """Coefficients of Phi_n(x), constant term first."""
    if n < 1:
        raise ValueError("order must be positive")
    rad = 1
    m = n
    for p in range(2, n + 1):
        if p * p > m:
            break
        if m % p == 0:
            rad *= p
            while m % p == 0:
                m //= p
    if m > 1:
        rad *= m
    base = _squarefree_cyclotomic(rad, _SQFREE_CACHE)
    if rad == n:
        return list(base)
    # Phi_n(x) = Phi_rad(x^(n/rad))
    k = n // rad
    out = [0] * ((len(base) - 1) * k + 1)
    for i, c in enumerate(base):
        out[i * k] = c
    return out


class CycContext:
    """Per-order reduction data: Phi_n and the table of x^j mod Phi_n."""

    __slots__ = ("order", "phi", "poly", "reduction", "max_entry", "_roots")

    def __init__(self, n: int):
        self.order = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        phi = self.phi
        red = np.zeros((n, phi), dtype=np.int64)
        for j in range(min(phi, n)):
            red[j, j] = 1
        # x^phi == -(lower part of Phi_n); iterate x^(j) = x * x^(j-1)
        top = np.array(self.poly[:phi], dtype=np.int64)
        for j in range(phi, n):
            prev = red[j - 1]
            red[j, 1:] = prev[:-1]
            lead = prev[phi - 1]
            if lead:
                red[j] -= lead * top
        self.reduction = red
        self.max_entry = int(np.abs(red).max()) if n > 0 else 1
        if self.max_entry >= (1 << 40):
            raise ArithmeticError(
                f"reduction table entries too large for order {n}")
        self._roots: np.ndarray | None = None

    def roots(self) -> np.ndarray:
        """exp(2*pi*i*j/n) for j in range(n), for float embedding."""
        if self._roots is None:
            self._roots = np.exp(2j * np.pi * np.arange(self.order) / self.order)
        return self._roots

    def reduce_rows(self, counts: np.ndarray) -> np.ndarray:
        """Canonical coefficients of rows of exponent-count vectors.

        counts has shape (m, order); entry [i, e] is the integer coefficient
        of zeta^e.  Returns (m, phi) int64, exactly.
        """
        bound = int(np.abs(counts).max(initial=0)) * self.max_entry * self.order
        if bound < _FLOAT_EXACT_BOUND:
            out = counts.astype(np.float64) @ self.reduction.astype(np.float64)
            return np.rint(out).astype(np.int64)
        if bound < _INT64_BOUND:
            return counts.astype(np.int64) @ self.reduction
        return (counts.astype(object) @ self.reduction.astype(object))


_CONTEXTS: dict[int, CycContext] = {}
_CONTEXT_LOCK = threading.Lock()


def get_context(n: int) -> CycContext:
    ctx = _CONTEXTS.get(n)
    if ctx is None:
        with _CONTEXT_LOCK:
            ctx = _CONTEXTS.get(n)
            if ctx is None:
                ctx = CycContext(n)
                _CONTEXTS[n] = ctx
    return ctx


def _normalize(order: int, num: dict[int, int], den: int):
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    num = {j: a for j, a in num.items() if a}
    if not num:
        return {}, 1
    g = den
    for a in num.values():
        g = gcd(g, a)
        if g == 1:
            break
    if den < 0:
        g = -g
    if g != 1:
        num = {j: a // g for j, a in num.items()}
        den //= g
    return num, den


def _reduce_exponent_terms(order: int, terms: Mapping[int, int], den: int):
    """Canonicalize an exponent dict {e mod order: integer numerator}."""
    ctx = get_context(order)
    phi = ctx.phi
    simple: dict[int, int] = {}
    hard: list[tuple[int, int]] = []
    for e, a in terms.items():
        if a == 0:
            continue
        e %= order
        if e < phi:
            simple[e] = simple.get(e, 0) + a
        else:
            hard.append((e, a))
    if hard:
        idx = np.array([e for e, _ in hard], dtype=np.intp)
        coefs = [a for _, a in hard]
        mx = max(abs(a) for a in coefs)
        if mx * ctx.max_entry * len(hard) < _FLOAT_EXACT_BOUND:
            contrib = np.array(coefs, dtype=np.float64) @ ctx.reduction[idx].astype(np.float64)
            contrib = np.rint(contrib).astype(np.int64)
            for j in np.nonzero(contrib)[0]:
                simple[int(j)] = simple.get(int(j), 0) + int(contrib[j])
        else:
            red = ctx.reduction
            for e, a in hard:
                row = red[e]
                for j in np.nonzero(row)[0]:
                    simple[int(j)] = simple.get(int(j), 0) + a * int(row[j])
    return _normalize(order, simple, den)


class CycNumber:
    """An exact element of Q(zeta_n) in canonical power-basis form."""

    __slots__ = ("order", "num", "den")

    def __init__(self, order: int, num: dict[int, int], den: int, *, _raw: bool = False):
        if _raw:
            self.order = order
            self.num = num
            self.den = den
            return
        if order < 1:
            raise ValueError("order must be >= 1")
        self.order = order
        self.num, self.den = _reduce_exponent_terms(order, num, den)

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zero(order: int = 1) -> "CycNumber":
        return CycNumber(order, {}, 1, _raw=True)

    @staticmethod
    def one() -> "CycNumber":
        return CycNumber(1, {0: 1}, 1, _raw=True)

    @staticmethod
    def rational(value: RationalLike) -> "CycNumber":
        f = Fraction(value)
        if f == 0:
            return CycNumber.zero()
        return CycNumber(1, {0: f.numerator}, f.denominator, _raw=True)

    @staticmethod
    def from_terms(order: int, terms: Mapping[int, RationalLike]) -> "CycNumber":
        """Build sum of coeff * zeta_order^e from an exponent map."""
        den = 1
        for v in terms.values():
            den = lcm(den, Fraction(v).denominator)
        num = {}
        for e, v in terms.items():
            f = Fraction(v)
            num[e] = num.get(e, 0) + f.numerator * (den // f.denominator)
        return CycNumber(order, num, den)

    # ------------------------------------------------------------------
    # views

    @property
    def coeffs(self) -> dict[int, Fraction]:
        """Power-basis coefficients as exact rationals."""
        return {j: Fraction(a, self.den) for j, a in sorted(self.num.items())}

    def is_zero(self) -> bool:
        return not self.num

    def is_rational(self) -> bool:
        return not self.num or set(self.num) == {0}

    def as_rational(self) -> Fraction:
        if not self.num:
            return Fraction(0)
        if set(self.num) != {0}:
            raise ValueError("not a rational value")
        return Fraction(self.num[0], self.den)

    def is_algebraic_integer(self) -> bool:
        """True iff all power-basis coefficients are integers.

        Valid because Z[zeta_n] is the full ring of integers of Q(zeta_n).
        """
        return self.den == 1

    # ------------------------------------------------------------------
    # arithmetic

    def _embed_terms(self, target: int) -> dict[int, int]:
        m = target // self.order
        return {j * m: a for j, a in self.num.items()}

    def embed(self, target: int) -> "CycNumber":
        """Rewrite in Q(zeta_target); target must be a multiple of order."""
        if target == self.order:
            return self
        if target % self.order:
            raise ValueError("target order must be a multiple of the current order")
        return CycNumber(target, self._embed_terms(target), self.den)

    def __add__(self, other) -> "CycNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == other.order:
            den = lcm(self.den, other.den)
            s1, s2 = den // self.den, den // other.den
            num = {j: a * s1 for j, a in self.num.items()}
            for j, a in other.num.items():
                num[j] = num.get(j, 0) + a * s2
            n2, d2 = _normalize(self.order, num, den)
            return CycNumber(self.order, n2, d2, _raw=True)
        n = lcm(self.order, other.order)
        den = lcm(self.den, other.den)
        s1, s2 = den // self.den, den // other.den
        num = {e: a * s1 for e, a in self._embed_terms(n).items()}
        for e, a in other._embed_terms(n).items():
            num[e] = num.get(e, 0) + a * s2
        return CycNumber(n, num, den)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.order, {j: -a for j, a in self.num.items()},
                         self.den, _raw=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "CycNumber":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                return CycNumber.zero()
            num = {j: a * f.numerator for j, a in self.num.items()}
            n2, d2 = _normalize(self.order, num, self.den * f.denominator)
            return CycNumber(self.order, n2, d2, _raw=True)
        if not isinstance(other, CycNumber):
            return NotImplemented
        if self.is_rational():
            return other * self.as_rational()
        if other.is_rational():
            return self * other.as_rational()
        n = lcm(self.order, other.order)
        t1 = self._embed_terms(n)
        t2 = other._embed_terms(n)
        if len(t1) > len(t2):
            t1, t2 = t2, t1
        conv: dict[int, int] = {}
        for e1, a1 in t1.items():
            for e2, a2 in t2.items():
                e = e1 + e2
                if e >= n:
                    e -= n
                conv[e] = conv.get(e, 0) + a1 * a2
        return CycNumber(n, conv, self.den * other.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inv(self) -> "CycNumber":
        """Exact inverse via the extended Euclidean algorithm mod Phi_n."""
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNumber.rational(1 / self.as_rational())
        ctx = get_context(self.order)
        phi_poly = [Fraction(c) for c in ctx.poly]
        a = [Fraction(0)] * ctx.phi
        for j, c in self.num.items():
            a[j] = Fraction(c, self.den)
        # xgcd(a, Phi_n) in Q[x]; Phi_n is irreducible so gcd is a constant
        r0, r1 = phi_poly, _ftrim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _fdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fsub(s0, _fmul(q, s1))
        if not r1 or r1[0] == 0:
            raise ZeroDivisionError("inverse of zero")
        c = r1[0]
        inv_terms = {j: v / c for j, v in enumerate(s1) if v}
        out = CycNumber.from_terms(self.order, inv_terms)
        return out

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            return self.inv() ** (-k)
        out = CycNumber.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conj(self) -> "CycNumber":
        """Complex conjugation, zeta_n -> zeta_n^(-1)."""
        n = self.order
        return CycNumber(n, {(n - j) % n: a for j, a in self.num.items()}, self.den)

    # ------------------------------------------------------------------
    # comparison / output

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == other.order:
            return self.den == other.den and self.num == other.num
        n = lcm(self.order, other.order)
        a = self.embed(n)
        b = other.embed(n)
        return a.den == b.den and a.num == b.num

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None  # mutable-free but order-dependent representation

    def __bool__(self) -> bool:
        return bool(self.num)

    def embed_complex(self) -> complex:
        """Numerical value with zeta_n = exp(2*pi*i/n) (float precision)."""
        if not self.num:
            return 0j
        ctx = get_context(self.order)
        roots = ctx.roots()
        total = 0j
        for j, a in self.num.items():
            total += a * roots[j]
        return total / self.den

    def embed_mp(self, digits: int = 30):
        """High-precision embedding (mpmath), for cross-checks."""
        import mpmath

        with mpmath.workdps(digits):
            total = mpmath.mpc(0)
            for j, a in self.num.items():
                total += a * mpmath.expjpi(mpmath.mpf(2 * j) / self.order)
            return total / self.den

    def __repr__(self) -> str:
        if not self.num:
            return "Cyc(0)"
        parts = []
        for j, a in sorted(self.num.items()):
            coeff = f"{a}" if self.den == 1 else f"{a}/{self.den}"
            parts.append(coeff if j == 0 else f"{coeff}*z{self.order}^{j}")
        return "Cyc(" + " + ".join(parts) + ")"

    # ------------------------------------------------------------------
    # serialization: {"order": n, "terms": [[j, num, den], ...]}

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "terms": [[j, a, self.den] for j, a in sorted(self.num.items())],
        }

    @staticmethod
    def from_json(obj: dict) -> "CycNumber":
        order = obj["order"]
        terms = {int(j): Fraction(int(n), int(d)) for j, n, d in obj["terms"]}
        return CycNumber.from_terms(order, terms)


def _coerce(x):
    if isinstance(x, CycNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNumber.rational(x)
    return NotImplemented


# ----------------------------------------------------------------------
# Fraction-polynomial helpers for inversion

def _ftrim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _fsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * (len(b) - len(a))
    for i, v in enumerate(b):
        out[i] -= v
    return _ftrim(out)


def _fmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ftrim(out)


def _fdivmod(a: list[Fraction], b: list[Fraction]):
    r = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    db = len(b) - 1
    lead = b[-1]
    for i in range(len(r) - 1, db - 1, -1):
        if r[i] == 0:
            continue
        c = r[i] / lead
        q[i - db] = c
        for j, y in enumerate(b):
            r[i - db + j] -= c * y
    return _ftrim(q), _ftrim(r)


# ----------------------------------------------------------------------
# named constructors used throughout

def root_of_unity(r: RationalLike) -> CycNumber:
    """e(r) = exp(2*pi*i*r) for rational r; well defined mod 1."""
    f = Fraction(r) % 1
    q = f.denominator
    return CycNumber(q, {f.numerator: 1}, 1)


def imag_unit() -> CycNumber:
    return root_of_unity(Fraction(1, 4))


def sin_pi(r: RationalLike) -> CycNumber:
    """sin(pi*r) as an exact cyclotomic value: (e(r/2) - e(-r/2)) / (2i)."""
    f = Fraction(r)
    plus = root_of_unity(f / 2)
    minus = root_of_unity(-f / 2)
    # 1/(2i) = -i/2 = e(-1/4)/2
    return (plus - minus) * root_of_unity(Fraction(-1, 4)) * Fraction(1, 2)


def cos_pi(r: RationalLike) -> CycNumber:
    f = Fraction(r)
    return (root_of_unity(f / 2) + root_of_unity(-f / 2)) * Fraction(1, 2)


def sqrt12() -> CycNumber:
    """sqrt(12) = 2*(zeta_12 + zeta_12^(-1))."""
    return (root_of_unity(Fraction(1, 12)) + root_of_unity(Fraction(-1, 12))) * 2


def sqrt_neg12i() -> CycNumber:
    """Principal branch sqrt(-12i) = sqrt(12) * e(-1/8)."""
    return sqrt12() * root_of_unity(Fraction(-1, 8))


_KRON12 = {1: 1, 5: -1, 7: -1, 11: 1}


def kronecker_12(k: int) -> int:
    """Kronecker symbol (12/k): +1 at k = +-1, -1 at k = +-5 (mod 12), else 0."""
    return _KRON12.get(k % 12, 0)


def embed_float(x: CycNumber, digits: int | None = None) -> complex:
    """Numerical embedding; digits selects an mpmath path for cross-checks."""
    if digits is None:
        return x.embed_complex()
    return complex(x.embed_mp(digits))


def root_sum(order: int, terms: Iterable[tuple[int, int]]) -> CycNumber:
    """Sum of num * zeta_order^e over (e, num) pairs, canonicalized once.

    The workhorse for exponential sums: exponents may repeat and may be any
    integers (reduced mod order here).
    """
    acc: dict[int, int] = {}
    for e, a in terms:
        e %= order
        acc[e] = acc.get(e, 0) + a
    return CycNumber(order, acc, 1)
