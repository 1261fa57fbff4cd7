"""Truncated formal Laurent-Puiseux series in q with cyclotomic coefficients.

A QSeries carries three pieces of data: a positive integer denom D such
that every exponent lies in (1/D)*Z, a truncation bound trunc (coefficients
of q^e for e >= trunc are unknown; math.inf marks an exact polynomial), and
a finite map exponent -> CycNumber with no zero values.  Truncation is a
hard contract: every operation computes the tightest bound provable from
its operands, so identity tests can never silently compare beyond the
region both sides actually know.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Union

from .cyclotomic import CycNumber, RationalLike

INF = math.inf

Exponent = Union[int, Fraction]


def _as_frac(e) -> Fraction:
    return e if isinstance(e, Fraction) else Fraction(e)


def _coerce_coeff(v) -> CycNumber:
    if isinstance(v, CycNumber):
        return v
    return CycNumber.rational(v)


class QSeries:
    __slots__ = ("denom", "trunc", "coeffs")

    def __init__(self, denom: int, trunc, coeffs: Mapping[Exponent, CycNumber]):
        if denom < 1:
            raise ValueError("denominator must be a positive integer")
        self.denom = denom
        self.trunc = trunc if trunc == INF else _as_frac(trunc)
        clean: dict[Fraction, CycNumber] = {}
        for e, v in coeffs.items():
            e = _as_frac(e)
            if (e * denom).denominator != 1:
                raise ValueError(f"exponent {e} not in (1/{denom})Z")
            v = _coerce_coeff(v)
            if e < self.trunc and not v.is_zero():
                clean[e] = v
        self.coeffs = clean

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zero(denom: int = 1, trunc=INF) -> "QSeries":
        return QSeries(denom, trunc, {})

    @staticmethod
    def one(denom: int = 1, trunc=INF) -> "QSeries":
        return QSeries(denom, trunc, {Fraction(0): CycNumber.one()})

    @staticmethod
    def monomial(coeff, e: Exponent, denom: int | None = None, trunc=INF) -> "QSeries":
        e = _as_frac(e)
        if denom is None:
            denom = e.denominator
        return QSeries(denom, trunc, {e: _coerce_coeff(coeff)})

    # ------------------------------------------------------------------
    # views

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return self.trunc == INF

    def min_exponent(self):
        return min(self.coeffs) if self.coeffs else None

    def max_exponent(self):
        return max(self.coeffs) if self.coeffs else None

    def coefficient(self, e: Exponent) -> CycNumber:
        e = _as_frac(e)
        if e >= self.trunc:
            raise ValueError(f"coefficient of q^{e} is beyond truncation {self.trunc}")
        return self.coeffs.get(e, CycNumber.zero())

    def exponents(self) -> list[Fraction]:
        return sorted(self.coeffs)

    def num_terms(self) -> int:
        return len(self.coeffs)

    # ------------------------------------------------------------------
    # ring operations

    def _common(self, other: "QSeries") -> int:
        return lcm(self.denom, other.denom)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)):
            other = QSeries.monomial(other, 0)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            cur = out.get(e)
            out[e] = v if cur is None else cur + v
        return QSeries(self._common(other), trunc, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        s = QSeries.__new__(QSeries)
        s.denom = self.denom
        s.trunc = self.trunc
        s.coeffs = {e: -v for e, v in self.coeffs.items()}
        return s

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)):
            other = QSeries.monomial(other, 0)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _mul_trunc(self, other: "QSeries"):
        # the unknown tail of one factor first pollutes the product at
        # trunc_i + minexp_j; an exact zero factor gives an exact zero
        if self.is_zero() and self.is_exact():
            return INF
        if other.is_zero() and other.is_exact():
            return INF
        m1 = self.min_exponent()
        m1 = self.trunc if m1 is None else m1
        m2 = other.min_exponent()
        m2 = other.trunc if m2 is None else m2
        b1 = INF if self.trunc == INF else self.trunc + m2
        b2 = INF if other.trunc == INF else other.trunc + m1
        return min(b1, b2)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = self._mul_trunc(other)
        out: dict[Fraction, CycNumber] = {}
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                if e >= trunc:
                    continue
                prod = v1 * v2
                cur = out.get(e)
                out[e] = prod if cur is None else cur + prod
        return QSeries(self._common(other), trunc, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, scalar) -> "QSeries":
        scalar = _coerce_coeff(scalar)
        if scalar.is_zero():
            return QSeries.zero(self.denom)
        return QSeries(self.denom, self.trunc,
                       {e: v * scalar for e, v in self.coeffs.items()})

    def shift(self, r: Exponent) -> "QSeries":
        """Multiply by q^r."""
        r = _as_frac(r)
        trunc = INF if self.trunc == INF else self.trunc + r
        return QSeries(lcm(self.denom, r.denominator), trunc,
                       {e + r: v for e, v in self.coeffs.items()})

    def substitute_power(self, m: int) -> "QSeries":
        """q -> q^m."""
        if m < 1:
            raise ValueError("power must be a positive integer")
        trunc = INF if self.trunc == INF else self.trunc * m
        return QSeries(self.denom, trunc,
                       {e * m: v for e, v in self.coeffs.items()})

    def scale_variable(self, u) -> "QSeries":
        """q -> u*q for a root of unity u; requires integer exponents."""
        u = _coerce_coeff(u)
        out = {}
        for e, v in self.coeffs.items():
            if e.denominator != 1:
                raise ValueError("variable rescaling needs integer exponents")
            out[e] = v * u ** int(e)
        return QSeries(self.denom, self.trunc, out)

    def truncate(self, trunc) -> "QSeries":
        trunc = trunc if trunc == INF else _as_frac(trunc)
        if trunc > self.trunc:
            raise ValueError("cannot extend knowledge by truncating")
        return QSeries(self.denom, trunc, self.coeffs)

    def invert(self, trunc=None) -> "QSeries":
        """Multiplicative inverse, valid below the provable bound.

        For an exact (polynomial) input the result is an infinite series,
        so a target truncation must be supplied.
        """
        if not self.coeffs:
            raise ZeroDivisionError("cannot invert a series with no known terms")
        e0 = self.min_exponent()
        c0 = self.coeffs[e0]
        derived = INF if self.trunc == INF else self.trunc - 2 * e0
        out_trunc = derived if trunc is None else min(_as_frac(trunc), derived)
        if out_trunc == INF:
            raise ValueError("truncation required to invert an exact series")
        c0_inv = c0.inv()
        # self = c0 q^e0 (1 + t) with minexp(t) > 0
        inner_trunc = out_trunc + e0
        t = {e - e0: v * c0_inv for e, v in self.coeffs.items() if e != e0}
        t_series = QSeries(self.denom, inner_trunc, t)
        total = QSeries.one(self.denom, inner_trunc)
        term = QSeries.one(self.denom, inner_trunc)
        while not term.is_zero():
            term = (term * (-t_series)).truncate(inner_trunc)
            total = total + term
        return total.scale(c0_inv).shift(-e0)

    # ------------------------------------------------------------------
    # numerics / output

    def evaluate(self, q0: float) -> complex:
        """Numerical value at real q0 > 0 (fractional powers need q0 > 0)."""
        if q0 <= 0:
            raise ValueError("evaluation point must be positive")
        return sum((v.embed_complex() * q0 ** float(e)
                    for e, v in self.coeffs.items()), 0j)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return compare_series(self, other).equal

    __hash__ = None

    def __repr__(self) -> str:
        terms = []
        for e in self.exponents()[:8]:
            terms.append(f"({self.coeffs[e]!r})*q^{e}")
        more = " + ..." if len(self.coeffs) > 8 else ""
        t = "inf" if self.trunc == INF else str(self.trunc)
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body}{more}; trunc={t}, denom={self.denom})"

    def to_json(self) -> dict:
        trunc = None if self.trunc == INF else [self.trunc.numerator,
                                                self.trunc.denominator]
        return {
            "denom": self.denom,
            "trunc": trunc,
            "terms": [[int(e * self.denom), v.to_json()]
                      for e, v in sorted(self.coeffs.items())],
        }

    @staticmethod
    def from_json(obj: dict) -> "QSeries":
        denom = int(obj["denom"])
        trunc = INF if obj["trunc"] is None else Fraction(obj["trunc"][0],
                                                          obj["trunc"][1])
        coeffs = {Fraction(int(k), denom): CycNumber.from_json(v)
                  for k, v in obj["terms"]}
        return QSeries(denom, trunc, coeffs)

    def to_csv(self) -> str:
        lines = ["exponent_num,exponent_den,exponent,real,imag"]
        for e in self.exponents():
            z = self.coeffs[e].embed_complex()
            lines.append(f"{e.numerator},{e.denominator},{float(e)!r},"
                         f"{z.real!r},{z.imag!r}")
        return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# comparison with actionable failure output

@dataclass
class SeriesComparison:
    equal: bool
    common_trunc: object          # Fraction or math.inf
    first_difference: object      # Fraction or None
    lhs_coeff: CycNumber | None = None
    rhs_coeff: CycNumber | None = None

    def describe(self) -> str:
        if self.equal:
            t = "inf" if self.common_trunc == INF else str(self.common_trunc)
            return f"equal below q^{t}"
        return (f"first difference at q^{self.first_difference}: "
                f"{self.lhs_coeff!r} vs {self.rhs_coeff!r}")


def compare_series(lhs: QSeries, rhs: QSeries) -> SeriesComparison:
    """Compare up to the common provable order, reporting the first mismatch."""
    common = min(lhs.trunc, rhs.trunc)
    exps = sorted(set(lhs.coeffs) | set(rhs.coeffs))
    for e in exps:
        if e >= common:
            break
        a = lhs.coeffs.get(e, CycNumber.zero())
        b = rhs.coeffs.get(e, CycNumber.zero())
        if a != b:
            return SeriesComparison(False, common, e, a, b)
    return SeriesComparison(True, common, None)


# ----------------------------------------------------------------------
# standard building blocks

def geometric_inverse(u, e: Exponent, trunc) -> QSeries:
    """1/(1 - u*q^e) = sum_{m>=0} u^m q^(m*e), truncated; needs e > 0."""
    e = _as_frac(e)
    if e <= 0:
        raise ValueError("geometric expansion needs a positive exponent")
    trunc = _as_frac(trunc)
    u = _coerce_coeff(u)
    out: dict[Fraction, CycNumber] = {}
    power = CycNumber.one()
    m = 0
    while m * e < trunc:
        if power.is_zero():
            break
        out[m * e] = power
        power = power * u
        m += 1
    return QSeries(e.denominator, trunc, out)


def _pentagonal_euler(trunc) -> QSeries:
    """(q;q)_infty = sum_{k in Z} (-1)^k q^(k(3k-1)/2)."""
    trunc = _as_frac(trunc)
    out: dict[Fraction, CycNumber] = {}
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e = Fraction(kk * (3 * kk - 1), 2)
            if e < trunc:
                hit = True
                out[e] = CycNumber.rational((-1) ** (kk % 2))
        if not hit:
            break
        k += 1
    return QSeries(1, trunc, out)


def pochhammer(a, e: Exponent, n, trunc) -> QSeries:
    """prod_{m=0}^{n-1} (1 - a*q^(e+m)); n = None (or math.inf) for the
    infinite product, truncated at trunc."""
    e = _as_frac(e)
    trunc = _as_frac(trunc)
    a = _coerce_coeff(a)
    infinite = n is None or n == INF
    if infinite:
        if a == CycNumber.one() and e == 1:
            return _pentagonal_euler(trunc)
        if e <= 0:
            raise ValueError("infinite product needs exponents tending to +inf")
    elif n < 0:
        raise ValueError("pochhammer length must be >= 0")
    out = QSeries.one(e.denominator, trunc)
    m = 0
    while (infinite and e + m < trunc) or (not infinite and m < n):
        factor = QSeries(e.denominator, trunc,
                         {Fraction(0): CycNumber.one(), e + m: -a})
        out = out * factor
        m += 1
    return out
