"""The special q-series underlying the vector-valued construction.

Holomorphic-part conventions: with q = e(z), the completed forms are

    curly-M(a,b,c;z) = 2 q^((3a/2c)(1-a/c)-1/24) M(a,b,c;z) + eps(a,b,c;z) - T2,
    curly-N(a,b,c;z) = 4 e(-(a/c)k(b,c) + (3b/2c)(2a/c-1) - b/c)
                         * q^((b/c)k(b,c) - 3b^2/2c^2 - 1/24) N(a,b,c;z) - T1,

and holo_M / holo_N below are those expressions without the nonholomorphic
period integrals T1, T2 (which are out of scope here).  All exponents live
in (1/24c^2)Z.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycNumber, imag_unit, root_of_unity
from .qseries import INF, QSeries, geometric_inverse, pochhammer


def _check_level(c: int) -> None:
    from math import gcd
    if c < 1 or gcd(c, 6) != 1:
        raise ValueError(f"level c={c} must be a positive integer coprime to 6")


def level_denominator(c: int) -> int:
    """Common exponent denominator for level c series."""
    return 24 * c * c


@lru_cache(maxsize=None)
def euler_product_inverse(trunc: Fraction) -> QSeries:
    """1/(q;q)_infty, truncated (the partition generating function)."""
    return pochhammer(1, 1, None, trunc).invert()


# ----------------------------------------------------------------------
# Eulerian series and the rank generating function

def eulerian_M(a: int, c: int, trunc) -> QSeries:
    """M(a/c, q) = sum_{n>=1} q^(n(n-1)) / ((q^(a/c);q)_n (q^(1-a/c);q)_n)."""
    _check_level(c)
    if not 0 < a < c:
        raise ValueError("eulerian_M needs 0 < a < c")
    trunc = Fraction(trunc)
    r = Fraction(a, c)
    total = QSeries.zero(c, trunc)
    n = 1
    while n * (n - 1) < trunc:
        t = trunc - n * (n - 1)
        den = pochhammer(1, r, n, t) * pochhammer(1, 1 - r, n, t)
        total = total + den.invert(t).shift(n * (n - 1))
        n += 1
    return total


def _partitions(n: int, max_part: int | None = None):
    """Yield every partition of n (parts weakly decreasing) as a tuple."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def rank_count(m: int, n: int) -> int:
    """N(m, n): partitions of n with rank m (largest part minus #parts),
    by brute-force enumeration."""
    if n < 0:
        return 0
    if n == 0:
        return 1 if m == 0 else 0
    count = 0
    for part in _partitions(n):
        if part and part[0] - len(part) == m:
            count += 1
    return count


def rank_R(a: int, c: int, trunc) -> QSeries:
    """R(zeta_c^a, q) = 1 + sum_{n>=1} q^(n^2) / ((z q;q)_n (z^-1 q;q)_n)."""
    _check_level(c)
    if not 0 <= a < c:
        raise ValueError("rank_R needs 0 <= a < c")
    trunc = Fraction(trunc)
    z = root_of_unity(Fraction(a, c))
    zbar = z.conj()
    total = QSeries.one(1, trunc)
    n = 1
    while n * n < trunc:
        t = trunc - n * n
        den = pochhammer(z, 1, n, t) * pochhammer(zbar, 1, n, t)
        total = total + den.invert(t).shift(n * n)
        n += 1
    return total


# ----------------------------------------------------------------------
# fifth order mock theta functions

def fifth_order_phi0(trunc) -> QSeries:
    """phi_0(q) = 1 + sum q^(n^2) (1+q)(1+q^3)...(1+q^(2n-1))."""
    trunc = Fraction(trunc)
    total = QSeries.one(1, trunc)
    prod = QSeries.one(1, trunc)
    n = 1
    while n * n < trunc:
        prod = prod * QSeries(1, trunc, {0: 1, 2 * n - 1: 1})
        total = total + prod.shift(n * n)
        n += 1
    return total


def fifth_order_chi0(trunc) -> QSeries:
    """chi_0(q) = 1 + sum q^n / ((1-q^(n+1))...(1-q^(2n)))."""
    trunc = Fraction(trunc)
    total = QSeries.one(1, trunc)
    n = 1
    while n < trunc:
        t = trunc - n
        den = QSeries.one(1, t)
        for j in range(n + 1, 2 * n + 1):
            den = den * QSeries(1, t, {0: 1, j: -1})
        total = total + den.invert(t).shift(n)
        n += 1
    return total


def fifth_order_F0(trunc) -> QSeries:
    """F_0(q) = 1 + sum q^(2n^2) / ((1-q)(1-q^3)...(1-q^(2n-1)))."""
    trunc = Fraction(trunc)
    total = QSeries.one(1, trunc)
    n = 1
    while 2 * n * n < trunc:
        t = trunc - 2 * n * n
        den = QSeries.one(1, t)
        for j in range(n):
            den = den * QSeries(1, t, {0: 1, 2 * j + 1: -1})
        total = total + den.invert(t).shift(2 * n * n)
        n += 1
    return total


# ----------------------------------------------------------------------
# Appell-Lerch pieces

def k_of(b: int, c: int) -> int:
    """Step function k(b,c) in {0,1,2,3} by the position of b/c in [0,1)."""
    _check_level(c)
    if not 0 <= b < c:
        raise ValueError("k_of needs 0 <= b < c")
    r = Fraction(b, c)
    if r < Fraction(1, 6):
        return 0
    if r < Fraction(1, 2):
        return 1
    if r < Fraction(5, 6):
        return 2
    return 3


def _check_ab(a: int, b: int, c: int) -> None:
    _check_level(c)
    if not (0 <= a < c and 0 <= b < c):
        raise ValueError("need 0 <= a, b < c")
    if a == 0 and b == 0:
        raise ValueError("(a, b) = (0, 0) is excluded here")


def appell_M(a: int, b: int, c: int, trunc) -> QSeries:
    """Bilateral Appell-Lerch sum

        M(a,b,c;z) = (q;q)_infty^-1 sum_{n in Z}
                       (-1)^n q^(n+a/c) q^(3n(n+1)/2) / (1 - zeta_c^b q^(n+a/c)).

    Negative-n denominators are rewritten as
    1/(1-x q^-E) = -x^-1 q^E/(1-x^-1 q^E) so that every geometric expansion
    runs in positive powers of q.  For a = 0 the n = 0 term is the exact
    constant 1/(1-zeta_c^b), which requires b != 0.
    """
    _check_ab(a, b, c)
    trunc = Fraction(trunc)
    zb = root_of_unity(Fraction(b, c))
    zb_inv = zb.conj()
    total = QSeries.zero(c, trunc)

    # n >= 0: exponent of the leading factor is E = n + a/c >= 0
    n = 0
    while True:
        base = Fraction(3 * n * (n + 1), 2) + n + Fraction(a, c)
        if base >= trunc:
            break
        sign = 1 if n % 2 == 0 else -1
        E = n + Fraction(a, c)
        if E == 0:
            # n = 0, a = 0: exact constant term (pole excluded by b != 0)
            term = QSeries(c, INF, {0: (CycNumber.one() - zb).inv()})
        else:
            term = geometric_inverse(zb, E, trunc - base).shift(base)
        total = total + term.scale(sign)
        n += 1

    # n <= -1: rewritten expansion; the term carries q^(3n(n+1)/2) exactly
    n = -1
    while True:
        base = Fraction(3 * n * (n + 1), 2)
        if base >= trunc:
            break
        m = -n
        E = m - Fraction(a, c)
        sign = -1 if n % 2 == 0 else 1  # (-1)^n times the rewrite's -1
        term = geometric_inverse(zb_inv, E, trunc - base).shift(base)
        total = total + term.scale(sign * zb_inv)
        n -= 1

    return total * euler_product_inverse(trunc - min(0, total.min_exponent() or 0))


def kernel_K(a: int, b: int, c: int, n: int, trunc) -> QSeries:
    """The rational kernel K(a,b,c,n;z), expanded as a q-series.

    The two sines expand through e(.), and the denominator factors as
    (1 - zeta_c^a q^(n-b/c)) (1 - zeta_c^-a q^(n+b/c)); both exponents are
    positive since n >= 1 > b/c.
    """
    _check_ab(a, b, c)
    if n < 1:
        raise ValueError("kernel index n must be >= 1")
    trunc = Fraction(trunc)
    kb = k_of(b, c)
    za = root_of_unity(Fraction(a, 2 * c))       # zeta_2c^a
    za_inv = za.conj()
    minus_i_half = root_of_unity(Fraction(-1, 4)) * Fraction(1, 2)

    def sine(w: Fraction) -> QSeries:
        # sin(pi a/c - pi z w) = (zeta_2c^a q^(-w/2) - zeta_2c^(-a) q^(w/2)) / 2i
        t = (QSeries.monomial(za, -w / 2, denom=2 * c)
             - QSeries.monomial(za_inv, w / 2, denom=2 * c))
        return t.scale(minus_i_half)

    w = 2 * n * kb + Fraction(b, c)
    numerator = sine(w) + sine(Fraction(b, c) - 2 * n * kb).shift(n)
    sign = 1 if n % 2 == 0 else -1
    t_geo = trunc - (numerator.min_exponent() or 0)
    g1 = geometric_inverse(root_of_unity(Fraction(a, c)), n - Fraction(b, c), t_geo)
    g2 = geometric_inverse(root_of_unity(Fraction(-a, c)), n + Fraction(b, c), t_geo)
    return (numerator * g1 * g2).scale(sign).truncate(trunc)


def series_N(a: int, b: int, c: int, trunc) -> QSeries:
    """N(a,b,c;z) = (q;q)_infty^-1 ( i zeta_2c^-a q^(b/2c) / (2(1 - zeta_c^-a q^(b/c)))
    + sum_{n>=1} K(a,b,c,n;z) q^(n(3n+1)/2) )."""
    _check_ab(a, b, c)
    if b == 0 and a == 0:
        raise ValueError("series_N(0,0,c) undefined")
    trunc = Fraction(trunc)
    kb = k_of(b, c)
    i_half = imag_unit() * Fraction(1, 2)
    za_inv = root_of_unity(Fraction(-a, 2 * c))
    if b > 0:
        lead = geometric_inverse(root_of_unity(Fraction(-a, c)), Fraction(b, c),
                                 trunc - Fraction(b, 2 * c))
        lead = lead.shift(Fraction(b, 2 * c)).scale(i_half * za_inv)
    else:
        const = (CycNumber.one() - root_of_unity(Fraction(-a, c))).inv()
        lead = QSeries(2 * c, INF, {0: i_half * za_inv * const}).truncate(trunc)
    total = lead
    n = 1
    while Fraction(n * (3 * n + 1), 2) - n * kb - Fraction(b, 2 * c) < trunc:
        base = Fraction(n * (3 * n + 1), 2)
        total = total + kernel_K(a, b, c, n, trunc - base).shift(base)
        n += 1
    m0 = min(0, total.min_exponent() or 0)
    return total * euler_product_inverse(trunc - m0)


# ----------------------------------------------------------------------
# epsilon correction and holomorphic parts

def epsilon(a: int, b: int, c: int) -> QSeries:
    """eps(a,b,c;z): 2 zeta_c^(-2b) q^(-3/2 (a/c-1/6)^2) for a/c < 1/6,
    2 q^(-3/2 (a/c-5/6)^2) for a/c > 5/6, else 0."""
    _check_level(c)
    if not (0 <= a < c and 0 <= b < c):
        raise ValueError("need 0 <= a, b < c")
    r = Fraction(a, c)
    if r < Fraction(1, 6):
        e = -Fraction(3, 2) * (r - Fraction(1, 6)) ** 2
        return QSeries.monomial(root_of_unity(Fraction(-2 * b, c)) * 2, e,
                                denom=level_denominator(c))
    if r > Fraction(5, 6):
        e = -Fraction(3, 2) * (r - Fraction(5, 6)) ** 2
        return QSeries.monomial(CycNumber.rational(2), e,
                                denom=level_denominator(c))
    return QSeries.zero(level_denominator(c))


def holo_M(a: int, b: int, c: int, trunc) -> QSeries:
    """Holomorphic part of curly-M: 2 q^((3a/2c)(1-a/c)-1/24) M(a,b,c;z)
    + eps(a,b,c;z); zero at (a,b) = (0,0)."""
    _check_level(c)
    if a == 0 and b == 0:
        return QSeries.zero(level_denominator(c))
    trunc = Fraction(trunc)
    p = Fraction(3 * a * (c - a), 2 * c * c) - Fraction(1, 24)
    m = appell_M(a, b, c, trunc - p).shift(p).scale(2)
    return m + epsilon(a, b, c)


def holo_N(a: int, b: int, c: int, trunc) -> QSeries:
    """Holomorphic part of curly-N: the prefactored N(a,b,c;z); zero at (0,0)."""
    _check_level(c)
    if a == 0 and b == 0:
        return QSeries.zero(level_denominator(c))
    trunc = Fraction(trunc)
    kb = k_of(b, c)
    phase = root_of_unity(Fraction(-a * kb, c) + Fraction(3 * b * (2 * a - c), 2 * c * c)
                          - Fraction(b, c))
    p = Fraction(b * kb, c) - Fraction(3 * b * b, 2 * c * c) - Fraction(1, 24)
    return series_N(a, b, c, trunc - p).shift(p).scale(phase * 4)
