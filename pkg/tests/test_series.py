import cmath
import math
from fractions import Fraction as F

import pytest

from mocktheta.cyclotomic import (
    CycNumber,
    cos_pi,
    imag_unit,
    root_of_unity,
    sin_pi,
)
from mocktheta.qseries import INF, QSeries, compare_series, geometric_inverse
from mocktheta.series import (
    _partitions,
    appell_M,
    epsilon,
    eulerian_M,
    fifth_order_F0,
    fifth_order_chi0,
    fifth_order_phi0,
    holo_M,
    holo_N,
    k_of,
    kernel_K,
    level_denominator,
    rank_R,
    rank_count,
    series_N,
)


# ----------------------------------------------------------------------
# Eulerian series

def test_eulerian_leading_terms():
    s = eulerian_M(1, 5, 2)
    # n=1 term: 1/((q^(1/5);q)_1 (q^(4/5);q)_1) = 1 + q^(1/5) + ...
    assert s.coefficient(0) == 1
    assert s.coefficient(F(1, 5)) == 1


def test_eulerian_float_oracle():
    # direct numeric evaluation of the defining sum at small q
    q = 0.07
    for (a, c) in ((1, 5), (2, 5), (3, 7)):
        r = a / c
        direct = 0.0
        for n in range(1, 12):
            den = 1.0
            for m in range(n):
                den *= (1 - q ** (r + m)) * (1 - q ** (1 - r + m))
            direct += q ** (n * (n - 1)) / den
        got = eulerian_M(a, c, 10).evaluate(q)
        assert abs(got - direct) < 1e-7, (a, c)


def test_eulerian_symmetry():
    # the two Pochhammer factors swap under a -> c-a
    assert compare_series(eulerian_M(1, 5, 6), eulerian_M(4, 5, 6)).equal
    assert compare_series(eulerian_M(2, 7, 6), eulerian_M(5, 7, 6)).equal


def test_eulerian_substitution_block():
    # q * M(1/5, q^5) has integer exponents
    s = eulerian_M(1, 5, 4).substitute_power(5).shift(1)
    assert all(e.denominator == 1 for e in s.exponents())
    assert s.coefficient(1) == 1
    assert s.coefficient(2) == 1


def test_eulerian_validation():
    with pytest.raises(ValueError):
        eulerian_M(0, 5, 5)
    with pytest.raises(ValueError):
        eulerian_M(1, 4, 5)


# ----------------------------------------------------------------------
# rank generating function

def test_rank_r_level_one_is_partition_function():
    s = rank_R(0, 1, 11)
    expect = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert [int(s.coefficient(n).as_rational()) for n in range(11)] == expect


def test_rank_count_small():
    # partitions of 4: (4), (3,1), (2,2), (2,1,1), (1,1,1,1)
    assert sorted(_partitions(4)) == [(1, 1, 1, 1), (2, 1, 1), (2, 2),
                                      (3, 1), (4,)]
    assert rank_count(0, 4) == 1          # only 2+2 has rank 0
    assert rank_count(3, 4) == 1          # (4) has rank 3
    assert rank_count(-3, 4) == 1         # (1,1,1,1) has rank -3
    assert rank_count(0, 0) == 1
    assert rank_count(1, 0) == 0


def test_rank_symmetry_and_total():
    for n in range(1, 10):
        total = sum(rank_count(m, n) for m in range(-n, n + 1))
        assert total == len(list(_partitions(n)))
        for m in range(0, n + 1):
            assert rank_count(m, n) == rank_count(-m, n)


def test_rank_r_coefficients_match_counts():
    for c in (5, 7):
        series = {a: rank_R(a, c, 13) for a in range(c)}
        for n in range(13):
            for a in range(c):
                expect = CycNumber.zero()
                for m in range(-n, n + 1):
                    cnt = rank_count(m, n)
                    if cnt:
                        expect = expect + root_of_unity(F(a * m, c)) * cnt
                assert series[a].coefficient(n) == expect, (a, c, n)


# ----------------------------------------------------------------------
# fifth-order functions

def test_fifth_order_constant_terms():
    for fn in (fifth_order_phi0, fifth_order_chi0, fifth_order_F0):
        assert fn(5).coefficient(0) == 1


def test_chi0_first_term():
    # n=1 contributes q/(1-q^2) = q + q^3 + q^5 + ...; subtracting it must
    # kill everything below the n=2 entry point q^2
    s = fifth_order_chi0(6)
    assert s.coefficient(1) == 1
    rest = s - QSeries.one(1, 6) - geometric_inverse(1, 2, 5).shift(1)
    assert rest.min_exponent() == 2


def test_watson_relation():
    lhs = fifth_order_phi0(60).scale_variable(-1) + fifth_order_chi0(60)
    rhs = fifth_order_F0(60).scale(2)
    assert compare_series(lhs, rhs).equal


# ----------------------------------------------------------------------
# step function and kernels

def test_k_of():
    assert k_of(0, 5) == 0
    assert k_of(3, 5) == 2
    assert k_of(1, 7) == 0
    assert k_of(2, 7) == 1
    assert k_of(4, 5) == 2      # 4/5 < 5/6
    assert k_of(6, 7) == 3      # 6/7 > 5/6
    assert k_of(2, 5, ) == 1
    assert k_of(1, 5) == 1      # 1/5 in (1/6, 1/2)


def test_kernel_b0_closed_form():
    # K(a,0,c,n) = (-1)^n (1+q^n) sin(pi a/c) / (1 - 2 q^n cos(2pi a/c) + q^2n)
    for (a, c, n) in ((1, 5, 1), (2, 5, 2), (3, 7, 1)):
        got = kernel_K(a, 0, c, n, 10)
        num = QSeries(1, INF, {0: 1, n: 1}).scale(sin_pi(F(a, c)))
        den = QSeries(2 * c, INF, {0: 1, n: cos_pi(F(2 * a, c)) * -2, 2 * n: 1})
        expect = (num * den.invert(10)).scale((-1) ** n)
        assert compare_series(got, expect).equal, (a, c, n)


def test_kernel_float_oracle():
    z = 0.57j
    q = cmath.exp(2j * cmath.pi * z)
    for (a, b, c, n) in ((1, 2, 5, 1), (4, 3, 5, 2), (2, 6, 7, 1), (0, 1, 5, 1)):
        kb = k_of(b, c)
        s1 = cmath.sin(cmath.pi * a / c - cmath.pi * z * (2 * n * kb + b / c))
        s2 = cmath.sin(cmath.pi * a / c - cmath.pi * z * (b / c - 2 * n * kb))
        den = (1 - 2 * q ** n * cmath.cos(2 * cmath.pi * a / c
                                          - 2 * cmath.pi * b * z / c)
               + q ** (2 * n))
        direct = (-1) ** n * (s1 + q ** n * s2) / den
        ks = kernel_K(a, b, c, n, 14)
        got = sum(v.embed_complex() * q ** complex(e)
                  for e, v in ks.coeffs.items())
        assert abs(got - direct) < 1e-8 * max(1.0, abs(direct)), (a, b, c, n)


def test_kernel_leading_exponent():
    for (a, b, c) in ((1, 1, 5), (1, 2, 5), (1, 4, 5), (2, 5, 7), (3, 6, 7)):
        ks = kernel_K(a, b, c, 1, 6)
        assert ks.min_exponent() == -k_of(b, c) - F(b, 2 * c), (a, b, c)


def test_kernel_validation():
    with pytest.raises(ValueError):
        kernel_K(1, 1, 5, 0, 5)
    with pytest.raises(ValueError):
        kernel_K(0, 0, 5, 1, 5)


# ----------------------------------------------------------------------
# N series

def test_series_n_constant_term():
    s = series_N(1, 0, 5, 5)
    expect = imag_unit() * root_of_unity(F(-1, 10)) \
        * (CycNumber.one() - root_of_unity(F(-1, 5))).inv() * F(1, 2)
    assert s.coefficient(0) == expect
    # which simplifies to csc(pi/5)/4
    assert s.coefficient(0) == sin_pi(F(1, 5)).inv() * F(1, 4)


def test_rank_identity_small():
    for (a, c) in ((1, 5), (2, 5), (4, 5), (1, 7), (3, 7), (6, 7)):
        lhs = series_N(a, 0, c, 16).scale(sin_pi(F(a, c)) * 4)
        rhs = rank_R(a, c, 16)
        assert compare_series(lhs, rhs).equal, (a, c)


def test_series_n_validation():
    with pytest.raises(ValueError):
        series_N(0, 0, 5, 5)


# ----------------------------------------------------------------------
# Appell sums

def test_appell_equals_eulerian():
    for (a, c) in ((1, 5), (3, 5), (2, 7)):
        assert compare_series(appell_M(a, 0, c, 8), eulerian_M(a, c, 8)).equal


def test_appell_truncation_completeness():
    # recomputing deeper and re-truncating reproduces the shallow result
    for (a, b, c) in ((1, 2, 5), (0, 3, 5), (4, 4, 5)):
        lo = appell_M(a, b, c, 5)
        hi = appell_M(a, b, c, 9)
        assert compare_series(hi.truncate(lo.trunc), lo).equal


def test_appell_a0_constant():
    # n = 0 term of M(0,b,c) is the exact constant 1/(1 - zeta_c^b)
    s = appell_M(0, 1, 5, 10)
    # the n = 0 constant 1/(1 - zeta) and the n = -1 term both land at q^0;
    # float-check the full truncated value against the bilateral sum
    q = 0.05
    direct = 0.0 + 0j
    for n in range(-8, 9):
        direct += ((-1) ** n * q ** (n + 0.0) * q ** (1.5 * n * (n + 1))
                   / (1 - cmath.exp(2j * cmath.pi / 5) * q ** (n + 0.0)))
    euler = 1.0
    for m in range(1, 200):
        euler *= 1 - q ** m
    direct /= euler
    got = s.evaluate(q)
    assert abs(got - direct) < 1e-6


def test_appell_validation():
    with pytest.raises(ValueError):
        appell_M(0, 0, 5, 5)
    with pytest.raises(ValueError):
        appell_M(1, 1, 9, 5)


# ----------------------------------------------------------------------
# epsilon and holomorphic parts

def test_epsilon_cases():
    e = epsilon(0, 2, 5)
    assert e.coefficient(F(-1, 24)) == root_of_unity(F(-4, 5)) * 2
    assert epsilon(1, 0, 5).is_zero()          # 1/5 lies in (1/6, 5/6)
    e = epsilon(6, 1, 7)                       # 6/7 > 5/6
    exp = -F(3, 2) * (F(6, 7) - F(5, 6)) ** 2
    assert e.coefficient(exp) == 2


def test_holo_zero_at_origin():
    assert holo_M(0, 0, 5, 5).is_zero()
    assert holo_N(0, 0, 5, 5).is_zero()


def test_holo_exponent_lattice():
    # every computed exponent lies in (1/24c^2) Z
    c = 5
    D = level_denominator(c)
    for (a, b) in ((0, 1), (1, 0), (2, 3), (4, 4)):
        for s in (holo_M(a, b, c, 3), holo_N(a, b, c, 3)):
            for e in s.exponents():
                assert (e * D).denominator == 1, (a, b, e)


def test_holo_n_against_rank():
    # holo_N(a,0,c) = csc(pi a/c) q^(-1/24) R(zeta_c^a, q)
    a, c = 2, 5
    lhs = holo_N(a, 0, c, 5)
    rhs = rank_R(a, c, 6).shift(F(-1, 24)).scale(sin_pi(F(a, c)).inv())
    common = min(lhs.trunc, rhs.trunc)
    assert compare_series(lhs.truncate(common), rhs.truncate(common)).equal
