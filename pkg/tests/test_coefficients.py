import json
from fractions import Fraction as F

import pytest

from mocktheta.coefficients import (
    CoeffTable,
    alpha,
    alpha_from_witness,
    alpha_witness,
    assemble_component,
    beta,
    beta_from_witness,
    beta_witness,
    build_table,
    cyclotomic_unit_check,
    gauss_sum,
    verify_S_ident,
    verify_alpha_T,
    verify_beta_T,
    verify_gauss_lemma,
    verify_grading,
    verify_theorem,
    verify_units,
)
from mocktheta.cyclotomic import (
    CycNumber,
    imag_unit,
    kronecker_12,
    root_of_unity,
    sin_pi,
    sqrt12,
)


# ----------------------------------------------------------------------
# the closed forms

def test_alpha_example_minus_i():
    # c=5, a=0, b=1, h=5 (k=1): i sin(pi/5)/sin(pi/5) * (12/1) * e(1/2) = -i
    assert alpha(5, 0, 1, 5) == -imag_unit()


def test_alpha_zero_at_origin():
    assert all(alpha(h, 0, 0, 5).is_zero() for h in range(300))


def test_beta_b0_real():
    # beta_h(a,0) = -sin(ak pi/c)/sin(pi/c) (12/k) is real
    for h in (5, 35, 55):
        v = beta(h, 2, 0, 5)
        assert v == v.conj()
        k = h // 5
        expect = -(sin_pi(F(2 * k, 5)) * sin_pi(F(1, 5)).inv()) * kronecker_12(k)
        assert v == expect


def test_validation():
    with pytest.raises(ValueError):
        alpha(0, 0, 0, 4)
    with pytest.raises(ValueError):
        beta(0, 5, 0, 5)


def test_witness_uniqueness():
    # for a != 0 both signs cannot match: c | 12a would force a = 0
    for c in (5, 7):
        for a in range(1, c):
            for h in range(12 * c * c):
                hits = [eps for eps in (1, -1)
                        if ((h - 6 * eps * a) % (12 * c * c)) % c == 0]
                assert len(hits) <= 1 or a == 0


def test_witness_k_stability():
    # value is unchanged under k -> k + 12c
    for (c, a, b, eps, k) in ((5, 1, 2, 1, 7), (5, 0, 3, 1, 11),
                              (7, 3, 4, -1, 5), (7, 2, 0, 1, 13)):
        assert alpha_from_witness(c, a, b, eps, k) == \
            alpha_from_witness(c, a, b, eps, k + 12 * c)
        assert beta_from_witness(c, a, b, eps, k) == \
            beta_from_witness(c, a, b, eps, k + 12 * c)


# ----------------------------------------------------------------------
# table

def test_build_table_c1_empty():
    t = build_table(1)
    assert not t.alpha and not t.beta


def test_table_counts_c5():
    t = build_table(5)
    # a != 0: per (a,b), 20 admissible k per sign (k mod 60 with (12/k) != 0),
    # disjoint signs: 40 nonzero entries
    for (a, b) in ((1, 0), (2, 3), (4, 4)):
        assert sum(1 for (h, aa, bb) in t.alpha if (aa, bb) == (a, b)) == 40
    # a = 0, b != 0: k multiples of 5 drop out (sine vanishes): 20 - 4
    for b in (1, 2, 3, 4):
        assert sum(1 for (h, aa, bb) in t.alpha if (aa, bb) == (0, b)) == 16
    assert len(t.alpha) == 20 * 40 + 4 * 16
    assert len(t.beta) == 20 * 40 + 4 * 16


def test_table_oddness():
    t = build_table(5)
    mod = 300
    for (h, a, b), e in t.alpha.items():
        assert alpha((-h) % mod, a, b, 5) == -e.value
    for (h, a, b), e in t.beta.items():
        assert beta((-h) % mod, a, b, 5) == -e.value


def test_fixed_points_vanish():
    # h = 0 and h = 6c^2 are fixed by h -> -h, so oddness forces zero there
    for c in (5, 7):
        mod = 12 * c * c
        for h in (0, 6 * c * c):
            for a in range(c):
                for b in range(c):
                    assert alpha(h, a, b, c).is_zero()
                    assert beta(h, a, b, c).is_zero()
            assert (h, 0, 0) not in build_table(c).alpha


def test_support_matches_formulas():
    t = build_table(5)
    for (h, a, b), e in t.alpha.items():
        assert not e.value.is_zero()
        assert alpha(h, a, b, 5) == e.value
    for (h, a, b), e in t.beta.items():
        assert beta(h, a, b, 5) == e.value


def test_table_json_round_trip_values():
    t = build_table(5)
    blob = json.loads(json.dumps(t.to_json()))
    assert blob["c"] == 5
    first = blob["alpha"][0]
    h, a, b, sign, k, val = first
    assert CycNumber.from_json(val) == t.alpha[(h, a, b)].value


# ----------------------------------------------------------------------
# identity suites

def test_verify_theorem_c1_and_c5():
    for c in (1, 5):
        for rep in verify_theorem(c):
            assert rep.ok, (c, rep.identity, rep.failures[:1])


def test_verify_partitioned_matches_full():
    table = build_table(5)
    full = verify_alpha_T(5, table)
    pairs = [(a, b) for a in range(5) for b in range(5)]
    part1 = verify_alpha_T(5, table, pairs=pairs[::2])
    part2 = verify_alpha_T(5, table, pairs=pairs[1::2])
    assert part1.instances_checked + part2.instances_checked == \
        full.instances_checked
    assert part1.ok and part2.ok


def test_s_ident_sampled_mode():
    rep = verify_S_ident(5, exhaustive=False, sample=10, seed=3)
    assert rep.ok
    # determinism of the sampled sweep
    rep2 = verify_S_ident(5, exhaustive=False, sample=10, seed=3)
    assert rep2.instances_checked == rep.instances_checked


def test_scaled_terms_match_closed_forms():
    # the integer root-of-unity encoding used by the kernel verifier equals
    # 2 sin(pi/c) times the closed-form value
    from mocktheta.coefficients import _scaled_alpha_terms, _scaled_beta_terms
    from mocktheta.cyclotomic import root_sum

    for c in (5, 7):
        n = 24 * c * c
        two_sin = sin_pi(F(1, c)) * 2
        for (a, b, s, k) in ((1, 2, 1, 7), (0, 3, 1, 11), (3, 0, -1, 5),
                             (2, 4, -1, 1)):
            if not (a == 0 and s == -1):
                got = root_sum(n, _scaled_alpha_terms(c, a, b, s, k, n))
                assert got == alpha_from_witness(c, a, b, s, k) * two_sin
            if not (b == 0 and s == -1):
                got = root_sum(n, _scaled_beta_terms(c, a, b, s, k, n))
                assert got == beta_from_witness(c, a, b, s, k) * two_sin


def test_failure_reports_carry_operands():
    # corrupt one witness and check the report pinpoints it with exact data
    table = build_table(5)
    key = next(k for k in table.beta if k[2] != 0)
    entry = table.beta[key]
    table.beta[key] = type(entry)(entry.value, entry.sign, entry.k + 2)
    rep = verify_S_ident(5, table)
    assert not rep.ok
    f = rep.failures[0]
    assert {"h", "a", "b", "lhs", "rhs"} <= set(f)
    assert CycNumber.from_json(f["lhs"]) != CycNumber.from_json(f["rhs"])


# ----------------------------------------------------------------------
# Gauss sums

def test_gauss_examples():
    assert gauss_sum(1, 1) == sqrt12()
    assert gauss_sum(5, 3).is_zero()
    assert gauss_sum(5, 25) == sqrt12() * (5 * kronecker_12(5))
    assert gauss_sum(5, 25) == sqrt12() * -5


def test_gauss_lemma_levels():
    for c in (1, 5, 7):
        rep = verify_gauss_lemma(c)
        assert rep.ok and rep.instances_checked == 12 * c


# ----------------------------------------------------------------------
# cyclotomic units

def test_unit_checks():
    assert cyclotomic_unit_check(5, 2, 1)["unit"]
    assert cyclotomic_unit_check(25, 3, 7)["unit"]
    assert cyclotomic_unit_check(5, 1, 1)["unit"]      # ratio is 1
    with pytest.raises(ValueError):
        cyclotomic_unit_check(35, 2, 1)                 # not a prime power
    with pytest.raises(ValueError):
        cyclotomic_unit_check(5, 5, 2)                  # gcd(bk, c) != 1


def test_verify_units_c5():
    rep = verify_units(5)
    assert rep.ok and rep.instances_checked > 0


# ----------------------------------------------------------------------
# component assembly

def test_assemble_trivial_level():
    t = build_table(1)
    comp = assemble_component(t, 1, 3)
    assert comp.is_zero()


def test_assemble_component_grading_spot():
    t = build_table(5)
    cache = {}
    for h in (1, 7, 5):
        comp = assemble_component(t, h, 4, cache)
        assert not comp.is_zero()
        for e in comp.exponents():
            assert (e + F(h * h, 600)).denominator == 1, (h, e)


def test_grading_c5_few_terms():
    rep = verify_grading(5, terms_beyond=2, start_trunc=4)
    assert rep.ok, rep.failures[:2]
