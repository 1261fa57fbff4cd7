import random
from fractions import Fraction as F

import pytest

from mocktheta.cyclotomic import CycNumber, imag_unit, root_of_unity, sqrt_neg12i
from mocktheta.weil import (
    DiscGroup,
    DiscVector,
    WeilOperator,
    hermitian_pairing,
    rho_S_apply,
    rho_T_apply,
    verify_s_fourth,
    verify_s_squared,
    verify_st_cubed,
    weil_relations,
)


def test_disc_group():
    g = DiscGroup(5)
    assert g.size == 300
    assert g.quadratic_form_turns(1) == F(-1, 600) % 1
    with pytest.raises(ValueError):
        DiscGroup(4)


def test_rho_t_on_basis():
    # c=1: e_1 -> e(-1/24) e_1; e_0 fixed
    v = rho_T_apply(DiscVector.basis(1, 1))
    assert v.entries[1] == root_of_unity(F(-1, 24))
    v = rho_T_apply(DiscVector.basis(1, 0))
    assert v.entries[0] == CycNumber.one()


def test_rho_t_order_divides_24c2():
    for c, h in ((1, 1), (5, 7)):
        v = DiscVector.basis(c, h)
        w = v
        for _ in range(24 * c * c):
            w = rho_T_apply(w)
        assert w == v


def test_rho_s_on_basis_matches_formula():
    c = 5
    mod = 12 * c * c
    scal = sqrt_neg12i().inv() * F(1, c)
    v = rho_S_apply(DiscVector.basis(c, 7))
    assert len(v.entries) == mod
    for hp in (0, 1, 42, 299):
        expect = scal * root_of_unity(F(7 * hp, mod) % 1)
        assert v.entries[hp] == expect, hp


def test_s_squared_exhaustive_c1():
    rep = verify_s_squared(1)
    assert rep["status"] == "pass"
    # and via the generic kernel path
    for h in range(12):
        got = rho_S_apply(rho_S_apply(DiscVector.basis(1, h)))
        assert got == DiscVector(1, {(-h) % 12: imag_unit()})


def test_relations_c5():
    for rep in weil_relations(5):
        assert rep["status"] == "pass", rep
        assert rep["instances"] == 300 * 300


def test_st_cubed_generic_cross_check():
    # the table verification must agree with literal operator application
    op = WeilOperator(5, "STSTST")
    s2 = WeilOperator(5, "SS")
    for b in (0, 11, 150):
        assert op.apply(DiscVector.basis(5, b)) == s2.apply(DiscVector.basis(5, b))


def test_s_fourth_generic_c1():
    v = DiscVector.basis(1, 5)
    w = WeilOperator(1, "SSSS").apply(v)
    assert w == v.scale(-1)


def test_operator_kinds():
    assert WeilOperator(5, "T").kind == "T-diagonal"
    assert WeilOperator(5, "S").kind == "S-kernel"
    assert WeilOperator(5, "STS").kind == "composite word"
    with pytest.raises(ValueError):
        WeilOperator(5, "SX")


def test_unitarity_random_sparse():
    rng = random.Random(5)
    mod = 300

    def rand_vec():
        return DiscVector(5, {
            rng.randrange(mod): CycNumber.rational(rng.randrange(1, 4))
            * root_of_unity(F(rng.randrange(5), 5))
            for _ in range(3)})

    for _ in range(2):
        v, w = rand_vec(), rand_vec()
        assert hermitian_pairing(rho_S_apply(v), rho_S_apply(w)) == \
            hermitian_pairing(v, w)
    # T is diagonal with unit phases
    v, w = rand_vec(), rand_vec()
    assert hermitian_pairing(rho_T_apply(v), rho_T_apply(w)) == \
        hermitian_pairing(v, w)


def test_parseval_double_kernel_random():
    # applying the kernel operator twice is i times index negation
    rng = random.Random(9)
    v = DiscVector(5, {rng.randrange(300): root_of_unity(F(rng.randrange(7), 7))
                       for _ in range(2)})
    got = rho_S_apply(rho_S_apply(v))
    expect = DiscVector(5, {(-h) % 300: val * imag_unit()
                            for h, val in v.entries.items()})
    assert got == expect


def test_vector_algebra():
    v = DiscVector(5, {1: CycNumber.one(), 7: CycNumber.rational(2)})
    w = v + v.scale(-1)
    assert w.is_zero()
    assert (v - v).is_zero()
    assert DiscVector.basis(5, 301).entries == DiscVector.basis(5, 1).entries


def test_report_shape():
    rep = verify_st_cubed(1)
    assert {"relation", "status", "level", "instances"} <= set(rep)
    assert "counterexample" not in rep
