import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import ghz_states, random_ghz_rational, random_x_state
from partsep.cones import (
    CONE_INEQUALITIES,
    PAIRS,
    ConeTag,
    FullSepData,
    complement,
    fullsep_bound,
    fully_separable_ghz,
    member,
    member_all,
    s1_margin,
    s2_margin,
    s3_margin,
    s3_rows,
    s4_margin,
)
from partsep.oracle import Cut, ppt_cut
from partsep.slices import R_VERTICES, rho_modular, rho_st
from partsep.xcore import EXACT, FLOAT, NotAState, Status, XMatrix

R00 = rho_st(0, 0)
R10 = rho_st(1, 0)
RHO1 = rho_modular(1)


def test_pairs_and_complements():
    assert len(PAIRS) == 6
    assert complement((1, 4)) == (2, 3)
    assert {complement(p) for p in PAIRS} == set(PAIRS)


@pytest.mark.parametrize("p", PAIRS)
def test_s1_interior(p):
    assert s1_margin(R00, p) == F(1, 8)


def test_s1_vertex():
    assert s1_margin(R10, (1, 3)) == F(-1, 8)
    assert s1_margin(R10, (1, 4)) == 0


def test_s2_values():
    assert s2_margin(R10, (1, 4)) == 0
    assert all(s2_margin(R00, p) == F(2, 8) for p in PAIRS)


@given(ghz_states())
def test_s2_complement_symmetry(m):
    for p in PAIRS:
        assert s2_margin(m, p) == s2_margin(m, complement(p))


def test_s3_values():
    ghz = XMatrix.ghz((1, 0, 0, 0), (1, 0, 0, 0))
    assert s3_margin(ghz) == -1
    assert s3_margin(R00) == F(3, 8)
    assert all(r >= 0 for r in s3_rows(R10))


def test_s4_vertex():
    assert s4_margin(R10, (3, 4), (1, 4)) == F(-1, 8)


@given(ghz_states())
def test_s4_symmetric_and_diagonal(m):
    for p in PAIRS:
        assert s4_margin(m, p, p) >= 0
        assert s4_margin(m, p, complement(p)) == s2_margin(m, p)
        for q in PAIRS:
            assert s4_margin(m, p, q) == s4_margin(m, q, p)


def test_s4_rho1():
    fam = [(1, 2), (1, 4), (2, 3), (3, 4)]
    assert all(s4_margin(RHO1, p, q) >= 0 for p in fam for q in fam)


def test_inequality_sets():
    names = {t: sorted(i.name for i in CONE_INEQUALITIES[t]) for t in ConeTag}
    assert names[ConeTag.A] == ["S1[1,4]", "S1[2,3]"]
    assert names[ConeTag.B] == ["S1[1,3]", "S1[2,4]"]
    assert names[ConeTag.C] == ["S1[1,2]", "S1[3,4]"]
    assert len(names[ConeTag.AmBmC]) == 6
    assert names[ConeTag.BjC] == ["S2[1,4]"]
    assert names[ConeTag.CjA] == ["S2[1,3]"]
    assert names[ConeTag.AjB] == ["S2[1,2]"]
    assert names[ConeTag.AjBjC] == ["S3"]
    assert len(names[ConeTag.AjBmC]) == 6
    assert "S4[1,2|3,4]" in names[ConeTag.AjBmC] and "S4[1,2|1,4]" not in names[ConeTag.AjBmC]
    assert "S4[1,4|2,3]" in names[ConeTag.BjCmA]
    assert "S4[1,3|2,4]" in names[ConeTag.CjAmB]


@pytest.mark.parametrize("v", R_VERTICES)
def test_vertices_in_a(v):
    assert member(rho_st(*v), ConeTag.A).member


def test_h1_vertex_boundary():
    v = member(rho_st(F(-10, 13), F(3, 13)), ConeTag.BjCmA)
    assert v.status is Status.BOUNDARY


def test_gap_vertex():
    assert member(R10, ConeTag.BjCmA).status is Status.OUT
    assert member(R10, ConeTag.BjC).status is Status.BOUNDARY
    assert member(R10, ConeTag.A).status is Status.BOUNDARY


def test_non_state_is_out():
    v = member(XMatrix((1, 1, 1, 1), (1, 1, 1, 1), (2, 0, 0, 0)), "A")
    assert v.status is Status.OUT and v.reason == "NotAState"


def test_tag_parse():
    assert ConeTag.parse("B|(C&A)") is ConeTag.BjCmA
    assert ConeTag.parse("AmBmC") is ConeTag.AmBmC
    with pytest.raises(ValueError):
        ConeTag.parse("A&D")


ORDER = [
    (ConeTag.AmBmC, ConeTag.AmB), (ConeTag.AmBmC, ConeTag.BmC), (ConeTag.AmBmC, ConeTag.CmA),
    (ConeTag.AmB, ConeTag.A), (ConeTag.AmB, ConeTag.B), (ConeTag.BmC, ConeTag.B),
    (ConeTag.BmC, ConeTag.C), (ConeTag.CmA, ConeTag.C), (ConeTag.CmA, ConeTag.A),
    (ConeTag.A, ConeTag.AjB), (ConeTag.A, ConeTag.CjA), (ConeTag.B, ConeTag.AjB),
    (ConeTag.B, ConeTag.BjC), (ConeTag.C, ConeTag.BjC), (ConeTag.C, ConeTag.CjA),
    (ConeTag.AjB, ConeTag.AjBjC), (ConeTag.BjC, ConeTag.AjBjC), (ConeTag.CjA, ConeTag.AjBjC),
    (ConeTag.A, ConeTag.AjBmC), (ConeTag.BmC, ConeTag.AjBmC), (ConeTag.AjBmC, ConeTag.AjB),
    (ConeTag.AjBmC, ConeTag.CjA), (ConeTag.B, ConeTag.BjCmA), (ConeTag.CmA, ConeTag.BjCmA),
    (ConeTag.C, ConeTag.CjAmB), (ConeTag.AmB, ConeTag.CjAmB),
]


def _check_order(m, mode):
    v = member_all(m, mode=mode)
    for small, big in ORDER:
        if v[small].member:
            assert v[big].member, (small, big, m)


def test_lattice_monotone_random_ghz():
    rng = random.Random(1)
    for _ in range(2000):
        _check_order(random_ghz_rational(rng), EXACT)


def test_lattice_monotone_random_x():
    rng = random.Random(2)
    for _ in range(2000):
        _check_order(random_x_state(rng), FLOAT)


def test_lattice_monotone_slice_grid():
    for i in range(-24, 25):
        for j in range(-24, 25):
            m = rho_st(F(i, 24), F(j, 24))
            if member(m, "A").reason != "NotAState":
                _check_order(m, EXACT)


def test_modular_chain_implication():
    rng = random.Random(3)
    for _ in range(2000):
        m = random_ghz_rational(rng)
        if member(m, ConeTag.BjCmA).member and member(m, ConeTag.A).member:
            assert member(m, ConeTag.BjC).member


def test_single_cut_ppt_matches_basic_cone():
    # an empirical check, not a known identity
    rng = random.Random(4)
    cut_of = {ConeTag.A: Cut.A_BC, ConeTag.B: Cut.B_CA, ConeTag.C: Cut.C_AB}
    for _ in range(3000):
        m = random_x_state(rng)
        for tag, cut in cut_of.items():
            v = member(m, tag, FLOAT)
            if v.status is Status.BOUNDARY:
                continue
            assert v.member == ppt_cut(m, cut, tol=1e-8)


# full separability --------------------------------------------------------


def test_fullsep_data_formulas():
    d = FullSepData.of((1, 2, 3, 4))
    assert d.lam == (20, 8, 4, 0)
    assert d.t[0] == 1 * (-1 + 4 + 9 + 16) - 2 * 2 * 3 * 4


def test_fullsep_interior():
    v = fully_separable_ghz(R00)
    assert v.status is Status.IN and v.reason == "PPT branch"


def test_fullsep_edge_point():
    v = fully_separable_ghz(rho_st(F(-4, 9), F(1, 3)))
    assert v.reason == "PPT branch"
    assert v.status is Status.BOUNDARY and v.margin == 0


def test_fullsep_curved_branch():
    v = fully_separable_ghz(rho_st(-0.3, 0.3))
    assert v.reason == "lambda branch" and v.status is Status.IN
    c = [re for re, _ in rho_st(-0.3, 0.3).z]
    assert fullsep_bound(FullSepData.of(c), FLOAT) == pytest.approx(0.0382, abs=1e-4)
    assert min(rho_st(-0.3, 0.3).a) == pytest.approx(0.075)


def test_fullsep_exact_branch_matches_float():
    m = rho_st(F(-3, 10), F(3, 10))
    ve, vf = fully_separable_ghz(m, EXACT), fully_separable_ghz(rho_st(-0.3, 0.3), FLOAT)
    assert ve.status is vf.status


def test_fullsep_not_a_state():
    with pytest.raises(NotAState):
        fully_separable_ghz(XMatrix.ghz((1, 1, 1, 1), (2, 0, 0, 0)))


def test_fullsep_requires_ghz():
    with pytest.raises(ValueError):
        fully_separable_ghz(XMatrix((1, 1, 1, 1), (1, 1, 1, 2), (0, 0, 0, 0)))


@given(ghz_states())
def test_fullsep_implies_ppt(m):
    if fully_separable_ghz(m, EXACT).member:
        assert member(m, ConeTag.AmBmC, EXACT).member


def test_fullsep_implies_ppt_random():
    rng = random.Random(6)
    branch = 0
    for _ in range(3000):
        m = random_ghz_rational(rng, denom=40)
        v = fully_separable_ghz(m, FLOAT)
        branch += v.reason == "lambda branch"
        if v.member:
            assert member(m, ConeTag.AmBmC, EXACT).member
    assert branch > 0
