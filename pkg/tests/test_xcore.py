import json
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import ghz_states, random_x_state, x_states
from partsep.oracle import dense
from partsep.slices import W_MOD, rho_modular, rho_st
from partsep.xcore import (
    EXACT,
    FLOAT,
    InexactError,
    NegativeDiagonal,
    NotSelfAdjoint,
    NumericMode,
    Status,
    Validity,
    XMatrix,
    abs_z,
    exact_sqrt,
    ghz_twirl_xpart,
    is_state,
    pairing,
    resolve_mode,
    root_products,
    validate,
    xmatrix_from_json,
    xmatrix_to_json,
)


def test_validate_maximally_mixed():
    assert validate(XMatrix.ghz([1] * 4, [0] * 4) * F(1, 8)) is Validity.STATE


def test_validate_large_antidiagonal():
    m = XMatrix((1, 1, 1, 1), (1, 1, 1, 1), (2, 0, 0, 0))
    assert validate(m) is Validity.SELF_ADJOINT_ONLY


def test_validate_vertex_state():
    m = XMatrix.ghz((1, 3, 1, 1), (-1, -1, -1, 1)) * F(1, 12)
    assert validate(m) is Validity.STATE
    assert m == rho_st(F(2, 3), -1)


def test_validate_negative_diagonal():
    assert validate(XMatrix((1, -1, 1, 1), (1, 1, 1, 1), (0, 0, 0, 0))) is Validity.SELF_ADJOINT_ONLY


def test_validate_complex_exact():
    # |3+4i| = 5 = sqrt(25 * 1)
    m = XMatrix((25, 0, 0, 0), (1, 0, 0, 0), [(3, 4), 0, 0, 0])
    assert validate(m, EXACT) is Validity.STATE
    m2 = XMatrix((25, 0, 0, 0), (1, 0, 0, 0), [(3, F(401, 100)), 0, 0, 0])
    assert validate(m2, EXACT) is Validity.SELF_ADJOINT_ONLY


def test_root_products_ghz_exact():
    assert root_products(XMatrix.ghz((1, 2, 0, 1), (0, 0, 0, 0)), EXACT) == (1, 2, 0, 1)


def test_root_products_squares():
    m = XMatrix((4, 1, 1, 1), (9, 1, 1, 1), (0, 0, 0, 0))
    assert root_products(m, EXACT) == (6, 1, 1, 1)


def test_root_products_zero():
    m = XMatrix((0, 0, 0, 0), (3, 5, 0, 7), (0, 0, 0, 0))
    assert root_products(m, EXACT) == (0, 0, 0, 0)
    assert root_products(m, FLOAT) == (0.0, 0.0, 0.0, 0.0)


def test_root_products_negative():
    with pytest.raises(NegativeDiagonal):
        root_products(XMatrix((-1, 1, 1, 1), (1, 1, 1, 1), (0, 0, 0, 0)))


def test_exact_sqrt_irrational():
    m = XMatrix((2, 1, 1, 1), (1, 1, 1, 1), (0, 0, 0, 0))
    with pytest.raises(InexactError):
        root_products(m, EXACT)
    assert exact_sqrt(F(9, 4)) == F(3, 2)
    assert exact_sqrt(2) is None


def test_numeric_mode_status():
    assert EXACT.status(0) is Status.BOUNDARY
    assert EXACT.status(F(-1, 10**30)) is Status.OUT
    assert FLOAT.status(1e-10) is Status.BOUNDARY
    assert FLOAT.status(2e-9) is Status.IN
    with pytest.raises(ValueError):
        NumericMode(tol=0)


def test_resolve_mode():
    assert resolve_mode(None, rho_st(F(1, 3), 0)).exact
    assert not resolve_mode(None, rho_st(0.3, 0)).exact
    assert not resolve_mode(None, XMatrix((1, 1, 1, 1), (1, 1, 1, 2), (0, 0, 0, 0))).exact


def test_pairing_zero():
    w = random_x_state(random.Random(3))
    assert pairing(w, XMatrix.zero()) == 0


def test_pairing_formula():
    w = XMatrix((1, 2, 3, 4), (5, 6, 7, 8), [(1, 1), (0, 2), 3, (0, 0)])
    m = XMatrix((1, 0, 1, 0), (0, 1, 0, 1), [(2, 3), (1, 1), 1, 5])
    # s.a + t.b = 1 + 3 + 6 + 8; 2 Re(u z) = 2[(1+i)(2+3i)].re + 2[(2i)(1+i)].re + 2*3
    expected = 18 + 2 * (2 - 3) + 2 * (-2) + 6
    assert pairing(w, m) == expected


def test_pairing_matches_dense_trace():
    rng = random.Random(5)
    for _ in range(50):
        w, m = random_x_state(rng), random_x_state(rng)
        # Tr(m w^T) summed entrywise on the dense matrices
        assert pairing(w, m, FLOAT) == pytest.approx(np.sum(dense(m) * dense(w)).real, abs=1e-12)


def test_pairing_modular_threshold():
    vals = {t: pairing(W_MOD, rho_modular(t)) for t in (F(0), F(1, 2), F(3, 4), F(4, 5), F(1))}
    assert vals[F(3, 4)] == 0
    assert vals[F(0)] > 0 and vals[F(1, 2)] > 0
    assert vals[F(4, 5)] < 0 and vals[F(1)] < 0
    # full trace formula: twice the value (6 - 8t)/24
    for t, v in vals.items():
        assert v == F(6 - 8 * t, 12)


@given(x_states(), x_states(), x_states(), st.floats(-3, 3), st.floats(-3, 3))
def test_pairing_bilinear(w, m1, m2, c1, c2):
    lhs = pairing(w, m1 * c1 + m2 * c2, FLOAT)
    rhs = c1 * pairing(w, m1, FLOAT) + c2 * pairing(w, m2, FLOAT)
    assert lhs == pytest.approx(rhs, abs=1e-9)


@given(x_states())
def test_state_dominates(m):
    if is_state(m, FLOAT):
        roots, zs = root_products(m, FLOAT), abs_z(m, FLOAT)
        assert all(r >= q - 1e-9 for r, q in zip(roots, zs))


@given(ghz_states())
def test_modes_agree_on_ghz(m):
    fm = XMatrix([float(x) for x in m.a], [float(x) for x in m.b], [float(re) for re, _ in m.z])
    ex = [float(x) for x in root_products(m, EXACT)]
    fl = root_products(fm, FLOAT)
    assert ex == pytest.approx(fl, abs=1e-12)
    assert validate(m, EXACT) is validate(fm, FLOAT)


def test_modes_agree_on_slice_family():
    for s, t in [(F(1, 3), F(1, 5)), (F(-1, 2), 0), (F(2, 3), -1), (1, 0)]:
        m, fm = rho_st(s, t), rho_st(float(s), float(t))
        for x, y in zip(m.entries(), fm.entries()):
            assert float(x) == pytest.approx(y, abs=1e-15)


def test_twirl_identity_on_x():
    rng = random.Random(11)
    for _ in range(20):
        m = random_x_state(rng)
        back = ghz_twirl_xpart(dense(m))
        for x, y in zip(back.entries(), m.entries()):
            assert x == pytest.approx(y, abs=1e-15)


def test_twirl_all_ones():
    assert ghz_twirl_xpart(np.ones((8, 8))) == XMatrix((1,) * 4, (1,) * 4, (1,) * 4)


def test_twirl_discards_off_x():
    m = rho_st(1, 0)
    d = dense(m, exact=True)
    d[1, 2] = d[2, 1] = F(1, 3)
    assert ghz_twirl_xpart(d) == m


def test_twirl_not_self_adjoint():
    d = np.zeros((8, 8))
    d[0, 7] = 1.0
    with pytest.raises(NotSelfAdjoint):
        ghz_twirl_xpart(d)


def test_json_roundtrip():
    m = XMatrix((F(1, 3), 1, 0, 2), (1, F(2, 7), 0, 2), [(F(1, 5), F(-1, 5)), 0, (0, 1), F(1, 2)])
    assert xmatrix_from_json(json.dumps(xmatrix_to_json(m))) == m


def test_json_ghz_shorthand_and_scale():
    m = xmatrix_from_json('{"a": [1, 2, 0, 1], "c": [1, 0, 0, 1], "scale": "1/8"}')
    assert m == rho_st(1, 0)
    assert xmatrix_from_json('{"a": ["0.5", 1, 1, 1], "c": [0, 0, 0, 0]}').a[0] == F(1, 2)


@pytest.mark.parametrize("bad", ['{"b": [1,1,1,1]}', '{"a": [1,1,1], "c": [0,0,0]}', '{"a": [1,1,1,1], "b": [1,1,1,1]}'])
def test_json_errors(bad):
    with pytest.raises(ValueError):
        xmatrix_from_json(bad)


def test_phase_of_zero():
    m = XMatrix.zero()
    assert m.phase(1) == 0.0
    assert m.unit_conj_phase(1, EXACT) == (1, 0)
