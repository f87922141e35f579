"""Independent verification routes.

Dense 8x8 materialization, eigenvalue positivity, partial transposes and
qubit permutations by tensor reshaping, an exact linear-feasibility search
for splitting a state across a join of catalogued cones, and the
embedding/compression pair between qubits and larger local dimensions.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import lp
from .cones import CONE_INEQUALITIES, STATE_INEQUALITIES, ConeTag, Profile, member
from .expr import catalog_tag
from .xcore import (
    FLOAT,
    NumericMode,
    Validity,
    XMatrix,
    ghz_twirl_xpart,
    resolve_mode,
    validate,
)


class NotHermitian(ValueError):
    pass


class UnsupportedPart(ValueError):
    pass


class BadDims(ValueError):
    pass


class Cut(enum.Enum):
    A_BC = "A-BC"
    B_CA = "B-CA"
    C_AB = "C-AB"

    @property
    def party(self) -> int:
        """Tensor factor transposed for this cut (the single party)."""
        return {"A-BC": 0, "B-CA": 1, "C-AB": 2}[self.value]


PARTIES = ("A", "B", "C")


def dense(m: XMatrix, exact: bool = False) -> np.ndarray:
    """The 8x8 matrix of ``m``; an object array of rationals when ``exact``."""
    if exact:
        if any(im != 0 for _, im in m.z):
            raise ValueError("exact dense form needs a real anti-diagonal")
        out = np.full((8, 8), Fraction(0), dtype=object)
    else:
        out = np.zeros((8, 8), dtype=complex)
    for i in range(4):
        re, im = m.z[i]
        out[i, i] = m.a[i]
        out[7 - i, 7 - i] = m.b[i]
        if exact:
            out[i, 7 - i] = out[7 - i, i] = re
        else:
            out[i, 7 - i] = complex(re, im)
            out[7 - i, i] = complex(re, -im)
    return out


def _is_x_shaped(mtx: np.ndarray) -> bool:
    n = mtx.shape[0]
    return all(mtx[i, j] == 0 for i in range(n) for j in range(n) if i != j and i + j != n - 1)


def psd(mtx: np.ndarray, tol: float = 1e-9) -> bool:
    """Positive semidefiniteness.

    Object (rational) arrays must be X-shaped and are decided exactly by the
    2x2 block conditions; numeric arrays use the minimum eigenvalue.
    """
    mtx = np.asarray(mtx)
    if mtx.dtype == object:
        if any(mtx[i, j] != mtx[j, i] for i in range(mtx.shape[0]) for j in range(i)):
            raise NotHermitian("matrix is not symmetric")
        if mtx.shape != (8, 8) or not _is_x_shaped(mtx):
            raise ValueError("exact positivity is only available for 8x8 X-shaped matrices")
        return validate(ghz_twirl_xpart(mtx), NumericMode(exact=True)) is Validity.STATE
    if not np.allclose(mtx, mtx.conj().T, atol=max(tol, 1e-12), rtol=0):
        raise NotHermitian("matrix is not Hermitian")
    return bool(np.linalg.eigvalsh(mtx).min() >= -tol)


def partial_transpose(mtx: np.ndarray, cut: Cut | str) -> np.ndarray:
    cut = Cut(cut) if isinstance(cut, str) else cut
    p = cut.party
    t = np.asarray(mtx).reshape((2,) * 6)
    axes = list(range(6))
    axes[p], axes[p + 3] = axes[p + 3], axes[p]
    return t.transpose(axes).reshape(8, 8)


def x_partial_transpose(m: XMatrix, cut: Cut | str) -> XMatrix:
    """Partial transpose computed on the X-encoding directly.

    The anti-diagonal entry in row r moves to row ``r xor bit``; landing in
    the lower half means the conjugate is stored in the upper slot.
    """
    cut = Cut(cut) if isinstance(cut, str) else cut
    bit = 4 >> cut.party
    z = [None] * 4
    for i in range(4):
        re, im = m.z[i]
        r = i ^ bit
        if r < 4:
            z[r] = (re, im)
        else:
            z[7 - r] = (re, -im)
    return XMatrix(m.a, m.b, z)


def ppt_all_cuts(m: XMatrix, mode: NumericMode | None = None, method: str = "auto") -> bool:
    """Positivity of the partial transpose across all three cuts.

    ``method="dense"`` uses eigenvalues of the dense matrices, ``"xshape"``
    checks the transposed X-encodings (exact in exact mode).  ``"auto"``
    picks ``xshape`` in exact mode and ``dense`` otherwise.
    """
    mode = resolve_mode(mode, m)
    if method == "auto":
        method = "xshape" if mode.exact else "dense"
    if method == "xshape":
        return all(validate(x_partial_transpose(m, c), mode) is Validity.STATE for c in Cut)
    if method != "dense":
        raise ValueError(f"unknown method {method!r}")
    rho = dense(m)
    tol = mode.tol if mode.tol > 0 else FLOAT.tol
    return all(psd(partial_transpose(rho, c), tol) for c in Cut)


def ppt_cut(m: XMatrix, cut: Cut | str, tol: float = 1e-9) -> bool:
    return psd(partial_transpose(dense(m), cut), tol)


def permute_qubits(m: XMatrix, perm: Sequence[str]) -> XMatrix:
    """Reorder tensor factors: new factor k is old factor ``perm[k]``."""
    perm = tuple(perm)
    if sorted(perm) != list(PARTIES):
        raise ValueError(f"{perm} is not a permutation of A, B, C")
    idx = [PARTIES.index(p) for p in perm]
    exact = m.is_rational and all(im == 0 for _, im in m.z)
    t = dense(m, exact=exact).reshape((2,) * 6)
    out = t.transpose(idx + [k + 3 for k in idx]).reshape(8, 8)
    return ghz_twirl_xpart(out)


# decomposition across a join ------------------------------------------------


def _part_tag(part) -> ConeTag:
    if isinstance(part, ConeTag):
        return part
    try:
        tag = catalog_tag(part)
    except ValueError:
        tag = None
    if tag is None:
        raise UnsupportedPart(f"{part!r} is not a catalogued cone")
    return tag


def decompose_join(m: XMatrix, parts: Sequence, mode: NumericMode | None = None) -> list | None:
    """Split ``m`` into summands, one in each part, or return None.

    Summands are restricted to ``X(mu_i a_i, mu_i b_i, lambda_i z_i)`` with
    split fractions ``mu, lambda`` in [0, 1] summing to one across parts.
    Root products and moduli then scale linearly, so every catalogued
    inequality becomes linear and feasibility is an exact LP.  The search is
    sound (every returned split is re-verified) but not complete.
    """
    tags = [_part_tag(p) for p in parts]
    if not tags:
        raise UnsupportedPart("need at least one part")
    mode = resolve_mode(mode, m)
    if validate(m, mode) is not Validity.STATE:
        return None
    pr = Profile.of(m, mode)
    roots = [Fraction(r) for r in pr.roots]
    zs = [Fraction(z) for z in pr.zs]
    n = 8 * len(tags)
    # float data sitting on a boundary may be infeasible by rounding alone
    slack = Fraction(mode.tol) / 2
    A_ub, b_ub = [], []
    for k, tag in enumerate(tags):
        mu, lam = 8 * k, 8 * k + 4
        for ineq in CONE_INEQUALITIES[tag] + STATE_INEQUALITIES:
            for P, Q in ineq.atoms:
                row = [Fraction(0)] * n
                for i in P:
                    row[mu + i - 1] -= roots[i - 1]
                for q in Q:
                    row[lam + q - 1] += zs[q - 1]
                if any(row):
                    A_ub.append(row)
                    b_ub.append(slack)
    A_eq, b_eq = [], []
    for j in range(8):
        A_eq.append([1 if v % 8 == j else 0 for v in range(n)])
        b_eq.append(1)
    res = lp.linprog_exact([0] * n, A_ub, b_ub, A_eq, b_eq)
    if not res.ok:
        return None
    summands = []
    for k in range(len(tags)):
        mu = res.x[8 * k: 8 * k + 4]
        lam = res.x[8 * k + 4: 8 * k + 8]
        if not mode.exact:
            mu, lam = [float(x) for x in mu], [float(x) for x in lam]
        summands.append(
            XMatrix(
                [u * mode.num(a) for u, a in zip(mu, m.a)],
                [u * mode.num(b) for u, b in zip(mu, m.b)],
                [(l * mode.num(re), l * mode.num(im)) for l, (re, im) in zip(lam, m.z)],
            )
        )
    if not verify_decomposition(m, summands, tags, mode):
        return None
    return summands


def verify_decomposition(m: XMatrix, summands: Sequence[XMatrix], parts: Sequence, mode: NumericMode | None = None) -> bool:
    """Summands add up to ``m`` and each is a state inside its part."""
    mode = resolve_mode(mode, m, *summands) if mode is None else mode
    total = summands[0]
    for s in summands[1:]:
        total = total + s
    diff = [abs(mode.num(x) - mode.num(y)) for x, y in zip(total.entries(), m.entries())]
    if max(diff) > mode.tol:
        return False
    return all(member(s, _part_tag(p), mode).member for s, p in zip(summands, parts))


# embeddings into larger local dimensions -----------------------------------


def _iota_kernel(d: int, exact: bool) -> np.ndarray:
    """K[o1, o2, i1, i2] so that iota_d(x)[o1, o2] = sum K x[i1, i2].

    iota_d(x) = x (+) tr(x)/2 * 1_{d-2} with the normalized trace.
    """
    zero, one, half = (Fraction(0), Fraction(1), Fraction(1, 2)) if exact else (0.0, 1.0, 0.5)
    K = np.full((d, d, 2, 2), zero, dtype=object if exact else float)
    for i in range(2):
        for j in range(2):
            K[i, j, i, j] = one
    for o in range(2, d):
        for i in range(2):
            K[o, o, i, i] = half
    return K


def _check(mtx: np.ndarray, dims: Sequence[int]) -> tuple:
    dims = tuple(int(d) for d in dims)
    if len(dims) != 3 or any(d < 2 for d in dims):
        raise BadDims(f"need three local dimensions >= 2, got {dims}")
    return dims


def embed(mtx: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    """iota_p (x) iota_q (x) iota_r applied to an 8x8 three-qubit matrix."""
    p, q, r = _check(mtx, dims)
    mtx = np.asarray(mtx)
    if mtx.shape != (8, 8):
        raise BadDims(f"expected an 8x8 matrix, got {mtx.shape}")
    exact = mtx.dtype == object
    t = mtx.reshape((2,) * 6)
    out = np.einsum(
        "aAij,bBkl,cCmn,ikmjln->abcABC",
        _iota_kernel(p, exact),
        _iota_kernel(q, exact),
        _iota_kernel(r, exact),
        t,
    )
    return out.reshape(p * q * r, p * q * r)


def compress(mtx: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    """Q_p (x) Q_q (x) Q_r: keep the leading 2x2 corner of every factor."""
    p, q, r = _check(mtx, dims)
    mtx = np.asarray(mtx)
    n = p * q * r
    if mtx.shape != (n, n):
        raise BadDims(f"expected a {n}x{n} matrix, got {mtx.shape}")
    t = mtx.reshape(p, q, r, p, q, r)
    return t[:2, :2, :2, :2, :2, :2].reshape(8, 8)
