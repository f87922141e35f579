"""Dual-cone tests and entanglement witnesses for X-shaped states.

A witness ``W = X(s, t, u)`` with ``s, t >= 0`` is tested against the dual
cones through the W1/W2/W3 inequalities, written as atoms over
``sqrt(s_i t_i)`` and ``|u_i|`` exactly like the primal S-inequalities.

For a state ``m = X(a, b, z)`` and index sets ``P`` (diagonal support) and
``Q`` (anti-diagonal support) the witness

    W[P|Q] = X(sum_P r_i E_i, sum_P E_i / r_i, -sum_Q exp(-i theta_k) E_k),
    r_i = sqrt(b_i / a_i),

pairs with ``m`` to ``2 (sum_P sqrt(a_i b_i) - sum_Q |z_k|)``.  With
``P = {i, j}`` and ``Q = {k, l}`` this is the usual ``W_[i,j|k,l]`` family.
The linear-programming search scales ``E_i`` by ``s_i`` and ``E_k`` by
``v_k``; all dual constraints and the pairing are then linear in ``(s, v)``.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp
from .cones import Inequality, PAIRS, Profile, Verdict, pair
from .expr import ConeExpr, Gen, Join, Meet, as_expr, normalize, parse
from .xcore import (
    INDICES,
    FLOAT,
    NumericMode,
    Status,
    XMatrix,
    pairing,
    resolve_mode,
    xmatrix_from_json,
    xmatrix_to_json,
)


class UnsupportedCone(ValueError):
    """The dual of the requested cone has no closed-form characterization."""


class DegenerateEntries(ValueError):
    pass


def w1(i: int, j: int) -> Inequality:
    p = pair(i, j)
    return Inequality(f"W1[{p[0]},{p[1]}]", ((p, p),))


def w2(i: int, j: int) -> Inequality:
    i, j = pair(i, j)
    rows = (
        (tuple(k for k in INDICES if k != j), (i,)),
        (tuple(k for k in INDICES if k != i), (j,)),
    )
    return Inequality(f"W2[{i},{j}]", rows)


def w3() -> Inequality:
    return Inequality("W3", ((INDICES, INDICES),))


_ATOM_DUALS = {
    Gen("A"): (w1(1, 4), w1(2, 3)),
    Gen("B"): (w1(1, 3), w1(2, 4)),
    Gen("C"): (w1(1, 2), w1(3, 4)),
    Meet((Gen("B"), Gen("C"))): (w2(1, 4), w2(2, 3), w3()),
    Meet((Gen("A"), Gen("C"))): (w2(1, 3), w2(2, 4), w3()),
    Meet((Gen("A"), Gen("B"))): (w2(1, 2), w2(3, 4), w3()),
}


def _dual_name(e: ConeExpr) -> str:
    if isinstance(e, Gen):
        return f"{e.name}°"
    inner = [_dual_name(c) if isinstance(c, Gen) else f"({_dual_name(c)})" for c in e.children]
    return ("|" if isinstance(e, Meet) else "&").join(inner)


@dataclass(frozen=True)
class DualTag:
    """The dual of a join of basic cones and pairwise meets.

    The dual of a join is the meet of the duals, so its inequality set is the
    union of the atoms' sets.
    """

    primal: ConeExpr

    def __post_init__(self):
        object.__setattr__(self, "primal", normalize(self.primal))
        self.inequalities  # validates support

    @classmethod
    def of(cls, cone) -> "DualTag":
        return cls(as_expr(cone))

    @classmethod
    def from_name(cls, name: str) -> "DualTag":
        swapped = name.replace("°", "").translate(str.maketrans("&|", "|&"))
        return cls(parse(swapped))

    @property
    def name(self) -> str:
        return _dual_name(self.primal)

    @functools.cached_property
    def inequalities(self) -> tuple:
        parts = self.primal.children if isinstance(self.primal, Join) else (self.primal,)
        out: dict = {}
        for part in parts:
            if part not in _ATOM_DUALS:
                raise UnsupportedCone(
                    f"dual of {self.primal} is not characterized (part {part} is neither a "
                    "generator nor a meet of two generators)"
                )
            for ineq in _ATOM_DUALS[part]:
                out.setdefault(ineq.name, ineq)
        return tuple(out.values())

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Witness:
    body: XMatrix
    dual: DualTag
    label: str = ""

    def to_json(self) -> dict:
        out = xmatrix_to_json(self.body)
        out["dual_tag"] = self.dual.name
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, obj) -> "Witness":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj, parse_float=Fraction)
        return cls(xmatrix_from_json(obj), DualTag.from_name(obj["dual_tag"]), obj.get("label", ""))


def _body(w) -> XMatrix:
    return w.body if isinstance(w, Witness) else w


def _wprofile(w, mode: NumericMode | None) -> Profile:
    return Profile.of(_body(w), mode)


def w1_margin(w, p: Sequence[int], mode: NumericMode | None = None):
    pr = _wprofile(w, mode)
    return w1(*p).margin(pr.roots, pr.zs)


def w2_margin(w, p: Sequence[int], mode: NumericMode | None = None):
    pr = _wprofile(w, mode)
    return w2(*p).margin(pr.roots, pr.zs)


def w3_margin(w, mode: NumericMode | None = None):
    pr = _wprofile(w, mode)
    return w3().margin(pr.roots, pr.zs)


def member_dual(w, tag, mode: NumericMode | None = None) -> Verdict:
    """Closed-form membership of a witness body in a dual cone."""
    body = _body(w)
    if not isinstance(tag, DualTag):
        tag = DualTag.from_name(tag) if isinstance(tag, str) and "°" in tag else DualTag.of(tag)
    mode = resolve_mode(mode, body)
    if any(mode.num(x) < 0 for x in body.a + body.b):
        return Verdict(Status.OUT, None, "", "negative diagonal")
    return Profile.of(body, mode).verdict(tag.inequalities)


# construction ---------------------------------------------------------------


def _ratio(m: XMatrix, i: int, mode: NumericMode, regularize: bool):
    """sqrt(b_i / a_i), regularized by a_i, b_i -> a_i + eps, b_i + eps."""
    a, b = mode.num(m.a[i - 1]), mode.num(m.b[i - 1])
    if a == b:
        return 1
    if a > 0 and b > 0:
        return mode.sqrt(Fraction(b) / Fraction(a)) if mode.exact else math.sqrt(b / a)
    if not regularize:
        raise DegenerateEntries(f"slot {i} has a zero diagonal entry (a={a}, b={b})")
    eps = mode.tol if mode.tol > 0 else 1e-9
    return math.sqrt((float(b) + eps) / (float(a) + eps))


def _build(m: XMatrix, s: dict, v: dict, mode: NumericMode, regularize: bool) -> XMatrix:
    sa, sb, u = [0] * 4, [0] * 4, [(0, 0)] * 4
    for i, w in s.items():
        if w:
            r = _ratio(m, i, mode, regularize)
            sa[i - 1] = w * r
            sb[i - 1] = w / r if isinstance(r, float) or isinstance(w, float) else Fraction(w) / r
    for k, w in v.items():
        if w:
            re, im = m.unit_conj_phase(k, mode)
            u[k - 1] = (-w * re, -w * im)
    return XMatrix(sa, sb, u)


def construct_witness(
    m: XMatrix, P: Sequence[int], Q: Sequence[int], mode: NumericMode | None = None, regularize: bool = True
) -> XMatrix:
    """W[P|Q] for arbitrary index sets; see the module docstring."""
    mode = resolve_mode(mode, m)
    return _build(m, {i: 1 for i in P}, {k: 1 for k in Q}, mode, regularize)


def construct_pair_witness(
    m: XMatrix, p: Sequence[int], q: Sequence[int], mode: NumericMode | None = None, regularize: bool = True
) -> XMatrix:
    """W_[i,j|k,l]: pairs with m to 2(sqrt(a_i b_i) + sqrt(a_j b_j) - |z_k| - |z_l|)."""
    return construct_witness(m, pair(*p), pair(*q), mode, regularize)


# search ---------------------------------------------------------------------

_SUBSETS = tuple(
    tuple(c) for r in range(0, 5) for c in itertools.combinations(INDICES, r)
)


@functools.lru_cache(maxsize=None)
def _family(tag: DualTag) -> tuple:
    """Index-set pairs (P, Q) whose unit witness lies in the dual cone.

    Unit witnesses have sqrt(s_i t_i) = 1 on P and |u_k| = 1 on Q, whatever
    the state, so membership is decided once per tag.
    """
    out = []
    for P in _SUBSETS:
        roots = tuple(1 if i in P else 0 for i in INDICES)
        for Q in _SUBSETS[1:]:
            zs = tuple(1 if k in Q else 0 for k in INDICES)
            if all(ineq.margin(roots, zs) >= 0 for ineq in tag.inequalities):
                out.append((P, Q))
    return tuple(out)


@dataclass(frozen=True)
class SearchResult:
    witness: Witness | None
    value: object  # pairing of the best candidate seen (None if none evaluated)
    method: str


def _label(P, Q) -> str:
    return f"W[{','.join(map(str, P))}|{','.join(map(str, Q))}]"


def _accept(m, body, tag, mode, label) -> Witness | None:
    vmode = mode if mode.exact and body.is_rational else NumericMode(tol=mode.tol if mode.tol > 0 else 1e-9)
    if not member_dual(body, tag, vmode).member:
        return None
    val = pairing(body, m) if mode.exact and body.is_rational and m.is_rational else pairing(body, m, FLOAT)
    if val < -vmode.tol:
        return Witness(body, tag, label)
    return None


def search_witness(m: XMatrix, tag: DualTag, mode: NumericMode | None = None, use_lp: bool = True) -> SearchResult:
    """Look for W in the dual cone with <W, m> < 0.

    The unit family is tried first, then the linear program
    ``min <W(s, v), m>`` over the dual constraints with ``sum s + sum v = 1``.
    An optimum of zero is inconclusive.
    """
    mode = resolve_mode(mode, m)
    pr = Profile.of(m, mode)
    best = None
    scored = []
    for P, Q in _family(tag):
        val = 2 * (sum(pr.roots[i - 1] for i in P) - sum(pr.zs[k - 1] for k in Q))
        scored.append((val, P, Q))
    scored.sort(key=lambda x: x[0])
    for val, P, Q in scored:
        best = val if best is None else min(best, val)
        if val >= -mode.tol:
            break
        body = construct_witness(m, P, Q, mode)
        w = _accept(m, body, tag, mode, _label(P, Q))
        if w is not None:
            return SearchResult(w, val, "family")
    if not use_lp:
        return SearchResult(None, best, "family")

    res = _lp_search(pr, tag)
    if not res.ok:
        return SearchResult(None, best, "lp")
    value = 2 * res.value
    if value >= 0 or (not mode.exact and value >= -mode.tol):
        return SearchResult(None, value, "lp")
    s = {i: res.x[i - 1] for i in INDICES}
    v = {k: res.x[3 + k] for k in INDICES}
    if not mode.exact:
        s = {i: float(x) for i, x in s.items()}
        v = {k: float(x) for k, x in v.items()}
    body = _build(m, s, v, mode, True)
    return SearchResult(_accept(m, body, tag, mode, "lp"), value, "lp")


def _lp_search(pr: Profile, tag: DualTag) -> lp.LPResult:
    # variables: s_1..s_4, v_1..v_4; objective is half the pairing
    q = Fraction
    c = [q(r) for r in pr.roots] + [-q(z) for z in pr.zs]
    A_ub, b_ub = [], []
    for ineq in tag.inequalities:
        for P, Q in ineq.atoms:
            row = [0] * 8
            for i in P:
                row[i - 1] -= 1
            for k in Q:
                row[3 + k] += 1
            A_ub.append(row)
            b_ub.append(0)
    return lp.linprog_exact(c, A_ub, b_ub, [[1] * 8], [1])


def certify_out(m: XMatrix, cone, mode: NumericMode | None = None, use_lp: bool = True) -> Witness | None:
    """A sound certificate that ``m`` lies outside ``cone``, or None.

    Meets are handled child by child (leaving any conjunct leaves the meet).
    Other cones must be joins of generators and pairwise meets.
    """
    e = normalize(as_expr(cone))
    if isinstance(e, Meet):
        supported = False
        for child in e.children:
            try:
                w = certify_out(m, child, mode, use_lp)
            except UnsupportedCone:
                continue
            supported = True
            if w is not None:
                return w
        if not supported:
            raise UnsupportedCone(f"no conjunct of {e} has a characterized dual")
        return None
    return search_witness(m, DualTag(e), mode, use_lp).witness
