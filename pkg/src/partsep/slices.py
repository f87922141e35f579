"""The two-parameter GHZ-diagonal family and its closed-form regions.

``rho_st(s, t)`` spans the plane through the maximally mixed state and two
boundary states.  Each catalogued cone cuts out a polygon on that plane;
``region`` evaluates those polygons directly so that they can be compared,
point by point, with the cone membership tests applied to ``rho_st``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cones import ConeTag, Verdict, fully_separable_ghz, member_all
from .oracle import Cut, x_partial_transpose
from .xcore import EXACT, NumericMode, Status, XMatrix, exact_sqrt, is_rational, to_scalar


class OutOfRange(ValueError):
    pass


def rho_st(s, t) -> XMatrix:
    s, t = to_scalar(s), to_scalar(t)
    k = Fraction(1, 8) if is_rational(s) and is_rational(t) else 1 / 8
    third = Fraction(1, 3) if is_rational(t) else 1 / 3
    a = (1 + t * third, 1 + s - t * third, 1 - s - t * third, 1 + t * third)
    c = (s + 4 * t * third, 2 * t * third, 2 * t * third, s)
    return XMatrix.ghz([k * x for x in a], [k * x for x in c])


def rho_st_scaled(S: int, T: int, D: int) -> XMatrix:
    """``24 D * rho_st(S/D, T/D)``, all entries integers."""
    a = (3 * D + T, 3 * D + 3 * S - T, 3 * D - 3 * S - T, 3 * D + T)
    return XMatrix.ghz(a, (3 * S + 4 * T, 2 * T, 2 * T, 3 * S))


def rho_modular(t) -> XMatrix:
    t = to_scalar(t)
    if not 0 <= t <= 1:
        raise OutOfRange(f"t = {t} outside [0, 1]")
    k = Fraction(1, 24) if is_rational(t) else 1 / 24
    return XMatrix.ghz([k * x for x in (3 + t, 3 - t, 3 - t, 3 + t)], [k * x for x in (4 * t, 0, 2 * t, 0)])


# pairs with rho_modular(t) to (6 - 8t) / 12
W_MOD = XMatrix.ghz((0, 1, 1, 0), (-1, 0, -1, 0))


# regions ----------------------------------------------------------------


class RegionTag(enum.Enum):
    R = "R"
    BETA = "Beta"
    GAMMA = "Gamma"
    H1 = "H1"
    H2 = "H2"
    FULLSEP = "FullSep"

    def __str__(self) -> str:
        return self.value


F = Fraction

# rows (cs, ct): cs*s + ct*t <= 1
R_ROWS = ((F(1), F(1)), (F(-1), F(1)), (F(-1), F(-5, 3)), (F(1), F(-1, 3)))
BETA_ROWS = ((F(2), F(5, 3)), (F(-2), F(1, 3)))
GAMMA_ROWS = ((F(0), F(5, 3)), (F(-2), F(-1)), (F(2), F(1, 3)))
H1_ROWS = ((F(1, 2), F(4, 3)), (F(3, 2), F(2, 3)), (F(-3, 2), F(-2, 3)))

H2_VERTICES = ((F(-2, 5), F(3, 5)), (F(0), F(3, 5)), (F(1, 2), F(0)), (F(2, 3), F(-1)), (F(-2, 7), F(-3, 7)), (F(-1, 2), F(0)))

R_VERTICES = ((F(1), F(0)), (F(0), F(1)), (F(-1), F(0)), (F(2, 3), F(-1)))
BETA_VERTICES = ((F(-2, 5), F(3, 5)), (F(-2, 11), F(9, 11)), (F(6, 7), F(-3, 7)), (F(2, 3), F(-1)), (F(-6, 11), F(-3, 11)))
GAMMA_VERTICES = ((F(-2, 5), F(3, 5)), (F(2, 5), F(3, 5)), (F(2, 3), F(-1)), (F(-2, 7), F(-3, 7)), (F(-2, 3), F(1, 3)))
H1_VERTICES = ((F(-2, 11), F(9, 11)), (F(2, 5), F(3, 5)), (F(6, 7), F(-3, 7)), (F(2, 3), F(-1)), (F(-6, 11), F(-3, 11)), (F(-10, 13), F(3, 13)))


def edge_rows(vertices: Sequence) -> tuple:
    """Half-planes ``cs*s + ct*t <= 1`` through consecutive vertices.

    The origin must lie strictly inside the polygon.
    """
    rows = []
    n = len(vertices)
    for k in range(n):
        (x1, y1), (x2, y2) = vertices[k], vertices[(k + 1) % n]
        det = x1 * y2 - x2 * y1
        if det == 0:
            raise ValueError("edge passes through the origin")
        rows.append(((y2 - y1) / det, (x1 - x2) / det))
    return tuple(rows)


H2_ROWS = edge_rows(H2_VERTICES)

_ROWS = {
    RegionTag.R: R_ROWS,
    RegionTag.BETA: R_ROWS + BETA_ROWS,
    RegionTag.GAMMA: R_ROWS + GAMMA_ROWS,
    RegionTag.H1: R_ROWS + H1_ROWS,
    RegionTag.H2: H2_ROWS,
}


def _int_rows(rows) -> tuple:
    """Integer triples (p, q, r) with p*S + q*T <= r*D equivalent to a row."""
    out = []
    for cs, ct in rows:
        L = math.lcm(cs.denominator, ct.denominator)
        out.append((int(cs * L), int(ct * L), L))
    return tuple(out)


_INT_ROWS = {tag: _int_rows(rows) for tag, rows in _ROWS.items()}


def _common(s, t) -> tuple:
    s, t = Fraction(s), Fraction(t)
    D = math.lcm(s.denominator, t.denominator)
    return int(s * D), int(t * D), D


def _linear_status(tag: RegionTag, S: int, T: int, D: int) -> Status:
    worst = 1
    for p, q, r in _INT_ROWS[tag]:
        slack = r * D - p * S - q * T
        if slack < 0:
            return Status.OUT
        if slack == 0:
            worst = 0
    return Status.IN if worst else Status.BOUNDARY


def _linear_margin(tag: RegionTag, s, t):
    return min(1 - cs * s - ct * t for cs, ct in _ROWS[tag])


def fullsep_terms(s, t) -> tuple:
    """(branch, min a_i, RHS^2) of the specialized full-separability test."""
    q = s * (3 * s + 4 * t)
    quartic = (9 * s * s + 18 * s * t + 4 * t * t) * (9 * s * s + 6 * s * t - 4 * t * t)
    branch = q < 0 and quartic > 0
    third = Fraction(1, 3) if is_rational(s) and is_rational(t) else 1 / 3
    eighth = Fraction(1, 8) if is_rational(s) and is_rational(t) else 1 / 8
    amin = eighth * min(1 + t * third, 1 + s - t * third, 1 - s - t * third)
    rhs2 = t * t * (9 * s * s + 12 * s * t - 4 * t * t) / (432 * q) if branch else None
    return branch, amin, rhs2


def region(tag: RegionTag | str, s, t, mode: NumericMode | None = None) -> Verdict:
    """Closed-form status of the point (s, t) for a polygon or curved region.

    Exact mode is used when both coordinates are rational unless a mode is
    given.
    """
    tag = RegionTag(tag) if isinstance(tag, str) else tag
    s, t = to_scalar(s), to_scalar(t)
    if mode is None:
        mode = EXACT if is_rational(s) and is_rational(t) else NumericMode()
    if mode.exact:
        s, t = Fraction(s), Fraction(t)
    else:
        s, t = float(s), float(t)
    if tag is not RegionTag.FULLSEP:
        mg = _linear_margin(tag, s, t)
        return Verdict(mode.status(mg), mg, tag.value)
    # the curved test only applies inside R; elsewhere it coincides with H2
    r = _linear_margin(RegionTag.R, s, t)
    branch, amin, rhs2 = fullsep_terms(s, t)
    if not branch or mode.status(r) is Status.OUT:
        v = region(RegionTag.H2, s, t, mode)
        return Verdict(v.status, v.margin, "H2", "PPT branch")
    if rhs2 < 0:
        raise ArithmeticError(f"negative squared bound at ({s}, {t})")
    if mode.exact:
        key = amin * amin - rhs2
        status = Status.IN if key > 0 else Status.OUT if key < 0 else Status.BOUNDARY
        root = exact_sqrt(rhs2)
        mg = amin - (root if root is not None else math.sqrt(rhs2))
    else:
        mg = amin - math.sqrt(rhs2)
        status = mode.status(mg)
    return Verdict(status, mg, "FullSep-bound", "curved branch")


def region_status(tag: RegionTag, S: int, T: int, D: int) -> Status:
    """Exact status at (S/D, T/D) in integer arithmetic."""
    if tag is not RegionTag.FULLSEP:
        return _linear_status(tag, S, T, D)
    if _linear_status(RegionTag.R, S, T, D) is Status.OUT:
        return Status.OUT
    q = S * (3 * S + 4 * T)
    quartic = (9 * S * S + 18 * S * T + 4 * T * T) * (9 * S * S + 6 * S * T - 4 * T * T)
    if not (q < 0 and quartic > 0):
        return _linear_status(RegionTag.H2, S, T, D)
    M = min(3 * D + T, 3 * D + 3 * S - T, 3 * D - 3 * S - T)
    # (M / 24D)^2 - T^2 P / (432 D^2 q), times the positive 576 * 432 * D^2 * (-q)
    key = 576 * T * T * (9 * S * S + 12 * S * T - 4 * T * T) - 432 * q * M * M
    return Status.IN if key > 0 else Status.OUT if key < 0 else Status.BOUNDARY


# scanning ---------------------------------------------------------------


class Probe(enum.Enum):
    """Classifiers run on the state itself rather than a closed form."""

    FULLSEP = "fullsep"
    PPT = "ppt"

    def __str__(self) -> str:
        return self.value


# closed-form cone test ~ region predicate, expected to agree inside R
IDENTIFICATIONS = (
    (ConeTag.A, RegionTag.R),
    (ConeTag.AjB, RegionTag.R),
    (ConeTag.BjC, RegionTag.R),
    (ConeTag.CjA, RegionTag.R),
    (ConeTag.AjBjC, RegionTag.R),
    (ConeTag.AjBmC, RegionTag.R),
    (ConeTag.B, RegionTag.BETA),
    (ConeTag.C, RegionTag.GAMMA),
    (ConeTag.BjCmA, RegionTag.H1),
    (ConeTag.CjAmB, RegionTag.H1),
    (ConeTag.AmBmC, RegionTag.H2),
    (Probe.FULLSEP, RegionTag.FULLSEP),
    (Probe.PPT, RegionTag.H2),
)

FIGURE_CLASSIFIERS = {
    1: tuple(ConeTag) + (RegionTag.R, RegionTag.BETA, RegionTag.GAMMA, RegionTag.H1, RegionTag.H2),
    2: (ConeTag.A, ConeTag.AmBmC, Probe.FULLSEP, RegionTag.R, RegionTag.H2, RegionTag.FULLSEP),
}


@dataclass(frozen=True)
class Grid:
    """``n`` equally spaced values per axis over [lo, hi]."""

    n: int = 401
    lo: Fraction = Fraction(-11, 10)
    hi: Fraction = Fraction(11, 10)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("grid needs at least one point")
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))

    def values(self) -> list:
        if self.n == 1:
            return [self.lo]
        step = (self.hi - self.lo) / (self.n - 1)
        return [self.lo + k * step for k in range(self.n)]


@dataclass(frozen=True)
class SlicePoint:
    s: Fraction
    t: Fraction
    flags: dict

    def status(self, classifier) -> Status:
        return self.flags[classifier]


@dataclass
class SliceTable:
    classifiers: tuple
    points: list = field(default_factory=list)
    grid: Grid | None = None

    def mismatches(self, pairs=IDENTIFICATIONS) -> dict:
        """Count disagreements for every pair present in the table."""
        out = {}
        for left, right in pairs:
            if left in self.classifiers and right in self.classifiers:
                out[(left, right)] = sum(1 for p in self.points if p.flags[left] is not p.flags[right])
        return out


def _with_state(v: Verdict, state: Status) -> Status:
    # status of the cone intersected with the state cone; both margins are exact here
    if state is Status.OUT or v.status is Status.OUT:
        return Status.OUT
    if state is Status.BOUNDARY or v.status is Status.BOUNDARY:
        return Status.BOUNDARY
    return Status.IN


def classify_point(s, t, classifiers: Sequence) -> dict:
    """Exact statuses of every classifier at a rational point."""
    S, T, D = _common(s, t)
    flags = {}
    cones = [c for c in classifiers if isinstance(c, ConeTag)]
    m = state = None
    if cones or any(isinstance(c, Probe) for c in classifiers):
        m = rho_st_scaled(S, T, D)
        state = _sign(_positivity_slack(m))
    if cones and state is Status.OUT:
        flags.update((c, Status.OUT) for c in cones)
    elif cones:
        verdicts = member_all(m, cones, EXACT)
        for c in cones:
            flags[c] = _with_state(verdicts[c], state)
    for c in classifiers:
        if isinstance(c, RegionTag):
            flags[c] = region_status(c, S, T, D)
        elif c is Probe.FULLSEP:
            flags[c] = Status.OUT if state is Status.OUT else _with_state(fully_separable_ghz(m, EXACT), state)
        elif c is Probe.PPT:
            # the transposed matrices are states iff the original is PPT
            slack = min(_positivity_slack(x_partial_transpose(m, cut)) for cut in Cut)
            flags[c] = _with_state(Verdict(_sign(slack), slack), state)
    return flags


def _positivity_slack(m: XMatrix):
    # GHZ-diagonal with real anti-diagonal: positivity is a_i >= |c_i|
    return min(a - abs(re) for a, (re, _) in zip(m.a, m.z))


def _sign(x) -> Status:
    return Status.IN if x > 0 else Status.OUT if x < 0 else Status.BOUNDARY


def scan(grid: Grid | Iterable, classifiers: Sequence) -> SliceTable:
    """Classify every grid point exactly.

    ``grid`` is a :class:`Grid` (square, shared axes) or an iterable of
    explicit (s, t) points.  Rows run over t descending, then s ascending.
    """
    classifiers = tuple(classifiers)
    tbl = SliceTable(classifiers, grid=grid if isinstance(grid, Grid) else None)
    if isinstance(grid, Grid):
        vals = grid.values()
        pts = ((s, t) for t in reversed(vals) for s in vals)
    else:
        pts = ((Fraction(s), Fraction(t)) for s, t in grid)
    for s, t in pts:
        tbl.points.append(SlicePoint(s, t, classify_point(s, t, classifiers)))
    return tbl
