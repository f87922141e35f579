"""Closed-form membership of X-states in the catalogued partial-separability cones.

Every characterizing inequality is a conjunction of *atoms*

    sum_{i in P} sqrt(a_i b_i)  >=  sum_{k in Q} |z_k|

so ``min{x_p, x_q} >= max{y_p, y_q}`` turns into four atoms.  A margin is the
minimum atom slack.  The same atoms index the witness family in
:mod:`partsep.witness` and the linear constraints of the decomposition
search in :mod:`partsep.oracle`.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .xcore import (
    INDICES,
    NotAState,
    NumericMode,
    Status,
    XMatrix,
    abs_z,
    exact_sqrt,
    resolve_mode,
    root_products,
    validate,
    Validity,
)

Pair = tuple  # sorted (i, j), 1 <= i < j <= 4
Atom = tuple  # (P, Q), both sorted tuples of slot indices

PAIRS: tuple = tuple(itertools.combinations(INDICES, 2))


def pair(i: int, j: int) -> Pair:
    if i == j or not {i, j} <= set(INDICES):
        raise ValueError(f"not a pair of distinct slots: {i}, {j}")
    return (min(i, j), max(i, j))


def complement(p: Sequence[int]) -> Pair:
    rest = tuple(k for k in INDICES if k not in p)
    if len(rest) != 2:
        raise ValueError(f"{p} is not a pair")
    return rest


@dataclass(frozen=True)
class Inequality:
    name: str
    atoms: tuple

    def margin(self, roots, zs):
        return min(atom_margin(a, roots, zs) for a in self.atoms)


def atom_margin(atom: Atom, roots, zs):
    lhs, rhs = atom
    return sum(roots[i - 1] for i in lhs) - sum(zs[k - 1] for k in rhs)


def _min_ge_max(name: str, p: Sequence[int], q: Sequence[int]) -> Inequality:
    # min{sum_p, sum_q} >= max{zsum_p, zsum_q}
    p, q = tuple(p), tuple(q)
    atoms = tuple(dict.fromkeys((x, y) for x in (p, q) for y in (p, q)))
    return Inequality(name, atoms)


def positivity(i: int) -> Inequality:
    return Inequality(f"POS[{i}]", (((i,), (i,)),))


def s1(i: int, j: int) -> Inequality:
    i, j = pair(i, j)
    return _min_ge_max(f"S1[{i},{j}]", (i,), (j,))


def s2(i: int, j: int) -> Inequality:
    p = pair(i, j)
    return _min_ge_max(f"S2[{p[0]},{p[1]}]", p, complement(p))


def s3() -> Inequality:
    atoms = tuple((tuple(j for j in INDICES if j != i), (i,)) for i in INDICES)
    return Inequality("S3", atoms)


def s4(p: Sequence[int], q: Sequence[int]) -> Inequality:
    p, q = pair(*p), pair(*q)
    return _min_ge_max(f"S4[{p[0]},{p[1]}|{q[0]},{q[1]}]", p, q)


def _s4_family(pairs) -> tuple:
    return tuple(s4(p, q) for p, q in itertools.combinations(pairs, 2))


class ConeTag(enum.Enum):
    """The cones with a closed-form X-state characterization."""

    A = "A"
    B = "B"
    C = "C"
    AmB = "A&B"
    BmC = "B&C"
    CmA = "C&A"
    AmBmC = "A&B&C"
    AjB = "A|B"
    BjC = "B|C"
    CjA = "C|A"
    AjBjC = "A|B|C"
    AjBmC = "A|(B&C)"
    BjCmA = "B|(C&A)"
    CjAmB = "C|(A&B)"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "ConeTag":
        for tag in cls:
            if tag.value == text or tag.name == text:
                return tag
        raise ValueError(f"unknown cone tag {text!r}")


_S1_OF = {
    ConeTag.A: (s1(1, 4), s1(2, 3)),
    ConeTag.B: (s1(1, 3), s1(2, 4)),
    ConeTag.C: (s1(1, 2), s1(3, 4)),
}

CONE_INEQUALITIES: dict = {
    **_S1_OF,
    ConeTag.AmB: _S1_OF[ConeTag.A] + _S1_OF[ConeTag.B],
    ConeTag.BmC: _S1_OF[ConeTag.B] + _S1_OF[ConeTag.C],
    ConeTag.CmA: _S1_OF[ConeTag.C] + _S1_OF[ConeTag.A],
    ConeTag.AmBmC: _S1_OF[ConeTag.A] + _S1_OF[ConeTag.B] + _S1_OF[ConeTag.C],
    ConeTag.BjC: (s2(1, 4),),
    ConeTag.CjA: (s2(1, 3),),
    ConeTag.AjB: (s2(1, 2),),
    ConeTag.AjBjC: (s3(),),
    ConeTag.AjBmC: _s4_family([(1, 2), (1, 3), (2, 4), (3, 4)]),
    ConeTag.BjCmA: _s4_family([(1, 2), (1, 4), (2, 3), (3, 4)]),
    ConeTag.CjAmB: _s4_family([(1, 3), (1, 4), (2, 3), (2, 4)]),
}

STATE_INEQUALITIES = tuple(positivity(i) for i in INDICES)


@dataclass(frozen=True)
class Verdict:
    status: Status
    margin: object
    binding: str = ""
    reason: str = ""

    @property
    def member(self) -> bool:
        return self.status.member

    def __str__(self) -> str:
        extra = f" [{self.binding}]" if self.binding else ""
        if self.reason:
            extra += f" ({self.reason})"
        return f"{self.status} margin={self.margin}{extra}"


@dataclass(frozen=True)
class Profile:
    """Root products and anti-diagonal moduli of one state, in one mode."""

    roots: tuple
    zs: tuple
    mode: NumericMode

    @classmethod
    def of(cls, m: XMatrix, mode: NumericMode | None = None) -> "Profile":
        mode = resolve_mode(mode, m)
        return cls(root_products(m, mode), abs_z(m, mode), mode)

    def atom(self, atom: Atom):
        cache = self.__dict__.setdefault("_atoms", {})
        v = cache.get(atom)
        if v is None:
            v = cache[atom] = atom_margin(atom, self.roots, self.zs)
        return v

    def verdict(self, inequalities: Sequence[Inequality]) -> Verdict:
        best, name = None, ""
        for ineq in inequalities:
            mg = min(self.atom(a) for a in ineq.atoms)
            if best is None or mg < best:
                best, name = mg, ineq.name
        return Verdict(self.mode.status(best), best, name)

    def state_margin(self):
        return min(r - q for r, q in zip(self.roots, self.zs))


def s1_margin(m: XMatrix, p: Sequence[int], mode: NumericMode | None = None):
    pr = Profile.of(m, mode)
    return s1(*p).margin(pr.roots, pr.zs)


def s2_margin(m: XMatrix, p: Sequence[int], mode: NumericMode | None = None):
    pr = Profile.of(m, mode)
    return s2(*p).margin(pr.roots, pr.zs)


def s3_margin(m: XMatrix, mode: NumericMode | None = None):
    pr = Profile.of(m, mode)
    return s3().margin(pr.roots, pr.zs)


def s3_rows(m: XMatrix, mode: NumericMode | None = None) -> tuple:
    pr = Profile.of(m, mode)
    return tuple(atom_margin(a, pr.roots, pr.zs) for a in s3().atoms)


def s4_margin(m: XMatrix, p: Sequence[int], q: Sequence[int], mode: NumericMode | None = None):
    pr = Profile.of(m, mode)
    return s4(p, q).margin(pr.roots, pr.zs)


def _not_a_state(m: XMatrix, mode: NumericMode) -> Verdict | None:
    if validate(m, mode) is Validity.STATE:
        return None
    return Verdict(Status.OUT, None, "", "NotAState")


def member(m: XMatrix, cone: ConeTag | str, mode: NumericMode | None = None) -> Verdict:
    """Closed-form membership of ``m`` in a catalogued cone.

    Non-states are OUT with reason ``NotAState``.  The verdict margin is the
    smallest margin over the cone's inequality set; ``binding`` names the
    inequality attaining it.
    """
    if isinstance(cone, str):
        cone = ConeTag.parse(cone)
    mode = resolve_mode(mode, m)
    bad = _not_a_state(m, mode)
    if bad is not None:
        return bad
    return Profile.of(m, mode).verdict(CONE_INEQUALITIES[cone])


def member_all(m: XMatrix, cones=tuple(ConeTag), mode: NumericMode | None = None) -> dict:
    """Verdicts for several cones sharing one root/modulus computation."""
    mode = resolve_mode(mode, m)
    bad = _not_a_state(m, mode)
    if bad is not None:
        return {c: bad for c in cones}
    pr = Profile.of(m, mode)
    return {c: pr.verdict(CONE_INEQUALITIES[c]) for c in cones}


# Full separability of GHZ-diagonal states ---------------------------------


@dataclass(frozen=True)
class FullSepData:
    lam: tuple  # (lambda5, lambda6, lambda7, lambda8)
    t: tuple  # (t1, t2, t3, t4)

    @classmethod
    def of(cls, c: Sequence) -> "FullSepData":
        c1, c2, c3, c4 = c
        lam = (
            2 * (c1 + c2 + c3 + c4),
            2 * (-c1 - c2 + c3 + c4),
            2 * (-c1 + c2 - c3 + c4),
            2 * (-c1 + c2 + c3 - c4),
        )
        t = (
            c1 * (-c1 * c1 + c2 * c2 + c3 * c3 + c4 * c4) - 2 * c2 * c3 * c4,
            c2 * (c1 * c1 - c2 * c2 + c3 * c3 + c4 * c4) - 2 * c1 * c3 * c4,
            c3 * (c1 * c1 + c2 * c2 - c3 * c3 + c4 * c4) - 2 * c1 * c2 * c4,
            c4 * (c1 * c1 + c2 * c2 + c3 * c3 - c4 * c4) - 2 * c1 * c2 * c3,
        )
        return cls(lam, t)

    @property
    def branch(self) -> bool:
        """All three strict sign conditions for the non-PPT criterion hold."""
        l5, l6, l7, l8 = self.lam
        t1, t2, t3, t4 = self.t
        return l5 * l6 * l7 * l8 > 0 and t1 * t4 * l6 * l7 < 0 and t2 * t3 * l5 * l8 > 0

    def radicands(self) -> tuple:
        """(numerator, denominator) under the square roots of the bound."""
        l5, l6, l7, l8 = self.lam
        num = (l5 * l6 + l7 * l8) * (l5 * l7 + l6 * l8) * (l5 * l8 + l6 * l7)
        return num, l5 * l6 * l7 * l8


def fullsep_bound(data: FullSepData, mode: NumericMode):
    """Right-hand side sqrt(num) / (8 sqrt(den)) of the branch criterion."""
    num, den = data.radicands()
    if den <= 0:
        raise ArithmeticError("bound is only defined when lambda5..lambda8 has positive product")
    if num < 0:
        raise ArithmeticError(f"negative radicand {num} on the full-separability branch")
    if mode.exact:
        r = exact_sqrt(Fraction(num) / Fraction(den))
        if r is not None:
            return r / 8
    return math.sqrt(float(num)) / (8 * math.sqrt(float(den)))


def fully_separable_ghz(g: XMatrix, mode: NumericMode | None = None) -> Verdict:
    """Full separability of a GHZ-diagonal state X(a, a, c).

    On the branch where the three sign conditions hold the state is fully
    separable iff ``min a_i`` reaches the closed-form bound; elsewhere full
    separability coincides with PPT, i.e. membership in A&B&C.
    """
    if not g.is_ghz_diagonal:
        raise ValueError("full-separability test needs a GHZ-diagonal matrix (a == b, z real)")
    mode = resolve_mode(mode, g)
    if validate(g, mode) is not Validity.STATE:
        raise NotAState(f"{g} is not a state")
    c = [mode.num(re) for re, _ in g.z]
    data = FullSepData.of(c)
    if not data.branch:
        v = member(g, ConeTag.AmBmC, mode)
        return Verdict(v.status, v.margin, v.binding, "PPT branch")
    amin = min(mode.num(x) for x in g.a)
    bound = fullsep_bound(data, mode)
    margin = amin - bound
    if mode.exact:
        num, den = data.radicands()
        # amin >= 0 and den > 0, so the comparison can be squared
        key = 64 * den * amin * amin - num
        status = Status.IN if key > 0 else Status.OUT if key < 0 else Status.BOUNDARY
        if status is Status.BOUNDARY:
            margin = 0
    else:
        status = mode.status(margin)
    return Verdict(status, margin, "FullSep-bound", "lambda branch")
