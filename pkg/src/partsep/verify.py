"""The counterexample suite: distributivity gaps, modularity and the split at
(-10/13, 3/13), each reported as PASS/FAIL."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cones import ConeTag, member, s4_margin
from .lattice import Answer, evaluate
from .oracle import decompose_join
from .slices import H1_ROWS, W_MOD, rho_modular, rho_st
from .witness import certify_out
from .xcore import EXACT, NumericMode, XMatrix, pairing

F = Fraction

# the three components of R minus H1
GAP_TRIANGLES = (
    ((F(-1), F(0)), (F(-10, 13), F(3, 13)), (F(-6, 11), F(-3, 11))),
    ((F(0), F(1)), (F(-2, 11), F(9, 11)), (F(2, 5), F(3, 5))),
    ((F(1), F(0)), (F(2, 5), F(3, 5)), (F(6, 7), F(-3, 7))),
)

SPLIT_POINT = (F(-10, 13), F(3, 13))
SPLIT_SUMMANDS = (
    XMatrix.ghz((3, 1, 3, 3), (-3, 1, 1, -1)),
    XMatrix.ghz((4, 0, 8, 4), (0, 0, 0, -4)),
)


@dataclass(frozen=True)
class Item:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def sample_triangle(tri: Sequence, rng: random.Random, denom: int = 10**6) -> tuple:
    """A rational point strictly inside a triangle."""
    w = [rng.randint(1, denom) for _ in range(3)]
    tot = sum(w)
    s = sum(F(wi, tot) * v[0] for wi, v in zip(w, tri))
    t = sum(F(wi, tot) * v[1] for wi, v in zip(w, tri))
    return s, t


def gap_samples(n: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    return [sample_triangle(GAP_TRIANGLES[k % 3], rng) for k in range(n)]


def distance_to_h1(s, t) -> float:
    """Distance from (s, t) to the nearest line carrying an H1 edge that cuts R.

    Inside R these lines are the whole boundary between H1 and the gap.
    """
    return min(abs(float(1 - a * s - b * t)) / math.hypot(float(a), float(b)) for a, b in H1_ROWS)


def _coerce(s, t, mode: NumericMode):
    return (s, t) if mode.exact else (float(s), float(t))


def check_gap_at_vertex(mode: NumericMode) -> list:
    m = rho_st(*_coerce(F(1), F(0), mode))
    items = []
    hi = evaluate(m, "A&(B|C)", mode)
    w = certify_out(m, "(A&B)|(A&C)", mode)
    val = pairing(w.body, m) if w else None
    items.append(Item(
        "gap (A&B)|(A&C) < A&(B|C) at rho(1,0)",
        hi.verdict is Answer.IN and w is not None and val < -mode.tol,
        f"A&(B|C) {hi}; witness {w.label if w else None} pairing {val}",
    ))
    hi2 = evaluate(m, "(B|C)&(B|A)", mode)
    lo2 = member(m, ConeTag.BjCmA, mode)
    items.append(Item(
        "gap B|(C&A) < (B|C)&(B|A) at rho(1,0)",
        hi2.verdict is Answer.IN and lo2.margin is not None and lo2.margin < -mode.tol,
        f"(B|C)&(B|A) {hi2}; B|(C&A) {lo2}",
    ))
    return items


def check_gap_samples(mode: NumericMode, n: int, seed: int) -> list:
    pts = gap_samples(n, seed)
    certified, far_failures, gap12 = 0, 0, 0
    for s, t in pts:
        m = rho_st(*_coerce(s, t, mode))
        if certify_out(m, "(A&B)|(A&C)", mode) is not None:
            certified += 1
        elif distance_to_h1(s, t) > 1e-6:
            far_failures += 1
        upper = member(m, ConeTag.BjC, mode).member and member(m, ConeTag.AjB, mode).member
        s4 = min(s4_margin(m, p, q, mode) for p, q in (((1, 2), (1, 4)), ((1, 2), (2, 3)), ((1, 2), (3, 4)),
                                                      ((1, 4), (2, 3)), ((1, 4), (3, 4)), ((2, 3), (3, 4))))
        if upper and s4 < -mode.tol:
            gap12 += 1
    rate = certified / n if n else 1.0
    return [
        Item(
            f"witnesses for (A&B)|(A&C) on {n} gap samples",
            rate >= 0.99 and far_failures == 0,
            f"{certified}/{n} certified, {far_failures} failures away from H1",
        ),
        Item(
            f"gap samples in (B|C)&(B|A) and outside B|(C&A)",
            gap12 == n,
            f"{gap12}/{n} confirmed by S4 margins",
        ),
    ]


def check_modularity(mode: NumericMode) -> list:
    items = []
    for t in (F(4, 5), F(9, 10), F(1)):
        tt = t if mode.exact else float(t)
        m = rho_modular(tt)
        hi = evaluate(m, "A&(B|(C&A))", mode)
        w = certify_out(m, "(A&B)|(A&C)", mode)
        items.append(Item(
            f"modularity fails at t={t}",
            hi.verdict is Answer.IN and w is not None,
            f"A&(B|(C&A)) {hi}; witness {w.label if w else None}",
        ))
    vals = {t: pairing(W_MOD, rho_modular(t if mode.exact else float(t)), None if mode.exact else mode)
            for t in (F(0), F(1, 2), F(3, 4), F(4, 5), F(1))}
    sign_ok = (
        vals[F(0)] > mode.tol and vals[F(1, 2)] > mode.tol
        and abs(vals[F(3, 4)]) <= mode.tol
        and vals[F(4, 5)] < -mode.tol and vals[F(1)] < -mode.tol
    )
    w34 = certify_out(rho_modular(F(3, 4) if mode.exact else 0.75), "(A&B)|(A&C)", mode)
    items.append(Item(
        "threshold t=3/4 for W_mod",
        sign_ok and w34 is None,
        ", ".join(f"<W,rho_{t}>={v}" for t, v in vals.items()) + f"; witness at 3/4: {w34.label if w34 else None}",
    ))
    return items


def check_split(mode: NumericMode) -> list:
    s, t = SPLIT_POINT
    m = rho_st(s, t)
    first, second = SPLIT_SUMMANDS
    identity = (first + second) == m * 52
    v1 = member(first, ConeTag.AmB, mode)
    v2 = member(second, "C&A", mode)
    mm = m if mode.exact else rho_st(float(s), float(t))
    found = decompose_join(mm, [ConeTag.AmB, ConeTag.CmA], mode)
    return [
        Item(
            "52 rho(-10/13,3/13) splits into A&B and A&C parts",
            identity and v1.member and v2.member,
            f"sum matches: {identity}; A&B {v1}; A&C {v2}",
        ),
        Item(
            "decomposition search at (-10/13,3/13)",
            found is not None,
            "found" if found else "none",
        ),
    ]


def run(mode: NumericMode = EXACT, samples: int = 200, seed: int = 0) -> list:
    return (
        check_gap_at_vertex(mode)
        + check_gap_samples(mode, samples, seed)
        + check_modularity(mode)
        + check_split(mode)
    )
