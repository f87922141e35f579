"""Evaluation of arbitrary lattice words on an X-state.

Catalogued words are decided in closed form.  Meets are decided child by
child.  Joins fall back to certificates: a separating witness proves OUT,
an explicit split proves IN, and catalogued upper/lower bounds in the free
lattice order decide the rest when they can.  Anything else is UNKNOWN.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .cones import ConeTag, member
from .expr import (  # noqa: F401  (re-exported)
    CATALOG,
    ConeExpr,
    ExprSyntaxError,
    Gen,
    Join,
    Meet,
    as_expr,
    catalog_tag,
    leq,
    normalize,
    parse,
    sort_key,
)
from .oracle import decompose_join
from .slices import W_MOD, rho_modular
from .witness import UnsupportedCone, Witness, certify_out
from .xcore import NumericMode, Status, XMatrix, pairing, resolve_mode


class Answer(enum.Enum):
    IN = "IN"
    OUT = "OUT"
    UNKNOWN = "UNKNOWN"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Certificate:
    kind: str  # closed-form | witness | decomposition | bound | meet
    detail: Any = None

    def describe(self) -> str:
        if self.kind == "witness":
            return f"witness {self.detail.label}"
        if self.kind == "decomposition":
            return "decomposition into " + " + ".join(str(x) for x in self.detail)
        if self.kind == "meet":
            return "all conjuncts: " + ", ".join(c.describe() for c in self.detail)
        return f"{self.kind} {self.detail}"


@dataclass(frozen=True)
class EvalResult:
    verdict: Answer
    expr: ConeExpr
    certificate: Certificate | None = None
    boundary: bool = False
    bounds: tuple = field(default_factory=tuple)

    def __str__(self) -> str:
        v = str(self.verdict)
        if self.verdict is Answer.IN and self.boundary:
            v += " (boundary)"
        return v


def _closed_form(m: XMatrix, e: ConeExpr, tag: ConeTag, mode: NumericMode) -> EvalResult:
    v = member(m, tag, mode)
    if v.member:
        return EvalResult(Answer.IN, e, Certificate("closed-form", v), v.status is Status.BOUNDARY)
    return EvalResult(Answer.OUT, e, Certificate("closed-form", v))


def _try_witness(m, e, mode) -> Witness | None:
    try:
        return certify_out(m, e, mode)
    except UnsupportedCone:
        return None


def _inner_tags(e: ConeExpr) -> list:
    """Maximal catalogued cones below ``e`` (``e`` itself if catalogued)."""
    tag = catalog_tag(e)
    if tag is not None:
        return [tag]
    below = [(x, t) for x, t in CATALOG.items() if leq(x, e)]
    keep = [t for x, t in below if not any(y != x and leq(x, y) for y, _ in below)]
    return sorted(keep, key=lambda t: t.value)


def _try_split(m, e: Join, mode):
    # every part sits inside some child, so a split across the parts is a split for e
    tags = []
    for c in e.children:
        for t in _inner_tags(c):
            if t not in tags:
                tags.append(t)
    if not tags:
        return None
    return decompose_join(m, tags, mode)


def evaluate(m: XMatrix, e, mode: NumericMode | None = None) -> EvalResult:
    e = normalize(as_expr(e))
    mode = resolve_mode(mode, m)
    tag = CATALOG.get(e)
    if tag is not None:
        return _closed_form(m, e, tag, mode)
    if isinstance(e, Meet):
        parts = [evaluate(m, c, mode) for c in e.children]
        for p in parts:
            if p.verdict is Answer.OUT:
                return EvalResult(Answer.OUT, e, p.certificate)
        if all(p.verdict is Answer.IN for p in parts):
            return EvalResult(
                Answer.IN,
                e,
                Certificate("meet", tuple(p.certificate for p in parts)),
                any(p.boundary for p in parts),
            )
        return EvalResult(Answer.UNKNOWN, e, bounds=tuple(b for p in parts for b in p.bounds))
    assert isinstance(e, Join)
    for c in e.children:
        sub = evaluate(m, c, mode)
        if sub.verdict is Answer.IN:
            return EvalResult(Answer.IN, e, sub.certificate, sub.boundary)
    w = _try_witness(m, e, mode)
    split = _try_split(m, e, mode)
    assert not (w is not None and split is not None), f"witness and decomposition both found for {e}"
    if w is not None:
        return EvalResult(Answer.OUT, e, Certificate("witness", w))
    if split is not None:
        return EvalResult(Answer.IN, e, Certificate("decomposition", tuple(split)))
    return _by_bounds(m, e, mode)


def _by_bounds(m: XMatrix, e: ConeExpr, mode: NumericMode) -> EvalResult:
    uppers = sorted((t for x, t in CATALOG.items() if leq(e, x)), key=lambda t: t.value)
    lowers = sorted((t for x, t in CATALOG.items() if leq(x, e)), key=lambda t: t.value)
    for t in uppers:
        v = member(m, t, mode)
        if not v.member:
            return EvalResult(Answer.OUT, e, Certificate("bound", f"outside {t} which contains it"), bounds=(t,))
    for t in lowers:
        v = member(m, t, mode)
        if v.member:
            return EvalResult(
                Answer.IN, e, Certificate("bound", f"inside {t} which it contains"),
                v.status is Status.BOUNDARY, bounds=(t,),
            )
    return EvalResult(Answer.UNKNOWN, e, bounds=tuple(uppers) + tuple(lowers))


# the two distributive inequalities and the modular one -------------------------

DISTRIBUTIVE_PAIRS = (
    ("(A&B)|(A&C)", "A&(B|C)"),
    ("B|(C&A)", "(B|C)&(B|A)"),
)


@dataclass(frozen=True)
class Comparison:
    smaller: str
    larger: str
    lower: EvalResult
    upper: EvalResult

    @property
    def separated(self) -> bool:
        """The state lies in the larger word but not in the smaller one."""
        return self.upper.verdict is Answer.IN and self.lower.verdict is Answer.OUT

    def __str__(self) -> str:
        return f"{self.smaller} <= {self.larger}: {self.lower} / {self.upper}" + (" separated" if self.separated else "")


def _compare(m, small, large, mode) -> Comparison:
    return Comparison(small, large, evaluate(m, small, mode), evaluate(m, large, mode))


def check_distributivity(m: XMatrix, mode: NumericMode | None = None) -> tuple:
    """Evaluate both sides of both distributive inequalities on ``m``."""
    return tuple(_compare(m, lo, hi, mode) for lo, hi in DISTRIBUTIVE_PAIRS)


@dataclass(frozen=True)
class ModularityReport:
    t: Any
    comparison: Comparison
    w_pairing: Any

    @property
    def strict(self) -> bool:
        return self.comparison.separated


def check_modularity(t, mode: NumericMode | None = None) -> ModularityReport:
    m = rho_modular(t)
    mode = resolve_mode(mode, m)
    cmp = _compare(m, "(A&B)|(A&C)", "A&(B|(C&A))", mode)
    return ModularityReport(t, cmp, pairing(W_MOD, m, None if mode.exact else mode))
