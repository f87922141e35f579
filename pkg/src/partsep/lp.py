"""Exact rational linear programming.

A dense two-phase simplex over ``fractions.Fraction`` with Bland's rule,
sized for the few-dozen-variable problems of the witness and decomposition
searches.  Solves

    minimize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None = None
    value: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _pivot(T: list, r: int, c: int) -> None:
    row = T[r]
    piv = row[c]
    if piv != 1:
        row = [v / piv for v in row]
        T[r] = row
    for i, other in enumerate(T):
        if i == r:
            continue
        f = other[c]
        if f:
            T[i] = [a - f * b for a, b in zip(other, row)]


def _simplex(T: list, basis: list, allowed: int) -> str:
    """Minimize with the objective stored in the last row of ``T``.

    Only columns ``< allowed`` may enter.  Bland's rule prevents cycling.
    """
    obj = len(T) - 1
    while True:
        cost = T[obj]
        enter = next((j for j in range(allowed) if cost[j] < 0), None)
        if enter is None:
            return OPTIMAL
        leave, best = None, None
        for i in range(obj):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            return UNBOUNDED
        _pivot(T, leave, enter)
        basis[leave] = enter


def linprog_exact(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    n = len(c)
    rows = [([_q(v) for v in r], _q(b), True) for r, b in zip(A_ub, b_ub)]
    rows += [([_q(v) for v in r], _q(b), False) for r, b in zip(A_eq, b_eq)]
    if any(len(r) != n for r, _, _ in rows):
        raise ValueError("constraint rows must match the number of variables")
    n_slack = sum(1 for _, _, ub in rows if ub)
    m = len(rows)

    # columns: originals | slacks | artificials (only where no slack can start basic)
    needs_art = []
    T, basis = [], []
    slack_col = n
    for r, b, ub in rows:
        sign = -1 if b < 0 else 1
        line = [sign * v for v in r] + [Fraction(0)] * n_slack
        start = None
        if ub:
            line[slack_col] = Fraction(sign)
            if sign > 0:
                start = slack_col
            slack_col += 1
        T.append(line + [sign * b])
        basis.append(start)
        needs_art.append(start is None)
    n_art = sum(needs_art)
    width = n + n_slack + n_art
    k = n + n_slack
    for i in range(m):
        rhs = T[i].pop()
        T[i].extend([Fraction(0)] * n_art)
        if needs_art[i]:
            T[i][k] = Fraction(1)
            basis[i] = k
            k += 1
        T[i].append(rhs)

    # phase 1: minimize the sum of artificials
    obj = [Fraction(0)] * (width + 1)
    for i in range(m):
        if needs_art[i]:
            obj = [o - v for o, v in zip(obj, T[i])]
    for j in range(n + n_slack, width):
        obj[j] = Fraction(0)
    T.append(obj)
    _simplex(T, basis, width)
    if T[-1][-1] != 0:
        return LPResult(INFEASIBLE)
    T.pop()

    # drive remaining artificials out of the basis; drop redundant rows
    real = n + n_slack
    i = 0
    while i < len(T):
        if basis[i] >= real:
            col = next((j for j in range(real) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, col)
            basis[i] = col
        i += 1
    T = [row[:real] + [row[-1]] for row in T]

    # phase 2
    cost = [_q(v) for v in c] + [Fraction(0)] * n_slack
    obj = cost + [Fraction(0)]
    for i, bv in enumerate(basis):
        cb = cost[bv]
        if cb:
            obj = [o - cb * v for o, v in zip(obj, T[i])]
    T.append(obj)
    if _simplex(T, basis, real) == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * real
    for i, bv in enumerate(basis):
        x[bv] = T[i][-1]
    xs = tuple(x[:n])
    return LPResult(OPTIMAL, xs, sum(ci * xi for ci, xi in zip(cost, xs)))
