"""Lattice words over the generators A, B, C.

``&`` is meet (intersection), ``|`` is join (convex hull); ``&`` binds
tighter.  Normalization uses associativity, commutativity, idempotence and
absorption only.  Redundant children are detected with Whitman's decision
procedure for the free lattice, which never uses distributivity.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Union

from .cones import ConeTag

GENERATORS = ("A", "B", "C")


@dataclass(frozen=True)
class Gen:
    name: str

    def __post_init__(self):
        if self.name not in GENERATORS:
            raise ValueError(f"unknown generator {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Meet:
    children: tuple

    def __str__(self) -> str:
        return "&".join(f"({c})" if isinstance(c, Join) else str(c) for c in self.children)


@dataclass(frozen=True)
class Join:
    children: tuple

    def __str__(self) -> str:
        return "|".join(f"({c})" if isinstance(c, Meet) else str(c) for c in self.children)


ConeExpr = Union[Gen, Meet, Join]


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def join(self) -> ConeExpr:
        parts = [self.meet()]
        while self.peek() == "|":
            self.take()
            parts.append(self.meet())
        return parts[0] if len(parts) == 1 else Join(tuple(parts))

    def meet(self) -> ConeExpr:
        parts = [self.atom()]
        while self.peek() == "&":
            self.take()
            parts.append(self.atom())
        return parts[0] if len(parts) == 1 else Meet(tuple(parts))

    def atom(self) -> ConeExpr:
        ch = self.peek()
        at = self.pos
        if ch is None:
            raise ExprSyntaxError("unexpected end of expression", at)
        if ch in GENERATORS:
            self.take()
            return Gen(ch)
        if ch == "(":
            self.take()
            inner = self.join()
            if self.peek() != ")":
                raise ExprSyntaxError("expected ')'", self.pos)
            self.take()
            return inner
        raise ExprSyntaxError(f"unexpected character {ch!r}", at)


def parse(text: str) -> ConeExpr:
    p = _Parser(text)
    e = p.join()
    if p.peek() is not None:
        raise ExprSyntaxError(f"unexpected character {p.peek()!r}", p.pos)
    return e


def as_expr(cone) -> ConeExpr:
    if isinstance(cone, (Gen, Meet, Join)):
        return cone
    if isinstance(cone, ConeTag):
        return parse(cone.value)
    if isinstance(cone, str):
        return parse(cone)
    raise TypeError(f"cannot read {cone!r} as a cone expression")


@functools.lru_cache(maxsize=None)
def leq(s: ConeExpr, t: ConeExpr) -> bool:
    """``s <= t`` in the free lattice on A, B, C (Whitman's rules)."""
    if isinstance(s, Join):
        return all(leq(x, t) for x in s.children)
    if isinstance(t, Meet):
        return all(leq(s, y) for y in t.children)
    if isinstance(s, Gen) and isinstance(t, Gen):
        return s == t
    if isinstance(s, Meet) and any(leq(x, t) for x in s.children):
        return True
    if isinstance(t, Join) and any(leq(s, y) for y in t.children):
        return True
    return False


def sort_key(e: ConeExpr):
    if isinstance(e, Gen):
        return (0, e.name)
    return (1 if isinstance(e, Meet) else 2, tuple(sort_key(c) for c in e.children))


@functools.lru_cache(maxsize=None)
def normalize(e: ConeExpr) -> ConeExpr:
    if isinstance(e, Gen):
        return e
    kind = type(e)
    kids = []
    for c in e.children:
        c = normalize(c)
        kids.extend(c.children if isinstance(c, kind) else (c,))
    kids = sorted(set(kids), key=sort_key)
    # in a meet, a child above another child is redundant; dually for joins
    below = leq if kind is Meet else (lambda x, y: leq(y, x))
    kept: list = []
    for k in kids:
        if any(below(j, k) for j in kept):
            continue
        kept = [j for j in kept if not below(k, j)]
        kept.append(k)
    if len(kept) == 1:
        return kept[0]
    return kind(tuple(sorted(kept, key=sort_key)))


CATALOG: dict = {normalize(parse(tag.value)): tag for tag in ConeTag}


def catalog_tag(e: ConeExpr) -> ConeTag | None:
    return CATALOG.get(normalize(as_expr(e)))
