"""CSV and SVG renderings of a slice table.

Both emitters return bytes and depend only on the table, so repeated runs
are byte-identical.
"""

from __future__ import annotations

import io
from fractions import Fraction
from typing import Sequence

from .cones import ConeTag
from .slices import (
    H1_VERTICES,
    H2_VERTICES,
    R_VERTICES,
    Probe,
    RegionTag,
    SliceTable,
)

SIZE = 800

# category -> fill color
FIGURE1_PALETTE = {
    "outside": "#ffffff",
    "gap": "#d62728",  # R minus H1: the distributivity gap
    "H1": "#fdd0a2",  # H1 outside both pentagons
    "Beta": "#9ecae1",
    "Gamma": "#a1d99b",
    "H2": "#756bb1",
}

FIGURE2_PALETTE = {
    "outside": "#ffffff",
    "R": "#eeeeee",
    "H2": "#bcbddc",  # PPT but not fully separable
    "FullSep": "#3f007d",
}

OUTLINES = (
    ("R", R_VERTICES, "#000000"),
    ("H1", H1_VERTICES, "#7f2704"),
    ("H2", H2_VERTICES, "#2d004b"),
)


def _fmt(x) -> str:
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


def emit_csv(tbl: SliceTable) -> bytes:
    out = io.StringIO(newline="")
    out.write(",".join(["s", "t"] + [str(c) for c in tbl.classifiers]) + "\n")
    for p in tbl.points:
        row = [_fmt(p.s), _fmt(p.t)] + [p.flags[c].value for c in tbl.classifiers]
        out.write(",".join(row) + "\n")
    return out.getvalue().encode("utf-8")


def _first(flags: dict, *keys):
    for k in keys:
        if k in flags:
            return flags[k].member
    raise KeyError(f"table lacks all of {[str(k) for k in keys]}")


def figure1_category(flags: dict) -> str:
    if not _first(flags, ConeTag.A, RegionTag.R):
        return "outside"
    if _first(flags, ConeTag.AmBmC, RegionTag.H2):
        return "H2"
    if not _first(flags, ConeTag.BjCmA, RegionTag.H1):
        return "gap"
    if _first(flags, ConeTag.B, RegionTag.BETA):
        return "Beta"
    if _first(flags, ConeTag.C, RegionTag.GAMMA):
        return "Gamma"
    return "H1"


def figure2_category(flags: dict) -> str:
    if not _first(flags, ConeTag.A, RegionTag.R):
        return "outside"
    if _first(flags, Probe.FULLSEP, RegionTag.FULLSEP):
        return "FullSep"
    if _first(flags, ConeTag.AmBmC, RegionTag.H2):
        return "H2"
    return "R"


CATEGORIES = {1: (figure1_category, FIGURE1_PALETTE), 2: (figure2_category, FIGURE2_PALETTE)}


def emit_svg(tbl: SliceTable, figure: int = 1, palette: dict | None = None) -> bytes:
    """Per-cell rectangles colored by category, polygon outlines on top.

    Horizontal runs of equal color are merged into one rectangle.
    """
    if tbl.grid is None:
        raise ValueError("SVG output needs a table scanned on a regular grid")
    categorize, default = CATEGORIES[figure]
    palette = {**default, **(palette or {})}
    g = tbl.grid
    n = g.n
    span = g.hi - g.lo
    step = span / (n - 1) if n > 1 else Fraction(1)
    cell = SIZE / n

    def x_of(s) -> float:
        return float((s - g.lo + step / 2) / (span + step)) * SIZE

    def y_of(t) -> float:
        return float((g.hi - t + step / 2) / (span + step)) * SIZE

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="{palette["outside"]}"/>',
    ]
    for row in range(n):
        cats = [categorize(p.flags) for p in tbl.points[row * n: (row + 1) * n]]
        k = 0
        while k < n:
            j = k
            while j + 1 < n and cats[j + 1] == cats[k]:
                j += 1
            if cats[k] != "outside":
                lines.append(
                    f'<rect x="{k * cell:.3f}" y="{row * cell:.3f}" width="{(j - k + 1) * cell:.3f}" '
                    f'height="{cell:.3f}" fill="{palette[cats[k]]}"/>'
                )
            k = j + 1
    for name, verts, color in OUTLINES:
        pts = " ".join(f"{x_of(s):.3f},{y_of(t):.3f}" for s, t in verts)
        lines.append(f'<polygon points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"><title>{name}</title></polygon>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def legend(figure: int) -> Sequence[tuple]:
    _, pal = CATEGORIES[figure]
    return tuple(pal.items())
