"""X-shaped self-adjoint three-qubit matrices.

An X-matrix ``X(a, b, z)`` is the 8x8 matrix with diagonal
``(a1, a2, a3, a4, b4, b3, b2, b1)`` and anti-diagonal ``(z1, z2, z3, z4)``
in the upper half (conjugates below).  Anti-diagonal slot ``i`` pairs the
computational basis rows ``(000, 111), (001, 110), (010, 101), (011, 100)``.

Entries are kept in whatever scalar type they were given (``int``,
``Fraction`` or ``float``); complex anti-diagonal entries are stored as
``(re, im)`` pairs so that rational complex numbers stay exact.  Every
predicate takes a :class:`NumericMode` which decides whether comparisons are
exact (rational arithmetic, zero tolerance) or floating point with a
tolerance.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

Scalar = Union[int, Fraction, float]

INDICES = (1, 2, 3, 4)


class InexactError(ValueError):
    """An exact-mode computation needed an irrational square root."""


class NegativeDiagonal(ValueError):
    pass


class NotSelfAdjoint(ValueError):
    pass


class NotAState(ValueError):
    pass


class Status(enum.Enum):
    IN = "IN"
    OUT = "OUT"
    BOUNDARY = "BOUNDARY"

    def __str__(self) -> str:
        return self.value

    @property
    def member(self) -> bool:
        """Membership in the closed set (boundary counts as inside)."""
        return self is not Status.OUT


def is_rational(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def to_scalar(x) -> Scalar:
    """Coerce user input to int, Fraction or float.

    Strings are read as exact rationals (``"3/4"``, ``"0.125"``).
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (int, float)):
        return x
    if isinstance(x, str):
        return to_scalar(Fraction(x.strip()))
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"unsupported scalar {x!r}")


def _to_pair(v) -> tuple[Scalar, Scalar]:
    if isinstance(v, (complex, np.complexfloating)):
        return (float(v.real), float(v.imag))
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex entry must be [re, im], got {v!r}")
        return (to_scalar(v[0]), to_scalar(v[1]))
    return (to_scalar(v), 0)


def exact_sqrt(q) -> Fraction | int | None:
    """Square root of a nonnegative rational if it is rational, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return rn if rd == 1 else Fraction(rn, rd)


@dataclass(frozen=True)
class NumericMode:
    """Evaluation context: exact rationals or floats with a tolerance."""

    exact: bool = False
    tol: float = 1e-9

    def __post_init__(self):
        if self.exact:
            object.__setattr__(self, "tol", 0)
        elif not self.tol > 0:
            raise ValueError("float mode needs a positive tolerance")

    def num(self, x) -> Scalar:
        if self.exact:
            if isinstance(x, float):
                return Fraction(x)
            return x
        return float(x)

    def status(self, margin) -> Status:
        if margin > self.tol:
            return Status.IN
        if margin < -self.tol:
            return Status.OUT
        return Status.BOUNDARY

    def sqrt(self, x) -> Scalar:
        if not self.exact:
            return math.sqrt(max(float(x), 0.0))
        r = exact_sqrt(x)
        if r is None:
            raise InexactError(f"sqrt({x}) is irrational; use float mode")
        return r

    def __str__(self) -> str:
        return "exact" if self.exact else f"float(tol={self.tol:g})"


EXACT = NumericMode(exact=True)
FLOAT = NumericMode()


@dataclass(frozen=True)
class XMatrix:
    a: tuple
    b: tuple
    z: tuple

    def __post_init__(self):
        a = tuple(to_scalar(x) for x in self.a)
        b = tuple(to_scalar(x) for x in self.b)
        z = tuple(_to_pair(v) for v in self.z)
        if not (len(a) == len(b) == len(z) == 4):
            raise ValueError("an X-matrix needs four entries in each of a, b, z")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "z", z)

    @classmethod
    def ghz(cls, a: Sequence, c: Sequence) -> "XMatrix":
        """GHZ-diagonal matrix X(a, a, c) with real anti-diagonal ``c``."""
        return cls(a, a, [(x, 0) for x in c])

    @classmethod
    def zero(cls) -> "XMatrix":
        return cls((0,) * 4, (0,) * 4, (0,) * 4)

    @property
    def is_ghz_diagonal(self) -> bool:
        return self.a == self.b and all(im == 0 for _, im in self.z)

    @property
    def is_rational(self) -> bool:
        return all(is_rational(x) for x in self.entries())

    def entries(self) -> Iterable[Scalar]:
        yield from self.a
        yield from self.b
        for re, im in self.z:
            yield re
            yield im

    def __add__(self, other: "XMatrix") -> "XMatrix":
        if not isinstance(other, XMatrix):
            return NotImplemented
        return XMatrix(
            [x + y for x, y in zip(self.a, other.a)],
            [x + y for x, y in zip(self.b, other.b)],
            [(p[0] + q[0], p[1] + q[1]) for p, q in zip(self.z, other.z)],
        )

    def __mul__(self, k) -> "XMatrix":
        k = to_scalar(k)
        return XMatrix(
            [k * x for x in self.a],
            [k * x for x in self.b],
            [(k * re, k * im) for re, im in self.z],
        )

    __rmul__ = __mul__

    def __neg__(self) -> "XMatrix":
        return self * -1

    def __sub__(self, other: "XMatrix") -> "XMatrix":
        return self + (-other)

    def phase(self, i: int) -> float:
        """arg z_i, defined as 0 when z_i = 0."""
        re, im = self.z[i - 1]
        if re == 0 and im == 0:
            return 0.0
        return math.atan2(float(im), float(re))

    def unit_conj_phase(self, i: int, mode: NumericMode = FLOAT) -> tuple:
        """``exp(-i theta_i)`` as an (re, im) pair; exact for real z_i."""
        re, im = self.z[i - 1]
        if im == 0:
            return (-1 if re < 0 else 1, 0)
        if re == 0 and mode.exact:
            return (0, -1 if im > 0 else 1)
        r = math.hypot(float(re), float(im))
        return (float(re) / r, -float(im) / r)

    def __str__(self) -> str:
        def f(x):
            return str(x)

        zs = ", ".join(f(re) if im == 0 else f"{f(re)}{'+' if im >= 0 else '-'}{f(abs(im))}i" for re, im in self.z)
        return (
            f"X(a=({', '.join(map(f, self.a))}); "
            f"b=({', '.join(map(f, self.b))}); z=({zs}))"
        )


def ghz(a: Sequence, c: Sequence) -> XMatrix:
    return XMatrix.ghz(a, c)


def resolve_mode(mode: NumericMode | None, *mats: XMatrix) -> NumericMode:
    """Pick exact mode for rational GHZ-diagonal data, float otherwise."""
    if mode is not None:
        return mode
    if all(m.is_rational and m.is_ghz_diagonal for m in mats):
        return EXACT
    return FLOAT


class Validity(enum.Enum):
    STATE = "State"
    SELF_ADJOINT_ONLY = "SelfAdjointOnly"


def validate(m: XMatrix, mode: NumericMode | None = None) -> Validity:
    """State iff a_i, b_i >= 0 and sqrt(a_i b_i) >= |z_i| for every slot."""
    mode = resolve_mode(mode, m)
    if mode.exact and m.is_rational:
        for a, b, (re, im) in zip(m.a, m.b, m.z):
            if a < 0 or b < 0 or a * b < re * re + im * im:
                return Validity.SELF_ADJOINT_ONLY
        return Validity.STATE
    return Validity.STATE if state_margin(m, mode) >= -mode.tol else Validity.SELF_ADJOINT_ONLY


def is_state(m: XMatrix, mode: NumericMode | None = None) -> bool:
    return validate(m, mode) is Validity.STATE


def state_margin(m: XMatrix, mode: NumericMode | None = None) -> Scalar:
    """Smallest slack of the twelve positivity inequalities.

    Negative diagonal entries are reported directly; otherwise the minimum of
    ``sqrt(a_i b_i) - |z_i|`` is returned.
    """
    mode = resolve_mode(mode, m)
    diag = [mode.num(x) for x in m.a + m.b]
    low = min(diag)
    if low < 0:
        return low
    roots = root_products(m, mode)
    zs = abs_z(m, mode)
    return min(r - q for r, q in zip(roots, zs))


def root_products(m: XMatrix, mode: NumericMode | None = None) -> tuple:
    """``(sqrt(a_i b_i))_i``; exact on GHZ-diagonal input in exact mode."""
    mode = resolve_mode(mode, m)
    out = []
    for a, b in zip(m.a, m.b):
        a, b = mode.num(a), mode.num(b)
        if a < 0 or b < 0:
            raise NegativeDiagonal(f"diagonal entries must be >= 0, got a={a}, b={b}")
        out.append(a if a == b else mode.sqrt(a * b))
    return tuple(out)


def abs_z(m: XMatrix, mode: NumericMode | None = None) -> tuple:
    mode = resolve_mode(mode, m)
    out = []
    for re, im in m.z:
        re, im = mode.num(re), mode.num(im)
        if im == 0:
            out.append(abs(re))
        elif re == 0:
            out.append(abs(im))
        else:
            out.append(mode.sqrt(re * re + im * im))
    return tuple(out)


def pairing(w: XMatrix, m: XMatrix, mode: NumericMode | None = None) -> Scalar:
    """Trace pairing Tr(m w^T) = sum_i s_i a_i + t_i b_i + 2 Re(u_i z_i).

    With ``mode=None`` the native arithmetic of the entries is used, so two
    rational matrices pair exactly.
    """
    num = (lambda x: x) if mode is None else mode.num
    total = 0
    for i in range(4):
        ur, ui = w.z[i]
        zr, zi = m.z[i]
        total += num(w.a[i]) * num(m.a[i]) + num(w.b[i]) * num(m.b[i])
        total += 2 * (num(ur) * num(zr) - num(ui) * num(zi))
    return total


def ghz_twirl_xpart(dense, tol: float = 1e-9) -> XMatrix:
    """Keep only the diagonal and anti-diagonal of an 8x8 self-adjoint matrix.

    This is the X-part used to turn the X-state criteria into necessary
    conditions for general states.
    """
    arr = np.asarray(dense)
    if arr.shape != (8, 8):
        raise ValueError(f"expected an 8x8 matrix, got shape {arr.shape}")
    if arr.dtype == object:
        herm = all(_conj(arr[j, i]) == arr[i, j] for i in range(8) for j in range(8))
    else:
        herm = np.allclose(arr, arr.conj().T, atol=tol, rtol=0)
    if not herm:
        raise NotSelfAdjoint("input matrix is not self-adjoint")

    def real(x):
        if isinstance(x, (complex, np.complexfloating)):
            return float(x.real)
        return to_scalar(x)

    a = [real(arr[i, i]) for i in range(4)]
    b = [real(arr[7 - i, 7 - i]) for i in range(4)]
    z = [_pair_of(arr[i, 7 - i]) for i in range(4)]
    return XMatrix(a, b, z)


def _conj(x):
    if isinstance(x, (complex, np.complexfloating)):
        return x.conjugate()
    return x


def _pair_of(x):
    if isinstance(x, (complex, np.complexfloating)):
        return (float(x.real), float(x.imag))
    return (to_scalar(x), 0)


# JSON text format ---------------------------------------------------------


def _json_num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def xmatrix_to_json(m: XMatrix) -> dict:
    return {
        "a": [_json_num(x) for x in m.a],
        "b": [_json_num(x) for x in m.b],
        "z": [[_json_num(re), _json_num(im)] for re, im in m.z],
    }


def xmatrix_from_json(obj) -> XMatrix:
    """Build an XMatrix from the JSON object format.

    Accepts ``{"a", "b", "z", "scale"?}`` or the GHZ-diagonal shorthand
    ``{"a", "c", "scale"?}``.  Numbers may be JSON numbers or rational
    strings such as ``"-3/13"``.
    """
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj, parse_float=Fraction)
    if not isinstance(obj, dict) or "a" not in obj:
        raise ValueError("X-matrix JSON must be an object with an 'a' field")
    if "c" in obj:
        if "b" in obj or "z" in obj:
            raise ValueError("use either the GHZ shorthand (a, c) or the full form (a, b, z)")
        m = XMatrix.ghz(obj["a"], obj["c"])
    else:
        try:
            m = XMatrix(obj["a"], obj["b"], obj["z"])
        except KeyError as exc:
            raise ValueError(f"missing field {exc}") from None
    if obj.get("scale") is not None:
        m = m * to_scalar(obj["scale"])
    return m


def load_xmatrix(path) -> XMatrix:
    with open(path, encoding="utf-8") as fh:
        return xmatrix_from_json(json.load(fh, parse_float=Fraction))
