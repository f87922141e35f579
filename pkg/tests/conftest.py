import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from partsep.xcore import XMatrix

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

F = Fraction


def random_x_state(rng: random.Random, complex_z: bool = True) -> XMatrix:
    """A random X-state, positive by construction.

    Moduli are drawn as a fraction of sqrt(a b), biased towards the boundary
    so that every cone is both entered and left.
    """
    a = [rng.random() for _ in range(4)]
    b = [rng.random() for _ in range(4)]
    z = []
    for x, y in zip(a, b):
        r = np.sqrt(x * y) * rng.choice([rng.random(), 1 - rng.random() ** 4])
        phase = rng.uniform(0, 2 * np.pi) if complex_z else rng.choice([0.0, np.pi])
        z.append(complex(r * np.cos(phase), r * np.sin(phase)))
    return XMatrix(a, b, z)


def random_ghz_rational(rng: random.Random, denom: int = 60) -> XMatrix:
    a = [F(rng.randint(0, denom), denom) for _ in range(4)]
    c = [F(rng.randint(-int(x * denom), int(x * denom)), denom) for x in a]
    return XMatrix.ghz(a, c)


@pytest.fixture
def rng():
    return random.Random(0)


small_fracs = st.fractions(min_value=-1, max_value=1, max_denominator=30)
nonneg_fracs = st.fractions(min_value=0, max_value=1, max_denominator=30)


@st.composite
def ghz_states(draw):
    """Rational GHZ-diagonal states."""
    a = [draw(nonneg_fracs) for _ in range(4)]
    c = [draw(st.fractions(min_value=-x, max_value=x, max_denominator=30)) for x in a]
    return XMatrix.ghz(a, c)


@st.composite
def ghz_matrices(draw):
    """Rational GHZ-diagonal matrices, not necessarily positive."""
    a = [draw(nonneg_fracs) for _ in range(4)]
    c = [draw(small_fracs) for _ in range(4)]
    return XMatrix.ghz(a, c)


@st.composite
def x_states(draw):
    """Float X-states with complex anti-diagonal."""
    a = [draw(st.floats(0, 1)) for _ in range(4)]
    b = [draw(st.floats(0, 1)) for _ in range(4)]
    z = []
    for x, y in zip(a, b):
        r = np.sqrt(x * y) * draw(st.floats(0, 1))
        th = draw(st.floats(0, 2 * np.pi))
        z.append(complex(r * np.cos(th), r * np.sin(th)))
    return XMatrix(a, b, z)


def _scale_to_edge(rng, a, b, z, inside, steps=40):
    """Scale the anti-diagonal ``z`` to just below the largest factor keeping ``inside``."""
    lo, hi = 0.0, 1.0
    while inside(XMatrix(a, b, [x * hi for x in z])):
        lo, hi = hi, hi * 2
        if hi > 1e6:
            break
    for _ in range(steps):
        mid = (lo + hi) / 2
        if inside(XMatrix(a, b, [x * mid for x in z])):
            lo = mid
        else:
            hi = mid
    f = lo * rng.choice([1.0, rng.uniform(0.5, 1.0)])
    return XMatrix(a, b, [x * f for x in z])


def boundary_sample(rng: random.Random, inside) -> XMatrix:
    """A random X-matrix in a cone given by ``inside``, often on its edge.

    Diagonals are random (sometimes with a zero entry); anti-diagonal
    directions have random phases and random relative sizes.
    """
    a = [rng.random() * (rng.random() > 0.1) for _ in range(4)]
    b = [rng.random() * (rng.random() > 0.1) for _ in range(4)]
    z = []
    for _ in range(4):
        r, th = rng.random() * (rng.random() > 0.2), rng.uniform(0, 2 * np.pi)
        z.append(complex(r * np.cos(th), r * np.sin(th)))
    return _scale_to_edge(rng, a, b, z, inside)


def aligned_witness(rng: random.Random, m: XMatrix, inside) -> XMatrix:
    """A witness in a dual cone (``inside``) pointed against ``m``.

    Its diagonal follows the ratios b_i / a_i of ``m`` and its anti-diagonal
    carries the opposite phases, which makes the pairing as small as the
    dual constraints allow.
    """
    # 0/1 supports reach the extreme rays; uniform weights fill the inside
    binary = rng.random() < 0.7
    c = [float(rng.random() < 0.5) if binary else rng.random() for _ in range(4)]
    s, t, u = [], [], []
    for i in range(4):
        a, b = float(m.a[i]), float(m.b[i])
        r = np.sqrt(b / a) if a > 0 and b > 0 else 1.0
        s.append(c[i] * r)
        t.append(c[i] / r)
        re, im = (float(x) for x in m.z[i])
        mod = np.hypot(re, im)
        ph = complex(re, -im) / mod if mod > 0 else 1.0
        u.append(-(float(rng.random() < 0.5) if binary else rng.random()) * ph)
    return _scale_to_edge(rng, s, t, u, inside)
