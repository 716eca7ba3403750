import math

import numpy as np
import pytest
from hypothesis import strategies as st
from scipy.linalg import expm

from cnotsynth.linalg import pauli, rot

XX = np.kron(pauli("x"), pauli("x"))
YY = np.kron(pauli("y"), pauli("y"))
ZZ = np.kron(pauli("z"), pauli("z"))


def expm_interaction(hx, hy, hz):
    """exp(-iH) by dense matrix exponential, independent of the Bell-basis route."""
    return expm(-1j * (hx * XX + hy * YY + hz * ZZ))


def random_su2(rng):
    z = rng.standard_normal(4)
    z /= np.linalg.norm(z)
    a, b = complex(z[0], z[1]), complex(z[2], z[3])
    return np.array([[a, -b.conjugate()], [b, a.conjugate()]])


def random_u2(rng):
    return np.exp(1j * rng.uniform(-math.pi, math.pi)) * random_su2(rng)


def random_chamber_point(rng):
    hx = rng.uniform(0, math.pi / 4)
    hy = rng.uniform(0, hx)
    hz = rng.uniform(-hy, hy)
    return hx, hy, hz


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


angles = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)


@st.composite
def su2s(draw):
    a, t, c = draw(angles), draw(angles), draw(angles)
    return rot("z", a) @ rot("y", t) @ rot("z", c)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.REPORT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.REPORT_LINES:
            terminalreporter.write_line(line)
