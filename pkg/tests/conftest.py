import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from sboxkit.core import SBox  # noqa: E402

settings.register_profile("default", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# the Heys tutorial S-box, a common textbook example
HEYS = [0xE, 0x4, 0xD, 0x1, 0x2, 0xF, 0xB, 0x8, 0x3, 0xA, 0x6, 0xC, 0x5, 0x9, 0x0, 0x7]


@st.composite
def permutations(draw, n_values=(3, 4, 5)):
    n = draw(st.sampled_from(n_values))
    table = draw(st.permutations(list(range(1 << n))))
    return SBox(n, n, tuple(table))


@st.composite
def functions(draw, n_values=(2, 3, 4, 5), m_values=(1, 2, 3, 4, 5)):
    n = draw(st.sampled_from(n_values))
    m = draw(st.sampled_from(m_values))
    table = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=1 << n, max_size=1 << n))
    return SBox(n, m, tuple(table))


def random_permutation(rng, n):
    return SBox(n, n, tuple(int(v) for v in rng.permutation(1 << n)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def heys():
    return SBox(4, 4, tuple(HEYS), name="heys")


# acceptance summary: test_acceptance appends (criterion, status, detail)
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {number}: {status} - {detail}")
