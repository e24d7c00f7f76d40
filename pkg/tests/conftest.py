from fractions import Fraction

import pytest
from hypothesis import strategies as st

from beadslide import BeadConfig, GapVector, from_gaps

F = Fraction

ACCEPTANCE_LINES = []


def cfg(mu, positions):
    return BeadConfig(F(mu), tuple(F(p) for p in positions))


small_rationals = st.builds(
    F, st.integers(min_value=0, max_value=16), st.sampled_from([1, 2, 3, 4, 8])
)


@st.composite
def configs(draw, min_beads=1, max_beads=6, mu=None):
    n = draw(st.integers(min_value=min_beads, max_value=max_beads))
    base = draw(st.builds(F, st.integers(-4, 4), st.sampled_from([1, 2]))) if mu is None else F(mu)
    g = [draw(small_rationals)]
    for _ in range(n - 1):
        g.append(g[-1] + draw(small_rationals))
    return from_gaps(GapVector(base, tuple(g)))


@st.composite
def ordered_pairs(draw, min_beads=1, max_beads=6):
    """(A, B) with A <= B: B random, A = B pulled toward mu by a factor, then mixed."""
    b = draw(configs(min_beads, max_beads))
    t = draw(st.builds(F, st.integers(0, 8), st.just(8)))
    shrunk = [b.mu + t * (p - b.mu) for p in b.positions]
    if draw(st.booleans()):
        shrunk[-1] = b.positions[-1]
    return BeadConfig(b.mu, tuple(shrunk)), b


def record_acceptance(number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def example_pair():
    return cfg(0, [F(1, 2), 2, 4]), cfg(0, [1, 3, 6])
