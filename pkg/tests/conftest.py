import numpy as np
import pytest
from hypothesis import strategies as st

from cmatvec import build_csr


@st.composite
def graphs(draw, max_n=24):
    n = draw(st.integers(0, max_n))
    if n == 0:
        return build_csr([], 0)
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    return build_csr(draw(st.lists(pairs, max_size=4 * n)), n)


@st.composite
def copyish_graphs(draw, max_n=24):
    """Graphs whose rows are small edits of nearby rows."""
    n = draw(st.integers(1, max_n))
    rows = [set(draw(st.lists(st.integers(0, n - 1), max_size=8)))]
    for _ in range(1, n):
        back = draw(st.integers(1, min(4, len(rows))))
        row = set(rows[-back])
        row ^= set(draw(st.lists(st.integers(0, n - 1), max_size=3)))
        rows.append(row)
    return build_csr([(i, j) for i, r in enumerate(rows) for j in r], n)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def dense_rows(g):
    return [set(g.row(i).tolist()) for i in range(g.n)]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
