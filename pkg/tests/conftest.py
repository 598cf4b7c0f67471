from fractions import Fraction

import pytest

from skewrank.graph import Graph, OrientedGraph


def fraction_rank(rows):
    """Gauss-Jordan over the rationals; the reference the Bareiss rank is checked against."""
    a = [[Fraction(x) for x in r] for r in rows]
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def cyclic(q):
    """C_q with every arc i -> i+1."""
    return OrientedGraph.from_arcs(q, [(i, (i + 1) % q) for i in range(q)])


def with_reversed(og, *arcs):
    flip = set(arcs)
    return OrientedGraph.from_arcs(og.n, [(v, u) if (u, v) in flip else (u, v) for u, v in og.arcs])


@pytest.fixture
def diamond():
    # K4 minus the edge 2-3
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
