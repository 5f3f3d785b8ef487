from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ramlift.corpus import load_corpus
from ramlift.graph import OrientedMultigraph
from ramlift.perm import Permutation
from ramlift.poly import RatPoly


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@st.composite
def connected_multigraphs(draw, max_vertices=4, max_edges=4, loops=True):
    n = draw(st.integers(1 if loops else 2, max_vertices))
    # a random spanning tree first, then extra edges
    edges = []
    for v in range(1, n):
        edges.append((draw(st.integers(0, v - 1)), v))
    extra = draw(st.integers(0, max(0, max_edges - len(edges))))
    for _ in range(extra):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1))
        if u == v and not loops:
            continue
        edges.append((u, v))
    if not edges:
        edges.append((0, 0))
    flips = draw(st.lists(st.booleans(), min_size=len(edges), max_size=len(edges)))
    edges = [(t, h) if f else (h, t) for (h, t), f in zip(edges, flips)]
    return OrientedMultigraph(n, tuple(edges))


def permutations_of(r):
    return st.permutations(list(range(r))).map(lambda p: Permutation(tuple(p)))


small_rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def real_rooted_polys(draw, min_degree=1, max_degree=5):
    roots = draw(st.lists(small_rationals, min_size=min_degree, max_size=max_degree))
    return RatPoly.from_roots(roots)


def poly_from_ints(*coeffs_high_first):
    return RatPoly([Fraction(c) for c in reversed(coeffs_high_first)])


ACCEPTANCE_LINES = pytest.StashKey[list]()


@pytest.fixture
def report_line(request):
    """Record a line to be printed in the terminal summary."""
    return request.config.stash.setdefault(ACCEPTANCE_LINES, []).append


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
