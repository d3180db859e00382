import pytest
from hypothesis import strategies as st

from ehfcover import detectors as det
from ehfcover.corpus import load_corpus
from ehfcover.graph import Graph


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def in_class(corpus):
    """(graph6, Graph) pairs with no even hole and no sector wheel."""
    return [(s, g) for s, g in corpus
            if det.find_hole(g, "even") is None and det.find_wheel(g, "sector") is None]


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, chosen) if keep])
