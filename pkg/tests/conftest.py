import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coverreg.hypergraph import (
    Hypergraph,
    complete_bipartite,
    cycle,
    interval_hypergraph,
    path,
)


def tu_corpus() -> dict:
    """The unimodular members of the shipped corpus, by name."""
    return {
        "single_edge": Hypergraph(2, [[1, 2]]),
        "path3": path(3),
        "path4": path(4),
        "cycle4": cycle(4),
        "cycle6": cycle(6),
        "k22": complete_bipartite(2, 2),
        "k23": complete_bipartite(2, 3),
        "interval3": interval_hypergraph(4, [(1, 3), (2, 4)]),
    }


def negative_controls() -> dict:
    return {"triangle": cycle(3), "cycle5": cycle(5)}


@pytest.fixture(scope="session")
def corpus():
    return tu_corpus()


@pytest.fixture(scope="session")
def controls():
    return negative_controls()
