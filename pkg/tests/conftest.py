"""Shared fixtures: named small graphs and the verification corpus."""

import pytest

from regcount import GenSpec, build_graph, build_kdd, generate

CORPUS_GRID = ((4, 2), (8, 2), (12, 2), (6, 3), (12, 3))


@pytest.fixture(scope="session")
def c4():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture(scope="session")
def c8():
    return build_graph(8, [(i, (i + 1) % 8) for i in range(8)])


@pytest.fixture(scope="session")
def k33():
    return build_kdd(3)


@pytest.fixture(scope="session")
def prism():
    return build_graph(
        6,
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
    )


@pytest.fixture(scope="session")
def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


@pytest.fixture(scope="session")
def corpus():
    """One list of graphs per grid pair, generated once per test session."""
    return {
        (n, d): list(generate(GenSpec(n, d))) for n, d in CORPUS_GRID
    }


@pytest.fixture(scope="session")
def small_corpus():
    """Every d-regular isomorphism class on at most 10 vertices, as
    (n, d, census_index, graph) tuples."""
    out = []
    for n in range(1, 11):
        for d in range(0, n):
            if (n * d) % 2:
                continue
            for idx, g in enumerate(generate(GenSpec(n, d))):
                out.append((n, d, idx, g))
    return out
