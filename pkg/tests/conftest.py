import random

import pytest

from npocert.graph import Graph
from npocert.search import enumerate_levels, frontier_search


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    if p is None:
        p = rng.random()
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i) if rng.random() < p])


@pytest.fixture(scope="session")
def levels7():
    """Canonical representatives of all graphs on 1..7 vertices, indexed by n."""
    return [None] + list(enumerate_levels(7))


@pytest.fixture(scope="session")
def search_k3():
    return frontier_search(3)


@pytest.fixture(scope="session")
def search_k4():
    return frontier_search(4)


def brute_force_classes(n: int) -> list[list[int]]:
    """Split all labeled n-vertex graphs (edge bitmasks) into orbits under all n! relabelings."""
    from itertools import permutations

    pairs = [(i, j) for i in range(n) for j in range(i)]
    index = {p: b for b, p in enumerate(pairs)}
    images = []
    for perm in permutations(range(n)):
        images.append([index[max(perm[i], perm[j]), min(perm[i], perm[j])] for i, j in pairs])
    seen = bytearray(1 << len(pairs))
    classes = []
    for mask in range(1 << len(pairs)):
        if seen[mask]:
            continue
        bits = [b for b in range(len(pairs)) if mask >> b & 1]
        orbit = {sum(1 << img[b] for b in bits) for img in images}
        for m in orbit:
            seen[m] = 1
        classes.append(sorted(orbit))
    return classes


def mask_graph(n: int, mask: int) -> Graph:
    pairs = [(i, j) for i in range(n) for j in range(i)]
    return Graph.from_edges(n, [e for b, e in enumerate(pairs) if mask >> b & 1])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
