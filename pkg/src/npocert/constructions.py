"""Generators for the named and composite graphs used by the search and checks."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graph import (
    Graph,
    GraphError,
    MAX_VERTICES,
    add_vertex,
    degrees,
    disjoint_union,
    induced_subgraph,
    maximal_independent_sets,
)

G4_SPECTRUM = (
    -3.3028, -3.3028, -3.3028, -3.3028, 0.3028, 0.3028, 0.3028, 0.3028,
    0.6277, 1, 1, 1, 1, 1, 6.3723,
)
G5_SPECTRUM = (
    -3.3028, -3.3028, -3.3028, -3.3028, 0.3028, 0.3028, 0.3028, 0.3028,
    0.3542, 1, 1, 1, 1, 2, 5.6458,
)
G6_SPECTRUM = (
    -4.2361, -4.2361, -4.2361, -4.2361, -3.7346, 0.2361, 0.2361, 0.2361,
    0.2361, 0.5853, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 9.1493,
)
G2_SPECTRUM = (-2.4142, -2.4142, -2.0000, 0.4142, 0.4142, 0.5858, 1.0000, 1.0000, 3.4142)
G3_SPECTRUM = (-2.4142, -2.4142, -2.1413, 0.4142, 0.4142, 0.5151, 1.0000, 1.0000, 3.6262)


class ConstructionError(RuntimeError):
    pass


def _check_size(n: int) -> None:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"size {n} outside 1..{MAX_VERTICES}")


def complete(n: int) -> Graph:
    _check_size(n)
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def empty(n: int) -> Graph:
    _check_size(n)
    return Graph(n, (0,) * n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    _check_size(n)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    _check_size(n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("both sides need at least one vertex")
    _check_size(a + b)
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(n: int) -> Graph:
    """K_{1,n-1} with centre 0."""
    if n < 2:
        raise GraphError("a star needs at least 2 vertices")
    return complete_bipartite(1, n - 1)


def kneser_labels(k: int, l: int) -> list[tuple[int, ...]]:
    """l-subsets of {1..k} in lexicographic order; vertex j carries label j."""
    return list(combinations(range(1, k + 1), l))


def kneser(k: int, l: int) -> Graph:
    labels = kneser_labels(k, l)
    _check_size(len(labels))
    sets = [frozenset(s) for s in labels]
    return Graph.from_edges(
        len(sets),
        [(i, j) for i in range(len(sets)) for j in range(i) if not sets[i] & sets[j]],
    )


def petersen() -> Graph:
    return kneser(5, 2)


def w_graph(k: int) -> Graph:
    """K_k on vertices 0..k-1 joined to Kneser(k, 2) on vertices k.. by membership.

    Clique vertex ``i`` stands for element ``i + 1`` and is adjacent to every
    Kneser vertex whose pair contains that element.
    """
    if k < 4:
        raise GraphError("W-graphs are defined for k >= 4")
    labels = kneser_labels(k, 2)
    n = k + len(labels)
    _check_size(n)
    edges = [(i, j) for i in range(k) for j in range(i)]
    for j, (a, b) in enumerate(labels):
        edges += [(a - 1, k + j), (b - 1, k + j)]
        for t, (c, d) in enumerate(labels[:j]):
            if not {a, b} & {c, d}:
                edges.append((k + j, k + t))
    return Graph.from_edges(n, edges)


def g4() -> Graph:
    return w_graph(5)


def gf9_elements() -> list[tuple[int, int]]:
    """GF(9) as F_3[x]/(x^2 + 1); element ``(a, b)`` is ``a + b x``, index ``3a + b``."""
    return [(a, b) for a in range(3) for b in range(3)]


def _gf9_mul(u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
    a, b = u
    c, d = v
    # x^2 = -1
    return ((a * c - b * d) % 3, (a * d + b * c) % 3)


def paley9() -> Graph:
    elems = gf9_elements()
    squares = {_gf9_mul(z, z) for z in elems if z != (0, 0)}
    edges = []
    for i, u in enumerate(elems):
        for j, v in enumerate(elems[:i]):
            if ((u[0] - v[0]) % 3, (u[1] - v[1]) % 3) in squares:
                edges.append((i, j))
    return Graph.from_edges(9, edges)


def _disjoint_triples(sets: Sequence[int]) -> tuple[list[int], list[int]]:
    for fam in combinations(range(len(sets)), 3):
        a, b, c = (sets[i] for i in fam)
        if a & b or a & c or b & c:
            continue
        rest = [sets[i] for i in range(len(sets)) if i not in fam]
        x, y, z = rest
        if not (x & y or x & z or y & z):
            return [sets[i] for i in fam], rest
    raise ConstructionError("maximum independent sets of P(9) do not split into two parallel classes")


def g5() -> Graph:
    """P(9) plus two triangles, each triangle vertex joined to one independent 3-set.

    The six maximum independent sets of P(9) fall into two classes of three
    pairwise disjoint sets; each triangle takes one class.
    """
    p9 = paley9()
    sets = [m for m in maximal_independent_sets(p9) if m.bit_count() == 3]
    if len(sets) != 6:
        raise ConstructionError(f"expected 6 independent 3-sets in P(9), found {len(sets)}")
    first, second = _disjoint_triples(sets)
    g = disjoint_union(disjoint_union(p9, complete(3)), complete(3))
    rows = list(g.rows)
    for base, family in ((9, first), (12, second)):
        for t, mask in enumerate(family):
            v = base + t
            rows[v] |= mask
            for u in range(9):
                if (mask >> u) & 1:
                    rows[u] |= 1 << v
    return Graph(15, tuple(rows))


def clebsch() -> Graph:
    """Folded 5-cube: 4-bit words, adjacent when they differ in 1 or all 4 bits."""
    return Graph.from_edges(
        16,
        [(u, v) for u in range(16) for v in range(u) if (u ^ v).bit_count() in (1, 4)],
    )


def matching_sets(g: Graph, size: int) -> list[tuple[int, ...]]:
    """Vertex subsets of ``g`` of the given size inducing a perfect matching."""
    out = []
    for s in combinations(range(g.n), size):
        h = induced_subgraph(g, s)
        if all(r.bit_count() == 1 for r in h.rows):
            out.append(s)
    return out


def join_clique(base: Graph, neighborhoods: Sequence[Iterable[int]]) -> Graph:
    """Prepend a clique whose vertex ``i`` is joined to ``neighborhoods[i]`` of ``base``."""
    k = len(neighborhoods)
    _check_size(k + base.n)
    edges = [(i, j) for i in range(k) for j in range(i)]
    edges += [(k + u, k + v) for u, v in base.edges()]
    for i, nb in enumerate(neighborhoods):
        edges += [(i, k + v) for v in nb]
    return Graph.from_edges(k + base.n, edges)


def spectrum_matches(values: Sequence[float], reference: Sequence[float], tol: float = 1e-3) -> bool:
    if len(values) != len(reference):
        return False
    return bool(np.max(np.abs(np.sort(values) - np.sort(reference))) <= tol)


def find_g6(tol: float = 1e-3) -> Graph:
    """First K_5 + Clebsch graph (each clique vertex joined to a 4K_2-inducing 8-set)
    whose exact nonpositive count is 5 and whose spectrum matches ``G6_SPECTRUM``.

    Candidate 8-sets are taken in lexicographic order and assignments as
    lexicographic 5-combinations of them.
    """
    from .linalg import float_spectrum, nonpositive_count

    cl = clebsch()
    sets = matching_sets(cl, 8)
    for combo in combinations(sets, 5):
        g = join_clique(cl, combo)
        quick = np.linalg.eigvalsh(np.array(g.matrix(), dtype=float))
        if not spectrum_matches(quick, G6_SPECTRUM, 10 * tol):
            continue
        if nonpositive_count(g) == 5 and spectrum_matches(float_spectrum(g).values, G6_SPECTRUM, tol):
            return g
    raise ConstructionError(f"no G6 candidate among {len(sets)} matching sets")


def h_seed() -> Graph:
    """K_{1,6} (centre 0) with leaf 1 also joined to leaves 2 and 3."""
    return Graph.from_edges(7, [(0, i) for i in range(1, 7)] + [(1, 2), (1, 3)])


def attach_pendants(g: Graph, attachments: Iterable[tuple[int, int]]) -> Graph:
    attachments = list(attachments)
    total = g.n + sum(c for _, c in attachments)
    if total > MAX_VERTICES:
        raise GraphError(f"pendant attachment would give {total} > {MAX_VERTICES} vertices")
    for v, count in attachments:
        if not 0 <= v < g.n or count < 0:
            raise GraphError(f"bad attachment ({v}, {count})")
        for _ in range(count):
            g = add_vertex(g, [v])
    return g


def w5_pendants() -> Graph:
    """W(5) with three pendant vertices on each Kneser(5, 2) vertex (45 vertices)."""
    return attach_pendants(w_graph(5), [(5 + j, 3) for j in range(10)])


NAMED = {
    "petersen": petersen,
    "paley9": paley9,
    "clebsch": clebsch,
    "g4": g4,
    "g5": g5,
    "g6": find_g6,
    "h_seed": h_seed,
    "w5_pendants": w5_pendants,
}

PARAMETRIC = {
    "complete": (complete, 1),
    "empty": (empty, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "star": (star, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "kneser": (kneser, 2),
    "w_graph": (w_graph, 1),
}


def construct(name: str, params: Sequence[int] = ()) -> Graph:
    if name in NAMED:
        if params:
            raise GraphError(f"{name} takes no parameters")
        return NAMED[name]()
    if name in PARAMETRIC:
        fn, arity = PARAMETRIC[name]
        if len(params) != arity:
            raise GraphError(f"{name} takes {arity} integer parameter(s)")
        return fn(*params)
    raise GraphError(f"unknown construction {name!r}")


__all__ = [
    "attach_pendants", "clebsch", "complete", "complete_bipartite", "construct", "cycle",
    "degrees", "empty", "find_g6", "g4", "g5", "h_seed", "join_clique", "kneser",
    "kneser_labels", "matching_sets", "paley9", "path", "petersen", "star", "w5_pendants",
    "w_graph",
]
