"""Canonical labeling by partition refinement and individualization.

The search tree is the usual one: refine the unit partition to an equitable
ordered partition, individualize each vertex of the first non-singleton cell,
refine again, and recurse until the partition is discrete.  Every leaf gives an
ordering of the vertices; the canonical ordering is the one whose relabeled
upper-triangle bit string (graph6 column order) is smallest.

Automorphisms found when two leaves produce the same bit string prune the
tree in two ways: children that lie in one orbit of the automorphisms fixing
the current path are explored once, and a leaf equivalent to the first or best
leaf sends the search back to where the two paths diverge.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, _bits
from .graph6 import encode_graph6

CanonicalForm = bytes


def _refine(rows: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out: list[list[int]] = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                r = rows[v]
                groups.setdefault(tuple((r & m).bit_count() for m in masks), []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                split = True
                out.extend(groups[key] for key in sorted(groups))
        if not split:
            return out
        cells = out


def _certificate(rows: Sequence[int], order: Sequence[int]) -> int:
    cert = 0
    for j in range(1, len(order)):
        rj = rows[order[j]]
        for i in range(j):
            cert = (cert << 1) | ((rj >> order[i]) & 1)
    return cert


class _Search:
    def __init__(self, g: Graph):
        self.rows = g.rows
        self.n = g.n
        self.first: tuple[list[int], list[int], int] | None = None
        self.best: tuple[list[int], list[int], int] | None = None
        self.gens: list[list[int]] = []

    def _orbit_roots(self, path: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.gens:
            if any(gamma[u] != u for u in path):
                continue
            for v, w in enumerate(gamma):
                a, b = find(v), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.n)]

    def _automorphism(self, src: Sequence[int], dst: Sequence[int]) -> None:
        gamma = [0] * self.n
        for a, b in zip(src, dst):
            gamma[a] = b
        if any(gamma[v] != v for v in range(self.n)):
            self.gens.append(gamma)

    @staticmethod
    def _divergence(p: list[int], q: list[int]) -> int:
        for t, (a, b) in enumerate(zip(p, q)):
            if a != b:
                return t
        return min(len(p), len(q))

    def _leaf(self, order: list[int], path: list[int]) -> int | None:
        cert = _certificate(self.rows, order)
        if self.first is None:
            self.first = self.best = (order, path, cert)
            return None
        f_order, f_path, f_cert = self.first
        if cert == f_cert:
            self._automorphism(f_order, order)
            return self._divergence(path, f_path)
        b_order, b_path, b_cert = self.best
        if cert < b_cert:
            self.best = (order, path, cert)
        elif cert == b_cert:
            self._automorphism(b_order, order)
            return self._divergence(path, b_path)
        return None

    def run(self, cells: list[list[int]], path: list[int]) -> int | None:
        if len(cells) == self.n:
            return self._leaf([c[0] for c in cells], path)
        t = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[t]
        depth = len(path)
        tried: list[int] = []
        for v in target:
            if tried and self.gens:
                roots = self._orbit_roots(path)
                if roots[v] in {roots[u] for u in tried}:
                    continue
            rest = [u for u in target if u != v]
            child = _refine(self.rows, cells[:t] + [[v], rest] + cells[t + 1 :])
            jump = self.run(child, path + [v])
            tried.append(v)
            if jump is not None and jump < depth:
                return jump
        return None


def canonical_order(g: Graph) -> list[int]:
    """Vertex ordering: position ``i`` of the canonical graph is vertex ``order[i]``."""
    search = _Search(g)
    search.run(_refine(g.rows, [list(range(g.n))]), [])
    assert search.best is not None
    return search.best[0]


def canonical_graph(g: Graph) -> Graph:
    order = canonical_order(g)
    inv = [0] * g.n
    for i, v in enumerate(order):
        inv[v] = i
    rows = [0] * g.n
    for v, row in enumerate(g.rows):
        rows[inv[v]] = sum(1 << inv[u] for u in _bits(row))
    return Graph._trusted(g.n, tuple(rows))


def canonical_form(g: Graph) -> CanonicalForm:
    """Isomorphism-invariant key; equal keys iff isomorphic graphs (same n)."""
    return encode_graph6(canonical_graph(g)).encode("ascii")


def brute_force_form(g: Graph) -> int:
    """Smallest certificate over all n! orderings; test oracle only."""
    from itertools import permutations

    return min(_certificate(g.rows, p) for p in permutations(range(g.n)))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical_form(g) == canonical_form(h)
