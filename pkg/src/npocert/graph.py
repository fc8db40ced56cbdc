"""Simple undirected graphs stored as adjacency bitset rows.

Row ``i`` of a :class:`Graph` is an ``int`` whose bit ``j`` is set when
vertices ``i`` and ``j`` are adjacent.  Graphs are immutable values; every
operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range graph operations."""


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise GraphError("row count does not match vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {i} has bits at index >= n")
            if (row >> i) & 1:
                raise GraphError(f"loop at vertex {i}")
            for j in _bits(row):
                if not (self.rows[j] >> i) & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...]) -> "Graph":
        # skips validation; callers guarantee symmetric hollow rows
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "Graph":
        n = len(matrix)
        rows = []
        for i, line in enumerate(matrix):
            if len(line) != n:
                raise GraphError("adjacency matrix is not square")
            rows.append(sum(1 << j for j, x in enumerate(line) if x))
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.rows):
            for j in _bits(row >> (i + 1)):
                yield i, i + 1 + j

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def matrix(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.n)] for row in self.rows]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def degrees(g: Graph) -> list[int]:
    """Vertex degrees sorted non-increasing."""
    return sorted((r.bit_count() for r in g.rows), reverse=True)


def min_degree(g: Graph) -> int:
    return min(r.bit_count() for r in g.rows)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(g.rows)))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Restrict ``g`` to ``vertices``; new vertex ``t`` is ``vertices[t]``."""
    vertices = list(vertices)
    if not vertices:
        raise GraphError("induced subgraph needs at least one vertex")
    if len(set(vertices)) != len(vertices):
        raise GraphError("repeated vertex in subset")
    for v in vertices:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    rows = []
    for v in vertices:
        row = g.rows[v]
        rows.append(sum(1 << t for t, u in enumerate(vertices) if (row >> u) & 1))
    return Graph(len(vertices), tuple(rows))


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel so that old vertex ``v`` becomes ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("not a permutation of the vertex set")
    rows = [0] * g.n
    for v, row in enumerate(g.rows):
        rows[perm[v]] = sum(1 << perm[u] for u in _bits(row))
    return Graph(g.n, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if g.n + h.n > MAX_VERTICES:
        raise GraphError(f"union would have {g.n + h.n} > {MAX_VERTICES} vertices")
    return Graph(g.n + h.n, g.rows + tuple(r << g.n for r in h.rows))


def add_vertex(g: Graph, neighbors: Iterable[int] | int) -> Graph:
    """Append vertex ``g.n`` joined to ``neighbors`` (an iterable or a bitmask)."""
    if g.n >= MAX_VERTICES:
        raise GraphError(f"cannot grow past {MAX_VERTICES} vertices")
    if isinstance(neighbors, int):
        mask = neighbors
    else:
        mask = 0
        for v in neighbors:
            mask |= 1 << v
    if mask >> g.n:
        raise GraphError("neighbor index out of range")
    new = g.n
    rows = tuple(r | (((mask >> i) & 1) << new) for i, r in enumerate(g.rows))
    return Graph(g.n + 1, rows + (mask,))


def remove_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


def contains_subgraph(g: Graph, pattern: Graph) -> bool:
    """True iff ``pattern`` embeds into ``g`` as a (not necessarily induced) subgraph."""
    if pattern.n > g.n:
        return False
    order = sorted(range(pattern.n), key=lambda v: -pattern.degree(v))
    gdeg = [r.bit_count() for r in g.rows]
    pdeg = [r.bit_count() for r in pattern.rows]
    # earlier-placed pattern neighbours of each vertex in the placement order
    pos = {v: t for t, v in enumerate(order)}
    back = [[u for u in pattern.neighbors(v) if pos[u] < pos[v]] for v in order]
    image = [0] * pattern.n

    def place(t: int, used: int) -> bool:
        if t == pattern.n:
            return True
        v = order[t]
        cand = ((1 << g.n) - 1) & ~used
        for u in back[t]:
            cand &= g.rows[image[u]]
        for w in _bits(cand):
            if gdeg[w] < pdeg[v]:
                continue
            image[v] = w
            if place(t + 1, used | (1 << w)):
                return True
        return False

    return place(0, 0)


def independence_number(g: Graph) -> int:
    return max((m.bit_count() for m in maximal_independent_sets(g)), default=0)


def maximal_independent_sets(g: Graph) -> list[int]:
    """All maximal independent sets as bitmasks (Bron-Kerbosch on the complement)."""
    comp = complement(g).rows
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot = next(_bits(p | x))
        for v in _bits(p & ~comp[pivot]):
            expand(r | (1 << v), p & comp[v], x & comp[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, (1 << g.n) - 1, 0)
    return sorted(out)


def bitmask_to_list(mask: int) -> list[int]:
    return list(_bits(mask))
