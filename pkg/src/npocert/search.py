"""Frontier search certifying NPO(k).

Level ``n`` of the frontier holds one canonical representative of every
``n``-vertex graph with fewer than ``k`` nonpositive adjacency eigenvalues
(optionally only those containing a fixed pattern as a subgraph).  Level
``n + 1`` is obtained by adding a vertex to every member in every possible
way.  Adding a vertex never lowers the nonpositive count, so every graph that
could still qualify at level ``n + 1`` has all its ``n``-vertex induced
subgraphs in level ``n`` and is therefore generated.  The first empty level is
NPO(k).
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .canon import canonical_form, canonical_graph
from .constructions import h_seed, w_graph
from .graph import Graph, GraphError, add_vertex, contains_subgraph
from .graph6 import decode_graph6, encode_graph6
from .linalg import Inertia, exact_inertia, fraction_free_gauss_jordan

log = logging.getLogger(__name__)

CERTIFICATE_VERSION = 1


class SearchError(RuntimeError):
    pass


class CacheCorruptionError(SearchError):
    pass


class CapExceededError(SearchError):
    pass


# --------------------------------------------------------------------------
# Extension inertia
# --------------------------------------------------------------------------


class ExtensionInertia:
    """Exact inertia of every one-vertex extension of a fixed graph.

    For ``A`` the adjacency matrix and ``b`` the new vertex's neighbourhood,
    the extension is ``[[A, b], [b^T, 0]]``.  If ``b`` is outside the column
    space of ``A`` the extension gains one positive and one negative
    eigenvalue and loses one zero eigenvalue.  Otherwise ``b = A y`` and the
    congruence ``[[I, -y], [0, 1]]`` splits off ``-y^T A y = -b_S^T A_SS^-1 b_S``
    where ``S`` indexes a basis of the row space (``A_SS`` is then
    invertible).  Everything is evaluated with integers.
    """

    def __init__(self, g: Graph):
        self.graph = g
        self.n = g.n
        rows = g.matrix()
        self.inertia = exact_inertia(g)
        red, pivots, d = fraction_free_gauss_jordan(rows)
        free = [c for c in range(g.n) if c not in pivots]
        kernel = []
        for f in free:
            v = [0] * g.n
            v[f] = d
            for r, p in enumerate(pivots):
                v[p] = -red[r][f]
            kernel.append(v)
        self.kernel = kernel
        self.support = pivots
        if pivots:
            r = len(pivots)
            aug = [[rows[i][j] for j in pivots] + [int(t == s) for t in range(r)]
                   for s, i in enumerate(pivots)]
            red, piv2, det = fraction_free_gauss_jordan(aug)
            if piv2 != list(range(r)):
                raise SearchError("row-basis principal submatrix is singular")
            # A_SS^-1 = form / det
            sgn = 1 if det > 0 else -1
            self.form = [[sgn * x for x in row[r:]] for row in red]
        else:
            self.form = []

    def schur_signs(self, masks: np.ndarray) -> np.ndarray:
        """Per mask: 2 if ``b`` leaves the column space, else the sign of ``-b^T A^+ b``."""
        n = self.n
        bits = ((masks[:, None].astype(np.int64) >> np.arange(n, dtype=np.int64)) & 1)
        out = np.full(len(masks), 2, dtype=np.int64)
        if len(self.kernel):
            kern = np.array(self.kernel, dtype=object)
            kern = kern.astype(np.int64) if max(abs(int(x)) for x in kern.flat) < 2**40 else kern
            inside = ~np.any(bits @ kern.T, axis=1)
        else:
            inside = np.ones(len(masks), dtype=bool)
        if not self.support:
            out[inside] = 0
            return out
        q = np.array(self.form, dtype=object)
        big = max(abs(int(x)) for x in q.flat) * len(self.support) ** 2
        dtype = np.int64 if big < 2**62 else object
        q = q.astype(dtype)
        bs = bits[inside][:, self.support].astype(dtype)
        val = np.einsum("si,ij,sj->s", bs, q, bs) if dtype is np.int64 else np.array(
            [int(row @ q @ row) for row in bs], dtype=object
        )
        out[inside] = -np.sign(np.asarray(val, dtype=float)).astype(np.int64)
        return out

    def extension_inertia(self, mask: int) -> Inertia:
        sign = int(self.schur_signs(np.array([mask], dtype=np.int64))[0])
        p, m, z = self.inertia
        if sign == 2:
            return Inertia(p + 1, m + 1, z - 1)
        return Inertia(p + (sign > 0), m + (sign < 0), z + (sign == 0))

    def surviving_masks(self, k: int) -> np.ndarray:
        """Neighbourhood masks whose extension keeps the nonpositive count below ``k``."""
        npc = self.inertia.nonpositive
        masks = np.arange(1 << self.n, dtype=np.int64)
        if npc >= k:
            return masks[:0]
        if npc <= k - 2:
            # a new vertex raises the count by at most one
            return masks
        signs = self.schur_signs(masks)
        return masks[(signs == 2) | (signs > 0)]


# --------------------------------------------------------------------------
# Frontier bookkeeping
# --------------------------------------------------------------------------


@dataclass
class Frontier:
    k: int
    level: int
    members: dict[bytes, Graph] = field(default_factory=dict)
    pattern: Graph | None = None

    def sorted_members(self) -> list[Graph]:
        return [self.members[key] for key in sorted(self.members)]

    def __len__(self) -> int:
        return len(self.members)


@dataclass
class NpoCertificate:
    k: int
    value: int | None
    witness: Graph | None
    level_counts: list[int | None]
    restricted: bool = False
    pattern: Graph | None = None
    complete: bool = True

    def to_json(self) -> dict:
        return {
            "version": CERTIFICATE_VERSION,
            "k": self.k,
            "value": self.value,
            "complete": self.complete,
            "witness_graph6": encode_graph6(self.witness) if self.witness else None,
            "level_counts": list(self.level_counts),
            "restricted": self.restricted,
            "pattern_graph6": encode_graph6(self.pattern) if self.pattern else None,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "NpoCertificate":
        w, p = doc.get("witness_graph6"), doc.get("pattern_graph6")
        return cls(
            k=doc["k"],
            value=doc["value"],
            witness=decode_graph6(w) if w else None,
            level_counts=list(doc["level_counts"]),
            restricted=doc["restricted"],
            pattern=decode_graph6(p) if p else None,
            complete=doc.get("complete", True),
        )


def _extend_member(args: tuple[str, int]) -> list[tuple[bytes, str]]:
    g6, k = args
    g = decode_graph6(g6)
    out = {}
    for mask in extend_survivors(g, k):
        h = add_vertex(g, int(mask))
        c = canonical_graph(h)
        key = encode_graph6(c).encode("ascii")
        out.setdefault(key, encode_graph6(c))
    return list(out.items())


def extend_survivors(g: Graph, k: int) -> np.ndarray:
    return ExtensionInertia(g).surviving_masks(k)


class FrontierCache:
    """Flat-file cache: one graph6 file per level plus a sha256 sidecar."""

    def __init__(self, root: str | os.PathLike, k: int, pattern: Graph | None = None):
        self.root = Path(root)
        if pattern is not None:
            tag = hashlib.sha1(encode_graph6(pattern).encode("ascii")).hexdigest()[:12]
            self.root = self.root / f"restricted-{tag}"
        self.k = k
        self.root.mkdir(parents=True, exist_ok=True)

    def path(self, level: int) -> Path:
        return self.root / f"frontier_k{self.k}_n{level}.g6"

    def _atomic_write(self, target: Path, text: str) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=target.name, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(text)
        os.replace(tmp, target)

    def write(self, frontier: Frontier) -> Path:
        text = "".join(encode_graph6(g) + "\n" for g in frontier.sorted_members())
        target = self.path(frontier.level)
        self._atomic_write(target, text)
        digest = hashlib.sha256(text.encode("ascii")).hexdigest()
        self._atomic_write(target.with_suffix(".g6.sha256"), digest + "\n")
        return target

    def levels(self) -> list[int]:
        out = []
        for p in self.root.glob(f"frontier_k{self.k}_n*.g6"):
            try:
                out.append(int(p.stem.split("_n")[-1]))
            except ValueError:
                continue
        return sorted(out)

    def read(self, level: int, pattern: Graph | None = None) -> Frontier:
        target = self.path(level)
        text = target.read_text(encoding="ascii")
        side = target.with_suffix(".g6.sha256")
        if not side.exists():
            raise CacheCorruptionError(f"{target} has no checksum file")
        if hashlib.sha256(text.encode("ascii")).hexdigest() != side.read_text().strip():
            raise CacheCorruptionError(f"checksum mismatch for {target}")
        members = {}
        for line in text.splitlines():
            if line.strip():
                g = decode_graph6(line)
                members[canonical_form(g)] = g
        return Frontier(self.k, level, members, pattern)


# --------------------------------------------------------------------------
# Search
# --------------------------------------------------------------------------


def _seed(graphs: Iterable[Graph], k: int, pattern: Graph | None) -> Frontier:
    members: dict[bytes, Graph] = {}
    level = None
    for g in graphs:
        if level is None:
            level = g.n
        elif g.n != level:
            raise SearchError("seed graphs must all have the same order")
        if exact_inertia(g).nonpositive >= k:
            continue
        if pattern is not None and not contains_subgraph(g, pattern):
            continue
        c = canonical_graph(g)
        members.setdefault(encode_graph6(c).encode("ascii"), c)
    if level is None:
        raise SearchError("empty seed collection")
    return Frontier(k, level, members, pattern)


def extend_frontier(frontier: Frontier, workers: int = 1) -> Frontier:
    if frontier.level >= 64:
        raise CapExceededError("cannot extend past 64 vertices")
    jobs = [(encode_graph6(g), frontier.k) for g in frontier.sorted_members()]
    merged: dict[bytes, str] = {}
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_extend_member, jobs, chunksize=max(1, len(jobs) // (4 * workers))):
                merged.update(part)
    else:
        for job in jobs:
            merged.update(_extend_member(job))
    members = {key: decode_graph6(merged[key]) for key in sorted(merged)}
    return Frontier(frontier.k, frontier.level + 1, members, frontier.pattern)


def _witness(frontier: Frontier) -> Graph | None:
    for g in frontier.sorted_members():
        if exact_inertia(g).nonpositive == frontier.k - 1:
            return g
    return None


def frontier_search(
    k: int,
    max_level: int = 64,
    pattern: Graph | None = None,
    seed_frontier: Iterable[Graph] | None = None,
    cache_dir: str | os.PathLike | None = None,
    resume: bool = False,
    workers: int = 1,
    on_level: Callable[[Frontier, float], None] | None = None,
) -> tuple[NpoCertificate, Frontier]:
    """Grow the frontier level by level until it empties or ``max_level`` is reached.

    Returns the certificate (``complete=False`` when truncated) and the last
    frontier computed.  With ``cache_dir`` every level is persisted; with
    ``resume`` the highest cached level is verified and used as the start.
    """
    if k < 1:
        raise SearchError("k must be at least 1")
    if max_level > 64:
        raise CapExceededError("max_level cannot exceed 64")
    cache = FrontierCache(cache_dir, k, pattern) if cache_dir is not None else None
    counts: list[int | None] = [None]
    frontier: Frontier | None = None
    prev: Frontier | None = None
    if resume and cache is not None and cache.levels():
        levels = cache.levels()
        top = levels[-1]
        frontier = cache.read(top, pattern)
        if top - 1 in levels:
            prev = cache.read(top - 1, pattern)
        log.info("resuming k=%d from cached level %d (%d members)", k, top, len(frontier))
        counts = [None] * (top + 1)
        for lv in levels:
            counts[lv] = len(cache.read(lv, pattern)) if lv != top else len(frontier)
    else:
        seeds = list(seed_frontier) if seed_frontier is not None else [Graph(1, (0,))]
        frontier = _seed(seeds, k, pattern)
        counts = [None] * frontier.level + [len(frontier)]
        if cache is not None:
            cache.write(frontier)
        if on_level:
            on_level(frontier, 0.0)
    while len(frontier) and frontier.level < max_level:
        t0 = time.perf_counter()
        prev, frontier = frontier, extend_frontier(frontier, workers)
        elapsed = time.perf_counter() - t0
        counts.append(len(frontier))
        log.info("k=%d level %d: %d members (%.1fs)", k, frontier.level, len(frontier), elapsed)
        if cache is not None:
            cache.write(frontier)
        if on_level:
            on_level(frontier, elapsed)
    restricted = pattern is not None
    if len(frontier):
        return NpoCertificate(k, None, None, counts, restricted, pattern, complete=False), frontier
    witness = _witness(prev) if prev is not None else None
    return NpoCertificate(k, frontier.level, witness, counts, restricted, pattern), frontier


# --------------------------------------------------------------------------
# Enumeration, verification, bounds
# --------------------------------------------------------------------------


def enumerate_levels(n: int) -> Iterator[list[Graph]]:
    """Canonical representatives of all graphs on 1..n vertices, level by level."""
    level = {canonical_form(Graph(1, (0,))): Graph(1, (0,))}
    yield list(level.values())
    for m in range(1, n):
        nxt: dict[bytes, Graph] = {}
        for key in sorted(level):
            g = level[key]
            for mask in range(1 << m):
                c = canonical_graph(add_vertex(g, mask))
                nxt.setdefault(encode_graph6(c).encode("ascii"), c)
        level = nxt
        yield [level[key] for key in sorted(level)]


def enumerate_all(n: int) -> list[Graph]:
    """All graphs on ``n`` vertices up to isomorphism (``n <= 8``)."""
    if not 1 <= n <= 8:
        raise SearchError("enumerate_all supports 1 <= n <= 8")
    *_, last = enumerate_levels(n)
    return last


def restricted_seeds(k: int = 5, pattern: Graph | None = None) -> list[Graph]:
    """Graphs on ``pattern.n`` vertices with fewer than ``k`` nonpositive eigenvalues
    that contain ``pattern`` as a subgraph."""
    pattern = pattern or h_seed()
    return _seed(enumerate_all(pattern.n), k, pattern).sorted_members()


@dataclass(frozen=True)
class BoundRow:
    k: int
    lower: int
    upper: int | None
    provenance: str

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper


_EXACT = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16}


def triangular(k: int) -> int:
    return k * (k + 1) // 2


def known_bounds(max_k: int = 10) -> list[BoundRow]:
    rows = [
        BoundRow(1, 1, 1, "exact: a 1x1 principal submatrix is zero"),
        BoundRow(2, 3, 3, "exact: R(2,3)=3 and K_2 has one nonpositive eigenvalue"),
        BoundRow(3, 1, 9, "upper: R(3,4)=9"),
        BoundRow(3, 1, 7, "upper: R(K_4-e, K_3)=7"),
        BoundRow(3, 6, 6, "exact: C_5 witness and 6-vertex argument"),
        BoundRow(4, 1, 25, "upper: R(4,5)=25"),
        BoundRow(4, 1, 19, "upper: R(K_5-e, K_4)=19"),
        BoundRow(4, 10, 10, "exact: 9-vertex witnesses and 10-vertex case analysis"),
        BoundRow(5, 1, 87, "upper: R(5,6)<=87"),
        BoundRow(5, 1, 67, "upper: R(K_6-e, K_5)<=67"),
        BoundRow(5, 16, 16, "exact: W(5) witness and H-restricted search"),
    ]
    for k in range(6, max_k + 1):
        note = "lower: W(k) has k-1 nonpositive eigenvalues on T_k vertices"
        if k == 6:
            note += "; conjectured exact value 22"
        rows.append(BoundRow(k, triangular(k) + 1, None, note))
    return rows


def best_bounds(k: int) -> BoundRow:
    rows = [r for r in known_bounds(max(k, 6)) if r.k == k]
    if not rows:
        raise SearchError(f"no bounds recorded for k={k}")
    lower = max(r.lower for r in rows)
    uppers = [r.upper for r in rows if r.upper is not None]
    upper = min(uppers) if uppers else None
    prov = next((r.provenance for r in rows if r.exact), rows[-1].provenance)
    return BoundRow(k, lower, upper, prov)


def npo_value(k: int) -> int:
    """Proven NPO(k) for k <= 5."""
    if k not in _EXACT:
        raise SearchError(f"NPO({k}) is not known exactly")
    return _EXACT[k]


def verify_value(
    k: int,
    restricted: bool | None = None,
    max_level: int = 64,
    cache_dir: str | os.PathLike | None = None,
    workers: int = 1,
) -> NpoCertificate:
    """Run the frontier search for ``k`` and check it against the known value.

    ``k = 5`` defaults to the H-restricted search seeded at 7 vertices.
    """
    if restricted is None:
        restricted = k == 5
    if restricted:
        pattern = h_seed()
        cert, _ = frontier_search(
            k, max_level, pattern=pattern, seed_frontier=restricted_seeds(k, pattern),
            cache_dir=cache_dir, workers=workers,
        )
    else:
        cert, _ = frontier_search(k, max_level, cache_dir=cache_dir, workers=workers)
    if not cert.complete:
        return cert
    expected = npo_value(k)
    if cert.value != expected:
        raise SearchError(f"search gave NPO({k}) = {cert.value}, known value is {expected}")
    validate_certificate(cert, cache_dir)
    return cert


def validate_certificate(cert: NpoCertificate, cache_dir: str | os.PathLike | None = None) -> None:
    """Recheck a certificate.

    The witness inertia is recomputed exactly.  If the last nonempty level is
    cached, every one-vertex extension of it is re-examined by a route
    independent of the search: batched floating-point eigenvalues, with exact
    elimination for any extension that has an eigenvalue in the guard band.
    """
    if not cert.complete or cert.value is None:
        raise SearchError("certificate is incomplete")
    if cert.level_counts[cert.value] != 0:
        raise SearchError("final frontier count is not zero")
    if cert.value > 1 or cert.witness is not None:
        w = cert.witness
        if w is None or w.n != cert.value - 1:
            raise SearchError("witness has the wrong order")
        if exact_inertia(w).nonpositive != cert.k - 1:
            raise SearchError("witness nonpositive count is not k-1")
        if cert.pattern is not None and not contains_subgraph(w, cert.pattern):
            raise SearchError("witness does not contain the pattern")
    if cache_dir is not None and cert.value >= 2:
        cache = FrontierCache(cache_dir, cert.k, cert.pattern)
        if cert.value - 1 in cache.levels():
            prev = cache.read(cert.value - 1, cert.pattern)
            for g in prev.sorted_members():
                if float_extension_counts(g, cert.k).size:
                    raise SearchError("persisted level has a surviving extension")


def float_extension_counts(g: Graph, k: int, guard: float = 1e-6) -> np.ndarray:
    """Masks whose extension of ``g`` has fewer than ``k`` nonpositive eigenvalues,
    decided by floating-point spectra with exact fallback inside the guard band."""
    n = g.n
    masks = np.arange(1 << n, dtype=np.int64)
    base = np.array(g.matrix(), dtype=float)
    survivors = []
    for start in range(0, len(masks), 4096):
        chunk = masks[start : start + 4096]
        bits = ((chunk[:, None] >> np.arange(n)) & 1).astype(float)
        mats = np.zeros((len(chunk), n + 1, n + 1))
        mats[:, :n, :n] = base
        mats[:, :n, n] = bits
        mats[:, n, :n] = bits
        ev = np.linalg.eigvalsh(mats)
        unsure = np.any(np.abs(ev) <= guard, axis=1)
        npc = np.sum(ev < -guard, axis=1)
        for idx in np.nonzero(unsure)[0]:
            npc[idx] = exact_inertia(add_vertex(g, int(chunk[idx]))).nonpositive
        survivors.extend(chunk[(npc < k)].tolist())
    return np.array(survivors, dtype=np.int64)


def lower_bound_witness(k: int) -> Graph:
    if not 5 <= k <= 10:
        raise SearchError("W-graph witnesses are provided for 5 <= k <= 10")
    g = w_graph(k)
    npc = exact_inertia(g).nonpositive
    if g.n != triangular(k) or npc != k - 1:
        raise SearchError(f"W({k}) has {npc} nonpositive eigenvalues on {g.n} vertices")
    return g


def certificate_json(cert: NpoCertificate) -> str:
    return json.dumps(cert.to_json(), sort_keys=True)
