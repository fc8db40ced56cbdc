"""Exact inertia over the rationals, Schur complements and a Jacobi eigensolver."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .graph import Graph

GUARD = 1e-6


class LinalgError(ValueError):
    pass


class SingularBlockError(LinalgError):
    """The requested trailing block is singular; pick another block."""


class ConvergenceError(LinalgError):
    pass


class Inertia(NamedTuple):
    n_plus: int
    n_minus: int
    n_zero: int

    def __add__(self, other: "Inertia") -> "Inertia":  # type: ignore[override]
        return Inertia(
            self.n_plus + other.n_plus,
            self.n_minus + other.n_minus,
            self.n_zero + other.n_zero,
        )

    @property
    def nonpositive(self) -> int:
        return self.n_minus + self.n_zero

    @property
    def dimension(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero


@dataclass(frozen=True)
class ExactSymmetricMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise LinalgError("matrix is not square")
            for j in range(i):
                if row[j] != self.entries[j][i]:
                    raise LinalgError(f"matrix is not symmetric at ({i}, {j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactSymmetricMatrix":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def from_graph(cls, g: Graph) -> "ExactSymmetricMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(
            tuple(tuple(one if (r >> j) & 1 else zero for j in range(g.n)) for r in g.rows)
        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def principal(self, indices: Sequence[int]) -> "ExactSymmetricMatrix":
        return ExactSymmetricMatrix(
            tuple(tuple(self.entries[i][j] for j in indices) for i in indices)
        )

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)


def adjacency_matrix(g: Graph) -> ExactSymmetricMatrix:
    return ExactSymmetricMatrix.from_graph(g)


def exact_inertia(m: ExactSymmetricMatrix | Graph) -> Inertia:
    """Sign counts of the eigenvalues by symmetric congruence elimination.

    A nonzero diagonal entry of largest magnitude is used as a 1x1 pivot.  When
    the remaining diagonal is all zero, a nonzero off-diagonal pair gives a
    ``[[0, a], [a, 0]]`` pivot, which contributes one positive and one negative
    eigenvalue.  Rows that become identically zero count towards ``n_zero``.
    Sylvester's law of inertia makes the counts exact.
    """
    if isinstance(m, Graph):
        m = ExactSymmetricMatrix.from_graph(m)
    a = [list(row) for row in m.entries]
    active = list(range(m.n))
    plus = minus = zero = 0
    while active:
        live = [i for i in active if any(a[i][j] for j in active)]
        zero += len(active) - len(live)
        active = live
        if not active:
            break
        p = max(active, key=lambda i: abs(a[i][i]))
        d = a[p][p]
        if d:
            if d > 0:
                plus += 1
            else:
                minus += 1
            active.remove(p)
            for i in active:
                f = a[i][p] / d
                if f:
                    ai, ap = a[i], a[p]
                    for j in active:
                        if ap[j]:
                            ai[j] -= f * ap[j]
            continue
        p, q = max(
            ((i, j) for i in active for j in active if i < j),
            key=lambda ij: abs(a[ij[0]][ij[1]]),
        )
        x = a[p][q]
        plus += 1
        minus += 1
        active.remove(p)
        active.remove(q)
        # M/B with B = [[0, x], [x, 0]], B^-1 = [[0, 1/x], [1/x, 0]]
        cp = {i: a[i][p] for i in active}
        cq = {i: a[i][q] for i in active}
        for i in active:
            if not (cp[i] or cq[i]):
                continue
            for j in active:
                delta = cp[i] * cq[j] + cq[i] * cp[j]
                if delta:
                    a[i][j] -= delta / x
    return Inertia(plus, minus, zero)


def nonpositive_count(g: Graph) -> int:
    """Number of eigenvalues of A(g) that are <= 0, computed exactly."""
    return exact_inertia(g).nonpositive


def _gauss_jordan_inverse(rows: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def inverse(m: ExactSymmetricMatrix) -> ExactSymmetricMatrix:
    inv = _gauss_jordan_inverse([list(r) for r in m.entries])
    if inv is None:
        raise SingularBlockError("matrix is singular")
    return ExactSymmetricMatrix(tuple(tuple(r) for r in inv))


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def fraction_free_gauss_jordan(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int], int]:
    """Integer Gauss-Jordan elimination with exact Bareiss divisions.

    Returns ``(m, pivots, d)`` where the first ``len(pivots)`` rows of ``m``
    equal ``d`` times the reduced row echelon form.  ``d`` is the last pivot,
    which is +-det of the pivot minor.
    """
    a = [list(map(int, r)) for r in rows]
    if not a:
        return a, [], 1
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        ar = a[r]
        for i in range(nrows):
            if i == r:
                continue
            ai = a[i]
            f = ai[c]
            a[i] = [(p * x - f * y) // prev for x, y in zip(ai, ar)]
        prev = p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots, prev


def nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    a, pivots = rref(rows)
    ncols = len(rows[0]) if rows else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -a[r][f]
        basis.append(v)
    return basis


def schur_complement(m: ExactSymmetricMatrix, block: Sequence[int]) -> ExactSymmetricMatrix:
    """``M/M22 = M11 - M12 M22^-1 M21`` where ``block`` indexes ``M22``.

    The remaining indices keep their original relative order.
    """
    block = list(block)
    if len(set(block)) != len(block) or any(not 0 <= b < m.n for b in block):
        raise LinalgError("block indices must be distinct and in range")
    rest = [i for i in range(m.n) if i not in set(block)]
    m22 = [[m.entries[i][j] for j in block] for i in block]
    inv = _gauss_jordan_inverse(m22)
    if inv is None:
        raise SingularBlockError(f"block {block} is singular")
    m12 = [[m.entries[i][j] for j in block] for i in rest]
    # t = M22^-1 M21
    t = [
        [sum((inv[a][b] * m12[i][b] for b in range(len(block))), Fraction(0)) for i in range(len(rest))]
        for a in range(len(block))
    ]
    out = []
    for ii, i in enumerate(rest):
        row = []
        for jj, j in enumerate(rest):
            s = sum((m12[ii][a] * t[a][jj] for a in range(len(block))), Fraction(0))
            row.append(m.entries[i][j] - s)
        out.append(tuple(row))
    return ExactSymmetricMatrix(tuple(out))


def inertia_additivity_check(m: ExactSymmetricMatrix, block: Sequence[int]) -> bool:
    """Check ``i(M) = i(M22) + i(M/M22)``."""
    s = schur_complement(m, block)
    return exact_inertia(m) == exact_inertia(m.principal(list(block))) + exact_inertia(s)


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]
    guard: float = GUARD

    def inertia(self) -> Inertia:
        return Inertia(
            sum(v > self.guard for v in self.values),
            sum(v < -self.guard for v in self.values),
            sum(abs(v) <= self.guard for v in self.values),
        )

    @property
    def ambiguous(self) -> bool:
        """True when some value sits inside the guard band around zero."""
        return any(abs(v) <= self.guard for v in self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]


def _round_robin(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            ps.append(min(a, b))
            qs.append(max(a, b))
        rounds.append((np.array(ps), np.array(qs)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits every off-diagonal pair once, grouped by a round-robin
    schedule so that the n/2 rotations of a round act on disjoint index pairs
    and can be applied together.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise LinalgError("matrix is not square")
    if n <= 1:
        return np.diag(a).copy()
    m = n + (n % 2)
    schedule = []
    for ps, qs in _round_robin(m):
        keep = qs < n
        schedule.append((ps[keep], qs[keep]))
    limit = tol * n
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum((a - np.diag(np.diag(a))) ** 2))
        if off < limit:
            return np.sort(np.diag(a))[::-1]
        for p, q in schedule:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            th = np.where(big, 1.0, theta)
            t = np.sign(th) / (np.abs(th) + np.sqrt(th * th + 1.0))
            t[theta == 0] = 1.0
            t[big] = 0.5 / theta[big]
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
    raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def float_spectrum(m: ExactSymmetricMatrix | Graph | np.ndarray, guard: float = GUARD) -> Spectrum:
    if isinstance(m, Graph):
        arr = np.array(m.matrix(), dtype=float)
    elif isinstance(m, ExactSymmetricMatrix):
        arr = m.to_numpy()
    else:
        arr = np.asarray(m, dtype=float)
    return Spectrum(tuple(float(x) for x in jacobi_eigenvalues(arr)), guard)


def interlacing_check(
    a: ExactSymmetricMatrix | Graph, deleted_index: int, tol: float = 1e-8
) -> bool:
    """Cauchy interlacing between ``a`` and ``a`` with one row/column deleted."""
    if isinstance(a, Graph):
        a = ExactSymmetricMatrix.from_graph(a)
    if a.n < 2:
        raise LinalgError("interlacing needs n >= 2")
    keep = [i for i in range(a.n) if i != deleted_index]
    lam = float_spectrum(a).values
    mu = float_spectrum(a.principal(keep)).values
    return all(lam[i] + tol >= mu[i] >= lam[i + 1] - tol for i in range(a.n - 1))
