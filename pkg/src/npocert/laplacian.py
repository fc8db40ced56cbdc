"""Laplacian spectra and the degree lower bounds lambda_k >= d_{NPO(k)}."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .constructions import w5_pendants
from .graph import Graph, GraphError, degrees
from .graph6 import encode_graph6
from .linalg import ExactSymmetricMatrix, float_spectrum
from .search import npo_value

TOL = 1e-8


class BoundError(ValueError):
    pass


def laplacian(g: Graph) -> ExactSymmetricMatrix:
    rows = []
    for i, r in enumerate(g.rows):
        d = r.bit_count()
        rows.append(
            tuple(Fraction(d) if j == i else Fraction(-((r >> j) & 1)) for j in range(g.n))
        )
    return ExactSymmetricMatrix(tuple(rows))


def laplacian_spectrum(g: Graph) -> tuple[float, ...]:
    """Laplacian eigenvalues, non-increasing."""
    return float_spectrum(laplacian(g)).values


@dataclass(frozen=True)
class Verdict:
    k: int
    lam: float
    degree: int
    degree_index: int
    holds: bool

    @property
    def slack(self) -> float:
        return self.lam - self.degree


def check_bound(g: Graph, k: int, spectrum: tuple[float, ...] | None = None, tol: float = TOL) -> Verdict:
    """Check lambda_k >= d_{NPO(k)} (1-based indices into non-increasing lists)."""
    if k > 5:
        raise BoundError("NPO(k) is only proven for k <= 5")
    if k < 1:
        raise BoundError("k must be positive")
    m = npo_value(k)
    if g.n < m:
        raise BoundError(f"graph has {g.n} < NPO({k}) = {m} vertices")
    spec = spectrum if spectrum is not None else laplacian_spectrum(g)
    d = degrees(g)[m - 1]
    lam = spec[k - 1]
    return Verdict(k, lam, d, m, lam >= d - tol)


def check_all_bounds(g: Graph, tol: float = TOL) -> list[Verdict]:
    spec = laplacian_spectrum(g)
    return [check_bound(g, k, spec, tol) for k in range(1, 6) if g.n >= npo_value(k)]


@dataclass(frozen=True)
class RegularVerdict:
    d: int
    k: int
    count: int
    holds: bool


def check_regular_corollary(g: Graph, tol: float = TOL) -> RegularVerdict:
    """For d-regular g with NPO(k) <= n, at least k Laplacian eigenvalues are >= d."""
    degs = degrees(g)
    if degs[0] != degs[-1]:
        raise BoundError("graph is not regular")
    d = degs[0]
    k = max(k for k in range(1, 6) if npo_value(k) <= g.n)
    count = sum(lam >= d - tol for lam in laplacian_spectrum(g))
    return RegularVerdict(d, k, count, count >= k)


def is_clique_plus_isolated(g: Graph, i: int) -> bool:
    """True iff g is K_i plus n - i isolated vertices."""
    degs = sorted(r.bit_count() for r in g.rows)
    if i > g.n:
        return False
    want = sorted([i - 1] * i + [0] * (g.n - i)) if i > 1 else [0] * g.n
    if degs != want:
        return False
    return g.edge_count == i * (i - 1) // 2


def check_brouwer_haemers(g: Graph, i: int, tol: float = TOL) -> Verdict:
    """lambda_i >= d_i + 2 - i for graphs other than K_i + (n - i) K_1."""
    if not 1 <= i <= g.n:
        raise BoundError("index out of range")
    if is_clique_plus_isolated(g, i):
        raise BoundError(f"graph is K_{i} plus isolated vertices, which the bound excludes")
    lam = laplacian_spectrum(g)[i - 1]
    rhs = degrees(g)[i - 1] + 2 - i
    return Verdict(i, lam, rhs, i, lam >= rhs - tol)


@dataclass
class LaplacianReport:
    graph6: str
    n: int
    spectrum: tuple[float, ...]
    degrees: list[int]
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v.holds for v in self.verdicts)

    def to_json(self) -> dict:
        return {
            "graph6": self.graph6,
            "n": self.n,
            "spectrum": [round(x, 6) for x in self.spectrum],
            "degrees": self.degrees,
            "verdicts": [
                {
                    "k": v.k,
                    "lambda_k": round(v.lam, 6),
                    "degree_index": v.degree_index,
                    "degree": v.degree,
                    "holds": v.holds,
                    "slack": round(v.slack, 6),
                }
                for v in self.verdicts
            ],
        }


def laplacian_report(g: Graph, ks: list[int] | None = None, tol: float = TOL) -> LaplacianReport:
    spec = laplacian_spectrum(g)
    if ks is None:
        ks = [k for k in range(1, 6) if g.n >= npo_value(k)]
    verdicts = [check_bound(g, k, spec, tol) for k in ks]
    return LaplacianReport(encode_graph6(g), g.n, spec, degrees(g), verdicts)


@dataclass(frozen=True)
class TightnessReport:
    n: int
    lambda_5: float
    d_15: int
    d_16: int

    @property
    def below_d15(self) -> bool:
        return self.lambda_5 < self.d_15

    @property
    def bound_holds(self) -> bool:
        return self.lambda_5 >= self.d_16 - TOL

    def to_json(self) -> dict:
        out = asdict(self)
        out["lambda_5"] = round(self.lambda_5, 6)
        out["below_d15"] = self.below_d15
        out["bound_holds"] = self.bound_holds
        return out


def tightness_w5_pendants() -> TightnessReport:
    """W(5) plus 30 pendants: lambda_5 falls below d_15 yet stays above d_16."""
    g = w5_pendants()
    spec = laplacian_spectrum(g)
    degs = degrees(g)
    report = TightnessReport(g.n, spec[4], degs[14], degs[15])
    if not report.below_d15:
        raise BoundError(f"lambda_5 = {report.lambda_5:.4f} is not below d_15 = {report.d_15}")
    if not report.bound_holds:
        raise BoundError("lambda_5 >= d_16 fails, which contradicts the degree bound")
    return report


def tightness_k4_search(candidates: list[Graph]) -> list[dict]:
    """Pendant experiment for k = 4 on 9-vertex graphs with 3 nonpositive eigenvalues.

    Each candidate with at least four degree-3 vertices gets one pendant on
    each of them; the record says whether lambda_4 < d_9 for the result.
    """
    from .constructions import attach_pendants
    from .linalg import nonpositive_count

    out = []
    for g in candidates:
        if g.n != 9 or nonpositive_count(g) != 3:
            raise GraphError("candidates must be 9-vertex graphs with 3 nonpositive eigenvalues")
        deg3 = [v for v in range(g.n) if g.degree(v) == 3]
        if len(deg3) < 4:
            continue
        h = attach_pendants(g, [(v, 1) for v in deg3[:4]])
        spec = laplacian_spectrum(h)
        d9 = degrees(h)[8]
        out.append({
            "base_graph6": encode_graph6(g),
            "graph6": encode_graph6(h),
            "lambda_4": round(spec[3], 6),
            "d_9": d9,
            "below": spec[3] < d9,
        })
    return out
