"""Command line: ``npocert {construct,inertia,spectrum,npo,laplacian,bounds}``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource or
cap error (including a search stopped by ``--max-level``).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import IO, Sequence

from .constructions import NAMED, PARAMETRIC, construct
from .graph import Graph, GraphError
from .graph6 import Graph6Error, decode_graph6, encode_graph6, read_graph6
from .laplacian import BoundError, TOL, laplacian_report
from .linalg import GUARD, exact_inertia, float_spectrum
from .schema import SCHEMA, SCHEMA_VERSION
from .search import (
    CacheCorruptionError,
    CapExceededError,
    SearchError,
    best_bounds,
    frontier_search,
    h_seed,
    known_bounds,
    npo_value,
    restricted_seeds,
    validate_certificate,
)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("npocert")


@dataclass
class RunConfig:
    command: str
    k: int | None = None
    max_level: int = 64
    pattern: Graph | None = None
    cache_dir: str | None = None
    workers: int = 1
    output_format: str = "json"
    tolerance: float = TOL
    guard: float = GUARD

    def __post_init__(self) -> None:
        if self.k is not None and self.k < 1:
            raise ValueError("k must be at least 1")
        if not 1 <= self.max_level <= 64:
            raise ValueError("max_level must be in 1..64")
        if self.tolerance <= 0 or self.guard <= 0:
            raise ValueError("tolerances must be positive")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.cache_dir is not None:
            os.makedirs(self.cache_dir, exist_ok=True)
            if not os.access(self.cache_dir, os.W_OK):
                raise ValueError(f"cache directory {self.cache_dir} is not writable")


def default_cache_dir() -> str:
    """``$NPOCERT_CACHE_DIR``, else ``$XDG_CACHE_HOME/npocert``, else ``~/.cache/npocert``."""
    env = os.environ.get("NPOCERT_CACHE_DIR")
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return os.path.join(base, "npocert")


def _fmt(x: float) -> float:
    return round(x, 6) + 0.0


def _read_graphs(path: str | None, stdin: IO[str]) -> list[tuple[int, Graph]]:
    if path is None or path == "-":
        return list(read_graph6(stdin))
    with open(path, encoding="ascii") as fh:
        return list(read_graph6(fh))


def _emit(doc: dict, out: IO[str]) -> None:
    out.write(json.dumps(doc, sort_keys=True) + "\n")


def _pattern(spec: str | None) -> Graph | None:
    if spec is None:
        return None
    if spec in NAMED or spec in PARAMETRIC:
        return construct(spec)
    return decode_graph6(spec)


def cmd_construct(args, cfg: RunConfig, out: IO[str]) -> int:
    g = construct(args.name, args.params)
    if cfg.output_format == "json":
        _emit({"version": SCHEMA_VERSION, "kind": "construct", "name": args.name,
               "graph6": encode_graph6(g), "n": g.n}, out)
    else:
        out.write(encode_graph6(g) + "\n")
    return EXIT_OK


def _inertia_record(g: Graph, guard: float) -> dict:
    inertia = exact_inertia(g)
    spec = float_spectrum(g, guard)
    return {
        "graph6": encode_graph6(g),
        "n": g.n,
        "inertia": list(inertia),
        "nonpositive": inertia.nonpositive,
        "spectrum": [_fmt(x) for x in spec.values],
    }


def cmd_inertia(args, cfg: RunConfig, out: IO[str], stdin: IO[str], kind: str = "inertia") -> int:
    records = [_inertia_record(g, cfg.guard) for _, g in _read_graphs(args.input, stdin)]
    if cfg.output_format == "json":
        _emit({"version": SCHEMA_VERSION, "kind": kind, "results": records}, out)
    elif cfg.output_format == "graph6":
        for r in records:
            out.write(r["graph6"] + "\n")
    else:
        for r in records:
            if kind == "inertia":
                n_plus, n_minus, n_zero = r["inertia"]
                out.write(f"{r['graph6']}\tn={r['n']}\t(+{n_plus}, -{n_minus}, 0x{n_zero})"
                          f"\tnonpositive={r['nonpositive']}\n")
            else:
                out.write(r["graph6"] + "\t" + " ".join(f"{x:.4f}" for x in r["spectrum"]) + "\n")
    return EXIT_OK


def cmd_npo(args, cfg: RunConfig, out: IO[str]) -> int:
    k = cfg.k
    if k is None:
        raise ValueError("npo needs k")
    pattern = cfg.pattern
    seeds = None
    if args.restricted or pattern is not None:
        pattern = pattern or h_seed()
        # ignored by the search when a cached level is resumed
        seeds = restricted_seeds(k, pattern)

    def progress(frontier, elapsed):
        log.info("level %d: %d members (%.1fs)", frontier.level, len(frontier), elapsed)

    cert, frontier = frontier_search(
        k, cfg.max_level, pattern=pattern, seed_frontier=seeds, cache_dir=cfg.cache_dir,
        resume=args.resume, workers=cfg.workers, on_level=progress,
    )
    doc = cert.to_json()
    doc["cache_dir"] = cfg.cache_dir
    if cfg.output_format == "json":
        _emit(doc, out)
    elif cfg.output_format == "graph6":
        for g in frontier.sorted_members():
            out.write(encode_graph6(g) + "\n")
    else:
        out.write(f"k={k} value={cert.value} complete={cert.complete}\n")
        for level, count in enumerate(cert.level_counts):
            if count is not None:
                out.write(f"  level {level:2d}: {count}\n")
    if not cert.complete:
        return EXIT_RESOURCE
    try:
        validate_certificate(cert, cfg.cache_dir)
    except SearchError as exc:
        log.error("certificate failed validation: %s", exc)
        return EXIT_VERIFY
    bounds = best_bounds(k)
    if bounds.exact and cert.value != bounds.lower:
        log.error("NPO(%d) = %s disagrees with the known value %d", k, cert.value, bounds.lower)
        return EXIT_VERIFY
    if not bounds.exact and (cert.value < bounds.lower
                             or (bounds.upper is not None and cert.value > bounds.upper)):
        log.error("NPO(%d) = %s is outside the known bounds", k, cert.value)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_laplacian(args, cfg: RunConfig, out: IO[str], stdin: IO[str]) -> int:
    ks = [cfg.k] if cfg.k is not None else None
    reports = []
    for lineno, g in _read_graphs(args.input, stdin):
        if ks is not None and g.n < npo_value(ks[0]):
            raise BoundError(f"line {lineno}: n = {g.n} < NPO({ks[0]}) = {npo_value(ks[0])}")
        reports.append(laplacian_report(g, ks, cfg.tolerance))
    if cfg.output_format == "json":
        _emit({"version": SCHEMA_VERSION, "kind": "laplacian",
               "results": [r.to_json() for r in reports]}, out)
    else:
        for r in reports:
            for v in r.verdicts:
                out.write(f"{r.graph6}\tk={v.k}\tlambda={v.lam:.6f}\td_{v.degree_index}={v.degree}"
                          f"\t{'holds' if v.holds else 'FAILS'}\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VERIFY


def cmd_bounds(args, cfg: RunConfig, out: IO[str]) -> int:
    rows = known_bounds(args.max_k)
    if cfg.k is not None:
        rows = [r for r in rows if r.k == cfg.k]
    if cfg.output_format == "json":
        _emit({"version": SCHEMA_VERSION, "kind": "bounds", "results": [
            {"k": r.k, "lower": r.lower, "upper": r.upper, "exact": r.exact,
             "provenance": r.provenance} for r in rows]}, out)
    else:
        for r in rows:
            upper = "?" if r.upper is None else str(r.upper)
            out.write(f"k={r.k}\t{r.lower} <= NPO <= {upper}\t{r.provenance}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text", "graph6"], default=None)
    common.add_argument("--tolerance", type=float, default=TOL,
                        help="slack for Laplacian eigenvalue comparisons")
    common.add_argument("--guard", type=float, default=GUARD,
                        help="guard band for float eigenvalue sign classification")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="npocert", description=__doc__.splitlines()[0])
    p.add_argument("--schema", action="store_true", help="print the output JSON schema and exit")
    sub = p.add_subparsers(dest="command")

    c = sub.add_parser("construct", parents=[common], help="emit a named graph as graph6")
    c.add_argument("name", choices=sorted(set(NAMED) | set(PARAMETRIC)))
    c.add_argument("params", nargs="*", type=int)

    for name in ("inertia", "spectrum"):
        s = sub.add_parser(name, parents=[common], help=f"exact inertia and {name} of graph6 input")
        s.add_argument("input", nargs="?", default=None, help="graph6 file (default stdin)")

    n = sub.add_parser("npo", parents=[common], help="certify NPO(k) by frontier search")
    n.add_argument("k_pos", nargs="?", type=int, metavar="k")
    n.add_argument("--k", type=int, dest="k_opt")
    n.add_argument("--max-level", type=int, default=64)
    n.add_argument("--restricted", action="store_true",
                   help="search only supergraphs of the pattern (default: the H seed on 7 vertices)")
    n.add_argument("--pattern", default=None, help="pattern as a construction name or graph6")
    n.add_argument("--resume", action="store_true")
    n.add_argument("--cache-dir", default=None,
                   help="frontier checkpoint directory (default: $NPOCERT_CACHE_DIR or ~/.cache/npocert)")
    n.add_argument("--no-cache", action="store_true", help="do not persist frontier levels")
    n.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    lap = sub.add_parser("laplacian", parents=[common], help="check lambda_k >= d_NPO(k)")
    lap.add_argument("input", nargs="?", default=None)
    lap.add_argument("--k", type=int, dest="k_opt")

    b = sub.add_parser("bounds", parents=[common], help="known bounds on NPO(k)")
    b.add_argument("--k", type=int, dest="k_opt")
    b.add_argument("--max-k", type=int, default=10)
    return p


def main(argv: Sequence[str] | None = None, stdout: IO[str] | None = None,
         stdin: IO[str] | None = None) -> int:
    out = stdout or sys.stdout
    inp = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.schema:
        out.write(json.dumps(SCHEMA, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    k = getattr(args, "k_pos", None) or getattr(args, "k_opt", None)
    default_format = "graph6" if args.command == "construct" else "json"
    cache_dir = getattr(args, "cache_dir", None)
    if args.command == "npo" and cache_dir is None and not args.no_cache:
        cache_dir = default_cache_dir()
    try:
        cfg = RunConfig(
            command=args.command,
            k=k,
            max_level=getattr(args, "max_level", 64),
            pattern=_pattern(getattr(args, "pattern", None)),
            cache_dir=cache_dir,
            workers=getattr(args, "workers", 1),
            output_format=args.format or default_format,
            tolerance=args.tolerance,
            guard=args.guard,
        )
        if args.command == "construct":
            return cmd_construct(args, cfg, out)
        if args.command in ("inertia", "spectrum"):
            return cmd_inertia(args, cfg, out, inp, args.command)
        if args.command == "npo":
            return cmd_npo(args, cfg, out)
        if args.command == "laplacian":
            return cmd_laplacian(args, cfg, out, inp)
        return cmd_bounds(args, cfg, out)
    except CacheCorruptionError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except (CapExceededError, MemoryError) as exc:
        log.error("%s", exc)
        return EXIT_RESOURCE
    except (Graph6Error, GraphError, BoundError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except SearchError as exc:
        log.error("%s", exc)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
