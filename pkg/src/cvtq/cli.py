"""Command-line interface: ``cvtq {centroid,optimal,reproduce,render}``.

Every command except ``reproduce`` prints one JSON report on stdout and a
short human-readable summary on stderr.

Exit codes: 0 success, 1 reproduction failure, 2 usage or parse error,
3 unsupported combination, 4 I/O error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

import numpy as np

from . import reproduce
from .cquant import best_nmeans, distortion, restart_rng
from .dquant import (EXACT_MAX_POINTS, DiscreteUniform, distortion_discrete, is_discrete_cvt,
                     lloyd_discrete, optimal_nmeans_exact)
from .errors import InvalidInputError, ProblemSizeError
from .formats import POINT_PRESETS, REGION_PRESETS, FormatError, load_input
from .region import mass_profile, shape_centroid
from .svg import render_points, render_region
from .voronoi import Quantizer, is_cvt

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_IO = 0, 1, 2, 3, 4
DEFAULT_SEED = 42
DEFAULT_RESTARTS = 16
DIGITS = 9


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _sig(x: float) -> float:
    return float(f"{x:.{DIGITS}g}")


def _pt(p) -> list:
    x, y = p
    return [_sig(x), _sig(y)]


def _digest(args, source_text: bytes) -> str:
    h = hashlib.sha256()
    h.update(source_text)
    for key in ("command", "n", "restarts", "seed", "exact", "centers"):
        h.update(f"|{key}={getattr(args, key, None)}".encode())
    return h.hexdigest()


def _default_seed() -> int:
    raw = os.environ.get("CVTQ_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"CVTQ_SEED must be an integer, got {raw!r}", EXIT_USAGE) from None


def _load(source: str):
    try:
        obj = load_input(source)
    except FormatError as e:
        raise CliError(f"{source}: {e}", EXIT_USAGE) from None
    except InvalidInputError as e:
        raise CliError(f"{source}: {e}", EXIT_USAGE) from None
    except OSError as e:
        raise CliError(f"cannot read {source!r}: {e.strerror or e}", EXIT_IO) from None
    if source in REGION_PRESETS or source in POINT_PRESETS:
        raw = f"preset:{source}".encode()
    else:
        with open(source, "rb") as fh:
            raw = fh.read()
    return obj, raw


def _parse_centers(text: str) -> Quantizer:
    try:
        pts = []
        for chunk in text.split(";"):
            if not chunk.strip():
                continue
            x, y = chunk.split(",")
            pts.append((float(x), float(y)))
        return Quantizer(tuple(pts))
    except (ValueError, InvalidInputError) as e:
        raise CliError(f"bad --centers {text!r}: expected 'x,y;x,y;...' ({e})", EXIT_USAGE) from None


def _emit(report: dict, summary: str):
    sys.stdout.write(json.dumps(report, separators=(",", ":")) + "\n")
    sys.stderr.write(summary.rstrip("\n") + "\n")


def _summary(report: dict) -> str:
    lines = [f"{k:>16}: {v}" for k, v in report.items() if k not in ("centers", "inputs_digest")]
    lines.insert(1, f"{'centers':>16}: " + "; ".join(f"({x:.9g}, {y:.9g})" for x, y in report["centers"]))
    return "\n".join(lines)


def _discrete_best(dist: DiscreteUniform, n: int, restarts: int, seed: int):
    """Best Lloyd fixed point from ``restarts`` random subsets of the data as starts."""
    best = None
    for r in range(restarts):
        idx = restart_rng(seed, r).choice(dist.m, size=n, replace=False)
        res = lloyd_discrete(dist, Quantizer(tuple(map(tuple, dist.array[np.sort(idx)]))))
        key = (res.sse, [x for c in res.centers.as_lists() for x in c])
        if best is None or key < best[0]:
            best = (key, res)
    return best[1]


def _solve(obj, args):
    """(quantizer, distortion, method, extras) for ``optimal`` and ``render --n``."""
    n = args.n
    if n < 1:
        raise CliError("--n must be at least 1", EXIT_USAGE)
    if isinstance(obj, DiscreteUniform):
        if n > obj.m:
            raise CliError(f"--n {n} exceeds the {obj.m} support points", EXIT_USAGE)
        if args.exact:
            try:
                res = optimal_nmeans_exact(obj, n)
            except ProblemSizeError as e:
                raise CliError(str(e), EXIT_UNSUPPORTED) from None
            extra = {"multiplicity": res.multiplicity, "nodes_explored": res.nodes_explored}
            return res.optimal_sets[0], res.vn, "branch-and-bound", extra
        res = _discrete_best(obj, n, args.restarts, args.seed)
        return res.centers.canonical(), res.sse, "lloyd-discrete-multistart", {"seed": args.seed}
    if args.exact:
        raise CliError("--exact applies to point sets only; continuous regions use multi-start Lloyd",
                       EXIT_UNSUPPORTED)
    trace = best_nmeans(obj, n, restarts=args.restarts, seed=args.seed, parallel=args.parallel)
    rep = distortion(obj, trace.final)
    return trace.final, rep.value, f"lloyd-multistart/{rep.method}", {"seed": args.seed}


def _cvt_flag(obj, q) -> bool:
    if isinstance(obj, DiscreteUniform):
        return bool(is_discrete_cvt(obj, q))
    return bool(is_cvt(obj, q))


def cmd_centroid(args) -> int:
    obj, raw = _load(args.input)
    if isinstance(obj, DiscreteUniform):
        raise CliError("centroid takes a region, not a point set", EXIT_UNSUPPORTED)
    prof = mass_profile(obj)
    ev = prof.center
    cen = shape_centroid(obj)
    mismatch = bool(np.hypot(*(np.array(tuple(ev)) - tuple(cen))) > 1e-9)
    report = {
        "command": "centroid",
        "inputs_digest": _digest(args, raw),
        "centers": [_pt(ev)],
        "distortion": _sig(prof.variance),
        "is_cvt": True,
        "method": prof.method,
        "centroid": _pt(cen),
        "expected_vector": _pt(ev),
        "mismatch": mismatch,
    }
    _emit(report, _summary(report))
    return EXIT_OK


def cmd_optimal(args) -> int:
    obj, raw = _load(args.input)
    q, value, method, extra = _solve(obj, args)
    report = {
        "command": "optimal",
        "inputs_digest": _digest(args, raw),
        "centers": [_pt(c) for c in q.canonical().centers],
        "distortion": _sig(value),
        "is_cvt": _cvt_flag(obj, q),
        "method": method,
        **{k: v for k, v in extra.items()},
    }
    _emit(report, _summary(report))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    rows = reproduce.run(args.table)
    table = reproduce.format_table(rows)
    failed = [r for r in rows if not r.passed]
    sys.stdout.write(table + "\n")
    sys.stderr.write(f"{len(rows) - len(failed)}/{len(rows)} rows pass\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_render(args) -> int:
    obj, raw = _load(args.input)
    if args.centers is not None and args.n is not None:
        raise CliError("give either --centers or --n, not both", EXIT_USAGE)
    extra = {}
    if args.centers is not None:
        q = _parse_centers(args.centers)
        method = "given"
        value = (distortion_discrete(obj, q) if isinstance(obj, DiscreteUniform)
                 else distortion(obj, q).value)
    elif args.n is not None:
        args.exact = isinstance(obj, DiscreteUniform) and obj.m <= EXACT_MAX_POINTS
        q, value, method, extra = _solve(obj, args)
    else:
        q, value, method = None, None, "outline"
    title = f"cvtq: {args.input}"
    svg = render_points(obj, q, title) if isinstance(obj, DiscreteUniform) else render_region(obj, q, title)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as e:
        raise CliError(f"cannot write {args.out!r}: {e.strerror or e}", EXIT_IO) from None
    report = {
        "command": "render",
        "inputs_digest": _digest(args, raw),
        "centers": [] if q is None else [_pt(c) for c in q.canonical().centers],
        "distortion": None if value is None else _sig(value),
        "is_cvt": None if q is None else _cvt_flag(obj, q),
        "method": method,
        "out": args.out,
        **extra,
    }
    _emit(report, _summary(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    presets = ", ".join(list(REGION_PRESETS) + list(POINT_PRESETS))
    p = argparse.ArgumentParser(
        prog="cvtq",
        description="Centers of mass, centroidal Voronoi tessellations and optimal quantizers.",
        epilog=f"INPUT is a cvtq-region/1 or cvtq-points/1 JSON file, or a preset: {presets}. "
               "CVTQ_SEED sets the default --seed.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("centroid", help="centroid and expected vector of a region")
    c.add_argument("input", metavar="INPUT")
    c.set_defaults(func=cmd_centroid)

    o = sub.add_parser("optimal", help="optimal (or best-found) set of n-means")
    o.add_argument("input", metavar="INPUT")
    o.add_argument("--n", type=int, required=True, help="number of centers")
    o.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS,
                   help=f"Lloyd restarts (default {DEFAULT_RESTARTS})")
    o.add_argument("--seed", type=int, default=None,
                   help=f"restart seed (default $CVTQ_SEED or {DEFAULT_SEED})")
    o.add_argument("--exact", action="store_true", help="exact branch and bound (point sets only)")
    o.add_argument("--parallel", action="store_true", help="run restarts concurrently (same result)")
    o.set_defaults(func=cmd_optimal)

    r = sub.add_parser("reproduce", help="run the reference-value matrix")
    r.add_argument("--table", choices=("all",) + reproduce.TABLES, default="all",
                   help="which table to run (default all)")
    r.set_defaults(func=cmd_reproduce)

    d = sub.add_parser("render", help="write an SVG diagram")
    d.add_argument("input", metavar="INPUT")
    d.add_argument("--centers", default=None, help='explicit centers "x,y;x,y;..."')
    d.add_argument("--n", type=int, default=None, help="compute n centers first (no default: outline only)")
    d.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS,
                   help=f"Lloyd restarts for --n (default {DEFAULT_RESTARTS})")
    d.add_argument("--seed", type=int, default=None,
                   help=f"restart seed (default $CVTQ_SEED or {DEFAULT_SEED})")
    d.add_argument("--out", required=True, help="output .svg path")
    d.set_defaults(func=cmd_render, exact=False, parallel=False)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        if getattr(args, "restarts", 1) < 1:
            raise CliError("--restarts must be at least 1", EXIT_USAGE)
        return args.func(args)
    except CliError as e:
        sys.stderr.write(f"cvtq: error: {e}\n")
        return e.code


if __name__ == "__main__":
    sys.exit(main())
