"""Command line entry point: ``latile analyze | tile | verify``.

Exit codes: 0 success, 1 verification failed, 2 unreadable input,
3 search gave no answer, 4 input violates a precondition.  Standard output
carries only the JSON payload; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from .errors import DomainError
from .formats import (FormatError, dumps, emit_tiling, read_cluster, read_tiling,
                      report_to_dict, tiling_to_dict)
from .tiler import dilation_check, search_fully_periodic, tile_1d, verify_tiling
from .trichotomy import classify

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_UNKNOWN = 3
EXIT_PRECONDITION = 4


def _threads() -> int:
    """Value of LATILE_THREADS; results never depend on it."""
    raw = os.environ.get("LATILE_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        print(f"latile: ignoring LATILE_THREADS={raw!r}", file=sys.stderr)
        return 1
    return n


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def cmd_analyze(args) -> int:
    cluster = read_cluster(args.cluster)
    result = classify(cluster, args.prime, args.search_cap, experimental=args.experimental)
    tiling_file = None
    if args.out and result.tiling is not None:
        out = Path(args.out)
        tiling_path = out.with_name(out.stem + ".tiling.json")
        tiling_path.write_text(emit_tiling(result.tiling))
        tiling_file = tiling_path.name
    text = dumps(report_to_dict(result, tiling_file))
    _write(args.out, text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_tile(args) -> int:
    cluster = read_cluster(args.cluster)
    if cluster.dim == 1:
        report = tile_1d(cluster)
        if not report.exact:
            payload = {"note": "not exact: the transfer graph has no cycle",
                       "status": "not_exact", "tiling": None, "uniform_period": None}
            sys.stdout.write(dumps(payload))
            return EXIT_UNKNOWN
        tiling = report.as_periodic(0).translate((-cluster.points[0][0],))
        payload = {"status": "found", "tiling": tiling_to_dict(tiling),
                   "uniform_period": report.uniform_period}
    else:
        tiling = search_fully_periodic(cluster, args.max_index)
        if tiling is None:
            payload = {"note": f"no tiling with period index at most {args.max_index}",
                       "status": "unknown", "tiling": None, "uniform_period": None}
            sys.stdout.write(dumps(payload))
            return EXIT_UNKNOWN
        payload = {"status": "found", "tiling": tiling_to_dict(tiling), "uniform_period": None}
    _write(args.out, emit_tiling(tiling))
    sys.stdout.write(dumps(payload))
    return EXIT_OK


def cmd_verify(args) -> int:
    cluster = read_cluster(args.cluster)
    tiling = read_tiling(args.tiling)
    if tiling.dim != cluster.dim:
        raise DomainError("cluster and tiling dimensions differ")
    if args.alpha is not None and (args.alpha < 1 or math.gcd(args.alpha, len(cluster)) != 1):
        raise DomainError(f"alpha = {args.alpha} is not a positive integer coprime to |F| = {len(cluster)}")
    ok = verify_tiling(cluster, tiling)
    payload = {"alpha": args.alpha, "dilation_verified": None, "verified": ok}
    if ok and args.alpha is not None:
        payload["dilation_verified"] = dilation_check(cluster, tiling, args.alpha)
        ok = payload["dilation_verified"]
    sys.stdout.write(dumps(payload))
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latile", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify a cluster of size p^2 in Z^3")
    p.add_argument("cluster")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--search-cap", type=int, default=32,
                   help="largest period index tried when searching for a tiling")
    p.add_argument("--out", help="also write the report here")
    p.add_argument("--experimental", action="store_true",
                   help="accept any power of the prime as the cluster size")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tile", help="search for a fully periodic tiling")
    p.add_argument("cluster")
    p.add_argument("--max-index", type=int, default=32)
    p.add_argument("--out", help="write the tiling file here")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("verify", help="check a tiling, optionally after dilation")
    p.add_argument("cluster")
    p.add_argument("tiling")
    p.add_argument("--alpha", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _threads()
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"latile: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"latile: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
