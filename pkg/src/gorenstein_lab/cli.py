"""Command line entry point: ``gorenstein-lab analyze|sweep|theorem|corollary``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .complexes import DegreeBoundExceeded, InternalConsistencyError
from .lab import (
    FORMATS,
    analyze_ring,
    corollary_search,
    emit_report,
    index_sweep,
    load_ring,
    theorem_main_check,
)
from .local import StabilizationError, random_homogeneous_sop
from .polynomial import ParseError

EXIT_OK, EXIT_INPUT, EXIT_STABILIZATION, EXIT_INCONSISTENT = 0, 2, 3, 4


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def default(v):
        return argparse.SUPPRESS if suppress else v

    parser.add_argument("--format", choices=FORMATS, default=default("table"))
    parser.add_argument("--field", default=default(None), help="Q or Fp:<p>; overrides the ring file")
    parser.add_argument("--window", type=int, default=default(2), help="stabilization window")
    parser.add_argument("--degree-bound", type=int, default=default(None), help="minimum internal degree bound for resolutions")
    parser.add_argument("--dump-complex", metavar="PATH", default=default(None), help="write the Koszul complex of the sop as JSON")
    parser.add_argument("--dump-resolution", metavar="PATH", default=default(None), help="write the resolution of R/m as JSON")
    parser.add_argument("-v", "--verbose", action="store_true", default=default(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gorenstein-lab", description=__doc__)
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    common.add_argument("spec", help="ring spec JSON file")

    p = sub.add_parser("analyze", parents=[common], help="dim, depth, CM/Gorenstein, socles and ell_i")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=5, help="sops sampled inside m^ell (0 to skip)")
    p = sub.add_parser("sweep", parents=[common], help="index of reducibility of (x_1^n, ..., x_d^n)")
    p.add_argument("--sop", default=None, help="comma separated sop; random if omitted")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("theorem", parents=[common], help="irreducible sops inside m^ell")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("corollary", parents=[common], help="irreducible parameter ideals inside powers of m")
    p.add_argument("--max-power", type=int, default=4)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _write_json(path: str, data) -> None:
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if path == "-":
        sys.stderr.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _dumps(args, R) -> None:
    if args.dump_complex:
        from .koszul import koszul_complex

        _write_json(args.dump_complex, koszul_complex(R, random_homogeneous_sop(R, 1, seed=getattr(args, "seed", 0))).to_json())
    if args.dump_resolution:
        from .resolutions import graded_free_resolution

        h = R.dim + 1
        _write_json(args.dump_resolution, graded_free_resolution(R, R.m, h, args.degree_bound).to_json())


def run(args) -> int:
    R = load_ring(args.spec, args.field)
    _dumps(args, R)
    if args.command == "analyze":
        report = analyze_ring(R, window=args.window, seed=args.seed, degree_bound=args.degree_bound, samples=args.samples)
        sys.stdout.write(emit_report(report, args.format))
        return EXIT_STABILIZATION if report.warnings else EXIT_OK
    if args.command == "sweep":
        table = index_sweep(R, args.sop, args.max_n, args.seed, window=args.window)
    elif args.command == "theorem":
        table = theorem_main_check(R, args.samples, args.seed, window=args.window)
    else:
        table = corollary_search(R, args.max_power, args.samples, args.seed, window=args.window)
    sys.stdout.write(emit_report(table, args.format))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return run(args)
    except InternalConsistencyError as exc:
        print("internal consistency failure: %s" % exc, file=sys.stderr)
        return EXIT_INCONSISTENT
    except (StabilizationError, DegreeBoundExceeded) as exc:
        print("stabilization failure: %s" % exc, file=sys.stderr)
        return EXIT_STABILIZATION
    except (ParseError, ValueError, KeyError, OSError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
