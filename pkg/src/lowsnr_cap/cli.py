"""Command-line front end: ``lowsnr-cap sweep|point|constants|verify``."""

import argparse
import os
import sys

from . import optimizer, report, verification
from .errors import ConvergenceError, SnrRangeError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


def _fail(code, message):
    print(f"lowsnr-cap: error: {message}", file=sys.stderr)
    return code


def cmd_sweep(a_min, a_max, points, spacing="log", units="nats", out_path="-"):
    if not (0.0 < a_min < a_max <= optimizer.SNR_CEILING):
        return _fail(EXIT_USAGE, f"need 0 < a_min < a_max <= {optimizer.SNR_CEILING} "
                                 f"(the validated low-SNR ceiling), got {a_min}, {a_max}")
    if points < 2:
        return _fail(EXIT_USAGE, f"--points must be at least 2, got {points}")
    try:
        records = report.sweep(a_min, a_max, points, spacing)
    except ConvergenceError as exc:
        return _fail(EXIT_NUMERICAL, f"non-convergence: {exc}")
    text = report.to_csv(records, units)

    if out_path == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        try:
            os.remove(out_path)
        except OSError:
            pass
        return _fail(EXIT_IO, f"cannot write {out_path}: {exc}")
    return EXIT_OK


def cmd_point(a, units="nats"):
    try:
        optimizer.check_snr(a)
        record = report.capacity_record(a)
    except SnrRangeError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except ConvergenceError as exc:
        return _fail(EXIT_NUMERICAL, f"non-convergence: {exc}")
    sys.stdout.write(report.to_key_values(record, units))
    return EXIT_OK


def cmd_constants():
    try:
        edge = optimizer.edge_constants()
    except ConvergenceError as exc:
        return _fail(EXIT_NUMERICAL, str(exc))
    print(f"x0_sq={edge.x0_sq:.17g}")
    print(f"a0={edge.a0:.17g}")
    print(f"xi0={edge.xi0:.17g}")
    return EXIT_OK


def cmd_verify(level="quick"):
    results = verification.run_checks(level)
    print(verification.format_table(results))
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(results)} properties FAILED: "
              + "; ".join(r.name for r in failed), file=sys.stderr)
        return EXIT_VERIFY_FAILED
    print(f"all {len(results)} properties passed")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lowsnr-cap",
        description="Low-SNR capacity of the non-coherent memoryless Rayleigh fading channel.")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="write capacity records over an SNR grid as CSV")
    sw.add_argument("--a-min", type=float, required=True)
    sw.add_argument("--a-max", type=float, required=True)
    sw.add_argument("--points", type=int, required=True)
    sw.add_argument("--spacing", choices=("log", "linear"), default="log")
    sw.add_argument("--units", choices=("nats", "bits"), default="nats")
    sw.add_argument("--out", default="-", help="output path, '-' for stdout")

    pt = sub.add_parser("point", help="print the record for a single SNR")
    pt.add_argument("--a", type=float, required=True)
    pt.add_argument("--units", choices=("nats", "bits"), default="nats")

    sub.add_parser("constants", help="re-derive the edge constants x0^2, a0, xi0")

    ve = sub.add_parser("verify", help="run the oracle/closed-form property checks")
    ve.add_argument("--level", choices=("quick", "full"), default="quick")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "sweep":
        return cmd_sweep(args.a_min, args.a_max, args.points, args.spacing, args.units, args.out)
    if args.command == "point":
        return cmd_point(args.a, args.units)
    if args.command == "constants":
        return cmd_constants()
    return cmd_verify(args.level)


if __name__ == "__main__":
    sys.exit(main())
