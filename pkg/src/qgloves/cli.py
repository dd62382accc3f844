"""Command-line entry point.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage or input errors.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import experiments
from .errors import QGlovesError
from .experiments import FrameSpec

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _shots(text: str):
    if text == "exact":
        return None
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"shots must be 'exact' or a positive integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("shots must be >= 1")
    return n


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2**64)")
    return s


def _axis(text: str) -> tuple[float, float, float]:
    try:
        v = np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"axis must be x,y,z, got {text!r}")
    if v.shape != (3,) or not np.all(np.isfinite(v)) or np.linalg.norm(v) == 0:
        raise argparse.ArgumentTypeError(f"axis must be a nonzero x,y,z triple, got {text!r}")
    v = v / np.linalg.norm(v)
    return tuple(float(x) for x in v)


def _add_frame_args(p: argparse.ArgumentParser, who: str) -> None:
    p.add_argument(f"--{who}-axis", type=_axis, default=(0.0, 0.0, 1.0), metavar="X,Y,Z",
                   help=f"rotation axis of {who}'s frame (normalized)")
    p.add_argument(f"--{who}-angle", type=float, default=0.0, metavar="RAD")
    p.add_argument(f"--{who}-mirror", action="store_true",
                   help=f"point-reflect {who}'s frame after rotating")


def _frame(args, who: str) -> FrameSpec:
    return FrameSpec(getattr(args, f"{who}_axis"), getattr(args, f"{who}_angle"),
                     getattr(args, f"{who}_mirror"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=experiments.DEFAULT_SEED)
    common.add_argument("--output", choices=("report", "table"), default="report")
    common.add_argument("--tolerance", type=float, default=None,
                        help="override the default tolerance of every scalar check")

    parser = argparse.ArgumentParser(
        prog="qgloves", description="Chirality communication experiments."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tomography", parents=[common],
                       help="two-lab Pauli correlation tomography")
    p.add_argument("--state", default="singlet", help="singlet, werner:P or a state file")
    p.add_argument("--shots", type=_shots, default=None, help="'exact' or a shot count")
    _add_frame_args(p, "alice")
    _add_frame_args(p, "bob")

    p = sub.add_parser("chi-protocol", parents=[common],
                       help="send rho_plus/rho_minus, measure chi in Bob's frame")
    p.add_argument("--label", choices=("plus", "minus"), default="plus")
    p.add_argument("--shots", type=_shots, default=None)
    _add_frame_args(p, "bob")

    p = sub.add_parser("gloves", parents=[common], help="send and identify a glove state")
    p.add_argument("--handedness", choices=("plus", "minus"), default="plus")
    p.add_argument("--receiver-mirrored", action="store_true")

    sub.add_parser("encoded", parents=[common], help="logical-qubit parity checks")
    sub.add_parser("suite", parents=[common], help="run every check")
    return parser


def run(args) -> experiments.ExperimentReport:
    if args.command == "tomography":
        return experiments.cmd_tomography(args.state, _frame(args, "alice"), _frame(args, "bob"),
                                          args.shots, args.seed, args.tolerance)
    if args.command == "chi-protocol":
        return experiments.cmd_chi_protocol(args.label, _frame(args, "bob"), args.shots,
                                            args.seed, args.tolerance)
    if args.command == "gloves":
        return experiments.cmd_gloves(args.handedness, args.receiver_mirrored, args.tolerance)
    if args.command == "encoded":
        return experiments.cmd_encoded(args.seed, args.tolerance)
    return experiments.cmd_suite(args.seed, args.tolerance)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except (QGlovesError, ValueError) as exc:
        print(f"qgloves: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.output == "table":
        if args.command == "tomography":
            print(experiments.correlation_table(report))
        else:
            print(experiments.checks_table(report))
    else:
        print(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
