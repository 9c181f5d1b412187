#!/usr/bin/env python3
"""
confsplit - main entry point
exact rational cohomology of configuration spaces of punctured varieties
"""
import argparse
import sys

import config
from src.commands import FORMATS, IDENTITIES, SPACES, RunConfig, cmd_catalog, cmd_compute, cmd_verify


def add_run_arguments(parser):
    """flags shared by compute and verify"""
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--catalog", metavar="NAME[:ARGS]",
                        help="built-in model, e.g. affine_space:1, curve_open:1,2, elliptic")
    source.add_argument("--model", metavar="PATH", help="model file (json)")
    parser.add_argument("--punctures", type=int, default=0, metavar="R",
                        help="number of punctures")
    parser.add_argument("--space", choices=SPACES, default=config.DEFAULT_SPACE,
                        help="F(X, n) (ordered) or Conf^n(X) (unordered)")
    parser.add_argument("--n-max", type=int, metavar="N",
                        help=f"largest n (compute default {config.DEFAULT_N_MAX}; verify defaults to "
                             f"{config.TRUNCATION_GENUS_ZERO} or {config.TRUNCATION_GENUS_POSITIVE} by model)")
    parser.add_argument("--checks", type=int, choices=[0, 1, 2], default=config.DEFAULT_CHECKS_LEVEL,
                        help="0 = fast, 1 = oracles, 2 = full brute force")
    parser.add_argument("--format", choices=FORMATS, default=config.DEFAULT_FORMAT)
    parser.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    parser.add_argument("--allow-uncertified", action="store_true",
                        help="assemble tables even without a degeneration certificate")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="confsplit",
        description="hodge numbers of configuration spaces of punctured varieties")
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="compute a hodge table")
    add_run_arguments(compute)
    compute.add_argument("--history", metavar="PATH",
                         help="write the run status, per-n snapshots and event log as json")
    compute.add_argument("--history-summary", metavar="PATH",
                         help="write a readable event log grouped by n")

    verify = commands.add_parser("verify", help="check an identity between X and X - P")
    verify.add_argument("identity", choices=IDENTITIES)
    add_run_arguments(verify)
    verify.add_argument("--weights", metavar="RULE:C",
                        help="expected weight of H^i for purity: linear:C (C i) or floor:C (floor(C i))")

    listing = commands.add_parser("catalog", help="list the built-in models")
    listing.add_argument("--format", choices=FORMATS, default=config.DEFAULT_FORMAT)
    listing.add_argument("--out", metavar="PATH")
    return parser


def run_config_from_args(args):
    return RunConfig(
        catalog=args.catalog,
        model_path=args.model,
        punctures=args.punctures,
        space=args.space,
        n_max=args.n_max,
        checks=args.checks,
        output_format=args.format,
        out=args.out,
        allow_uncertified=args.allow_uncertified,
        history=getattr(args, "history", None),
        history_summary=getattr(args, "history_summary", None),
        weights=getattr(args, "weights", None),
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "catalog":
        return cmd_catalog(args.format, args.out)
    run_config = run_config_from_args(args)
    if args.command == "compute":
        return cmd_compute(run_config)
    return cmd_verify(args.identity, run_config)


if __name__ == "__main__":
    sys.exit(main())
