"""Command-line entry point: list suites, run experiments, build reports.

Exit codes: 0 success, 1 runtime error, 2 usage error. BLACKBENCH_SEED
overrides --seed for both run and postprocess.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .harness import ExperimentConfig, run_experiment
from .report import build_report
from .suite import registered_suites


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blackbench",
        description="Benchmark continuous black-box optimizers and post-process the results.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("suites", help="list registered suites and their problem counts")

    run = sub.add_parser("run", help="run an optimizer over a suite")
    run.add_argument("--suite", required=True)
    run.add_argument("--optimizer", default="random-search")
    run.add_argument("--budget-multiplier", type=float, default=10.0,
                     help="max evaluations per problem = dimension * this")
    run.add_argument("--seed", type=int, default=1)
    run.add_argument("--out", required=True, help="result folder to create")
    run.add_argument("--dimensions", type=_int_list, default=None,
                     help="comma-separated subset of the suite's dimensions")
    run.add_argument("--instances", type=_int_list, default=None,
                     help="comma-separated subset of the suite's instances")
    run.add_argument("--algorithm-name", default=None,
                     help="label for the report (defaults to the optimizer id)")
    run.add_argument("--algorithm-info", default="")

    post = sub.add_parser("postprocess", help="build a static report from a result folder")
    post.add_argument("folder", help="result folder produced by run")
    post.add_argument("--out", required=True, help="report folder")
    post.add_argument("--seed", type=int, default=1,
                      help="seed for simulated-restart fills")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0

    env_seed = os.environ.get("BLACKBENCH_SEED")
    if env_seed is not None and hasattr(args, "seed"):
        try:
            args.seed = int(env_seed)
        except ValueError:
            print(f"error: BLACKBENCH_SEED={env_seed!r} is not an integer", file=sys.stderr)
            return 1

    try:
        if args.command == "suites":
            for name, spec in sorted(registered_suites().items()):
                print(f"{name} {spec.problem_count}")
        elif args.command == "run":
            folder = run_experiment(ExperimentConfig(
                suite=args.suite,
                optimizer=args.optimizer,
                budget_multiplier=args.budget_multiplier,
                seed=args.seed,
                result_folder=args.out,
                dimensions=args.dimensions,
                instances=args.instances,
                algorithm_name=args.algorithm_name,
                algorithm_info=args.algorithm_info,
            ))
            print(f"experiment data written to {folder}")
        elif args.command == "postprocess":
            bundle = build_report(args.folder, args.out, args.seed)
            print(f"report written to {bundle.index_file} "
                  f"({len(bundle.plot_files)} plots)")
    except Exception as exc:  # runtime failures map to exit 1 with a message
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def console_main() -> None:
    sys.exit(main())
