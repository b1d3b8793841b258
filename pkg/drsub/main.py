"""
Command-line entry point.

    python -m drsub run    --config sweep.cfg --algorithm fastdrsubplus --k 20
    python -m drsub sweep  --config sweep.cfg --out results.csv
    python -m drsub check  --config check.cfg --samples 10000
    python -m drsub exact  --config tiny.cfg --k 6 --force-exact
    python -m drsub reduce --config sweep.cfg --k 200

Results go to stdout (JSON, CSV on disk for `sweep`); diagnostics to stderr.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from drsub.core.config import settings
from drsub.core.errors import DrSubError
from drsub.oracle.counting import with_counting
from drsub.reduction.decompose import reduction_stats
from drsub.reduction.exact import brute_force_opt
from drsub.services.experiments import build_cell, check_command, ground_set_size, run_single, run_sweep
from drsub.services.run_config import load_run_config

logger = logging.getLogger("drsub")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drsub",
        description="DR-submodular maximization on the integer lattice under a size constraint.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat 'key = value' run configuration")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", dest="output_path", help="CSV results path")
    common.add_argument("--samples", type=int, help="samples per property check")
    common.add_argument("--tolerance", type=float, help="relative tolerance for property checks")
    common.add_argument(
        "--force-exact", dest="force_exact", action="store_true", default=None,
        help="override the brute-force enumeration guard",
    )
    common.add_argument("--alpha", type=float)
    common.add_argument("--epsilon", type=float)

    # sweep takes its budgets from the config only
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--k", type=int, help="size budget (defaults to the first sweep column)")

    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common, budget], help="one algorithm on one budget")
    run.add_argument(
        "--algorithm", default="fastdrsubplus",
        choices=["fastdrsub", "fastdrsubplus", "density_greedy", "brute_force"],
    )
    sub.add_parser("sweep", parents=[common], help="algorithms x budgets grid to CSV")
    sub.add_parser("check", parents=[common, budget], help="DR / lattice / cross-lemma property suites")
    sub.add_parser("exact", parents=[common, budget], help="brute-force optimum of a micro-instance")
    sub.add_parser("reduce", parents=[common, budget], help="lattice-to-set reduction statistics")
    return parser


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, default=str))


def dispatch(args: argparse.Namespace) -> int:
    overrides = {
        key: getattr(args, key)
        for key in ("seed", "output_path", "samples", "tolerance", "force_exact", "alpha", "epsilon")
    }
    config = load_run_config(args.config, overrides)

    if args.command == "run":
        report = run_single(config, args.algorithm, k=args.k)
        _print_json(report.model_dump())
        return 0

    if args.command == "sweep":
        reports = run_sweep(config)
        print(f"wrote {len(reports)} rows to {config.output_path}")
        return 0

    if args.command == "check":
        summary, status = check_command(config, k=args.k)
        print(f"{summary.objective} n={summary.n} k={summary.k}")
        for report in summary.reports:
            print(f"  {report.summary()}")
            for violation in report.violations:
                print(f"    witness {violation.witness}: lhs={violation.lhs!r} rhs={violation.rhs!r}")
        return status

    k = args.k if args.k is not None else config.budgets(ground_set_size(config))[0]
    objective, instance = build_cell(config, k, config.seed)

    if args.command == "exact":
        oracle = with_counting(objective)
        result = brute_force_opt(oracle, instance, force=config.force_exact)
        _print_json({
            "n": instance.n,
            "k": k,
            "opt_value": result.opt_value,
            "argmax_vector": result.argmax_vector.to_dict(),
            "states_enumerated": result.states_enumerated,
            "queries": oracle.query_count,
        })
        return 0

    # reduce
    _, stats = reduction_stats(instance)
    _print_json(stats.model_dump())
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )
    try:
        return dispatch(args)
    except (DrSubError, ValidationError) as e:
        if isinstance(e, ValidationError):
            message = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
        else:
            message = str(e)
        print(f"drsub {args.command}: {message}", file=sys.stderr)
        logger.debug("command failed", exc_info=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
