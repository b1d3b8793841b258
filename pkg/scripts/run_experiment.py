"""
Run the experimental protocol over SNAP edge lists.

For every file: FastDrSub at alpha in {0.1, 0.3, 0.5, 0.7, 0.9}, FastDrSub+
at the default alpha with epsilon = 0.1, and the density-greedy baseline on
the reduced instance, at k/n in {0.05, ..., 0.25}. One CSV per dataset.

    python scripts/run_experiment.py data/facebook_combined.txt data/CA-AstroPh.txt --out results/
"""

import argparse
import logging
import os
import sys
from pathlib import Path

# Add project root to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from drsub.core.config import settings
from drsub.core.errors import DrSubError
from drsub.services.ingest import identify_dataset
from drsub.services.run_config import DEFAULT_ALPHA_SWEEP, DEFAULT_K_FRACTIONS, RunConfig
from drsub.services.experiments import run_sweep

logger = logging.getLogger("run_experiment")


def run_experiment(paths, out_dir: Path, repetitions: int, workers: int, track: bool) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for path in paths:
        info = identify_dataset(path)
        name = info.name if info else Path(path).stem
        config = RunConfig(
            objective="revenue",
            dataset=name,
            dataset_path=str(path),
            k_fractions=DEFAULT_K_FRACTIONS,
            algorithms=["fastdrsub", "fastdrsubplus", "density_greedy"],
            alpha_sweep=DEFAULT_ALPHA_SWEEP,
            repetitions=repetitions,
            output_path=str(out_dir / f"{name}.csv"),
            max_workers=workers,
            track_runs=track,
        )
        logger.info(f"=== {name} ===")
        try:
            reports = run_sweep(config)
        except DrSubError as e:
            logger.error(f"{name}: {e}")
            failures += 1
            continue
        logger.info(f"{name}: {len(reports)} rows -> {config.output_path}")
    return failures


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("edge_lists", nargs="+", help="SNAP edge-list files")
    parser.add_argument("--out", default="results", help="output directory")
    parser.add_argument("--repetitions", type=int, default=1, help="weight/exponent draws per cell")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--track", action="store_true", help="mirror runs to Opik")
    args = parser.parse_args()

    logging.basicConfig(level=settings.log_level.upper(), stream=sys.stderr)
    if args.track and not settings.opik_api_key:
        logger.warning("DRSUB_OPIK_API_KEY is not set. Runs will NOT be tracked.")
    failures = run_experiment(args.edge_lists, Path(args.out), args.repetitions, args.workers, args.track)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
