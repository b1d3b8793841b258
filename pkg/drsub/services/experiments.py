"""
Experiment harness: single runs, sweeps to CSV and property checks, all
driven by a RunConfig.

A sweep cell is one (repetition, algorithm, alpha, k). Each cell builds its
own objective and CountingOracle, so cells are independent and may run on a
thread pool; rows are still written in cell order.
"""

import csv
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Tuple

from pydantic import BaseModel, Field

from drsub.core.errors import (
    AuditError,
    EnumerationGuardError,
    InvalidParameterError,
    OutputError,
)
from drsub.core.lattice import LatticeVector, ProblemInstance
from drsub.objectives.revenue import build_revenue_instance
from drsub.objectives.synthetic import SquareObjective, random_concave_quadratic
from drsub.oracle.counting import ValueOracle, with_counting
from drsub.oracle.properties import (
    PropertyReport,
    check_cross_lemmas,
    check_dr_submodularity,
    check_lattice_submodularity,
)
from drsub.reduction.decompose import decompose_bounds
from drsub.reduction.exact import brute_force_opt
from drsub.reduction.greedy import density_greedy_reduced
from drsub.services.ingest import EdgeList, parse_snap_edge_list, random_graph
from drsub.services.run_config import RunConfig
from drsub.services.run_tracker import run_tracker
from drsub.solvers.fast_dr_sub import fast_dr_sub
from drsub.solvers.fast_dr_sub_plus import fast_dr_sub_plus

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "algorithm",
    "dataset",
    "n",
    "k",
    "alpha",
    "epsilon",
    "seed",
    "objective",
    "queries",
    "wall_time_ms",
]


class AlgorithmReport(BaseModel):
    algorithm: str
    dataset: str
    n: int
    k: int
    alpha: float
    epsilon: float
    seed: int
    objective: float
    queries: int
    wall_time_ms: int
    solution: Dict[int, int] = Field(default_factory=dict)

    def csv_row(self) -> List[str]:
        row = []
        for column in CSV_COLUMNS:
            value = getattr(self, column)
            row.append(format(value, ".9g") if isinstance(value, float) else str(value))
        return row


class Cell(NamedTuple):
    algorithm: str
    alpha: float
    k: int
    seed: int


class CheckSummary(BaseModel):
    objective: str
    n: int
    k: int
    reports: List[PropertyReport]

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)


# =============================================================================
# INSTANCES
# =============================================================================

@lru_cache(maxsize=8)
def _load_edges(path: str) -> EdgeList:
    return parse_snap_edge_list(path)


def load_graph(config: RunConfig) -> EdgeList:
    if config.dataset_path:
        return _load_edges(config.dataset_path)
    # the graph is fixed by the base seed; repetitions only re-draw weights
    return random_graph(config.synthetic_n, config.synthetic_edge_prob, seed=config.seed)


def ground_set_size(config: RunConfig) -> int:
    if config.objective == "revenue":
        return load_graph(config).node_count
    return config.synthetic_n


def build_cell(config: RunConfig, k: int, seed: int) -> Tuple[ValueOracle, ProblemInstance]:
    """Objective and B = k * 1 instance for one sweep cell."""
    n = ground_set_size(config)
    instance = ProblemInstance.uniform(n, k)
    if config.objective == "revenue":
        graph = load_graph(config)
        objective = build_revenue_instance(
            graph.edges,
            weight_model=config.weight_model,
            exponent_model=config.exponent_model,
            seed=seed,
            node_count=graph.node_count,
        )
    elif config.objective == "concave_quadratic":
        objective = random_concave_quadratic(instance, terms=config.synthetic_terms, seed=seed)
    else:
        objective = SquareObjective()
    return objective, instance


# =============================================================================
# RUNS
# =============================================================================

def _solve(
    algorithm: str, oracle: ValueOracle, instance: ProblemInstance, config: RunConfig, alpha: float
) -> Tuple[LatticeVector, Optional[float]]:
    """Solution and the value the solver itself reported (None if it reports none)."""
    if algorithm == "fastdrsub":
        output = fast_dr_sub(oracle, instance, alpha)
        return output.z, output.value
    if algorithm == "fastdrsubplus":
        report = fast_dr_sub_plus(oracle, instance, alpha, config.epsilon)
        return report.s, report.value
    if algorithm == "density_greedy":
        return density_greedy_reduced(decompose_bounds(instance, oracle)), None
    if algorithm == "brute_force":
        result = brute_force_opt(oracle, instance, force=config.force_exact)
        return result.argmax_vector, result.opt_value
    raise InvalidParameterError(f"unknown algorithm {algorithm!r}")


def run_single(
    config: RunConfig,
    algorithm: str,
    k: Optional[int] = None,
    alpha: Optional[float] = None,
    seed: Optional[int] = None,
) -> AlgorithmReport:
    seed = config.seed if seed is None else seed
    alpha = config.alpha if alpha is None else alpha
    if k is None:
        k = config.budgets(ground_set_size(config))[0]

    objective, instance = build_cell(config, k, seed)
    oracle = with_counting(objective)
    started = time.perf_counter()
    vector, claimed = _solve(algorithm, oracle, instance, config, alpha)
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    # audit against the raw objective so the extra query stays off the count
    audited = objective.evaluate(vector)
    if claimed is not None and audited != claimed:
        raise AuditError(f"{algorithm}: reported {claimed!r}, re-evaluated {audited!r}")

    report = AlgorithmReport(
        algorithm=algorithm,
        dataset=config.dataset_name,
        n=instance.n,
        k=k,
        alpha=alpha,
        epsilon=config.epsilon,
        seed=seed,
        objective=audited,
        queries=oracle.query_count,
        wall_time_ms=round(elapsed_ms) if config.record_timing else 0,
        solution=vector.to_dict(),
    )
    logger.info(
        f"[SWEEP] {algorithm} {report.dataset} n={report.n} k={k} "
        f"f={report.objective:.6g} queries={report.queries}"
    )
    if config.track_runs:
        run_tracker.log_run(report)
    return report


def sweep_cells(config: RunConfig) -> List[Cell]:
    budgets = config.budgets(ground_set_size(config))
    cells = []
    for repetition in range(config.repetitions):
        seed = config.seed + repetition
        for algorithm in config.algorithms:
            for alpha in config.alphas_for(algorithm):
                for k in budgets:
                    cells.append(Cell(algorithm, alpha, k, seed))
    return cells


def _require_writable(path: Path) -> None:
    parent = path.parent if str(path.parent) else Path(".")
    if not parent.is_dir():
        raise OutputError(f"output directory {parent} does not exist")
    if path.exists() and (path.is_dir() or not os.access(path, os.W_OK)):
        raise OutputError(f"cannot write {path}")
    if not path.exists() and not os.access(parent, os.W_OK):
        raise OutputError(f"cannot create files in {parent}")


def write_csv(path: Path, reports: List[AlgorithmReport]) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for report in reports:
            writer.writerow(report.csv_row())


def run_sweep(config: RunConfig) -> List[AlgorithmReport]:
    output = Path(config.output_path)
    _require_writable(output)
    cells = sweep_cells(config)
    logger.info(f"[SWEEP] {len(cells)} cells on {config.dataset_name} -> {output}")

    def run_cell(cell: Cell) -> Optional[AlgorithmReport]:
        try:
            return run_single(config, cell.algorithm, k=cell.k, alpha=cell.alpha, seed=cell.seed)
        except (InvalidParameterError, EnumerationGuardError) as e:
            logger.warning(f"[SWEEP] skipped {cell.algorithm} k={cell.k} alpha={cell.alpha:.4g}: {e}")
            return None

    if config.max_workers > 1:
        with ThreadPoolExecutor(max_workers=config.max_workers) as executor:
            results = list(executor.map(run_cell, cells))
    else:
        results = [run_cell(cell) for cell in cells]

    reports = [report for report in results if report is not None]
    write_csv(output, reports)
    for algorithm, stats in run_tracker.summarize_reports(reports).items():
        logger.info(
            f"[SWEEP] {algorithm}: {stats['runs']} runs, mean f={stats['mean_objective']:.6g}, "
            f"mean queries={stats['mean_queries']:.1f}"
        )
    return reports


# =============================================================================
# PROPERTY CHECKS
# =============================================================================

def check_command(config: RunConfig, k: Optional[int] = None) -> Tuple[CheckSummary, int]:
    """Run every checker on the configured objective; exit status 1 on any violation."""
    if k is None:
        k = config.budgets(ground_set_size(config))[0]
    objective, instance = build_cell(config, k, config.seed)
    options = dict(samples=config.samples, seed=config.seed, tolerance=config.tolerance)
    cross = check_cross_lemmas(objective, instance, **options)
    reports = [
        check_dr_submodularity(objective, instance, **options),
        check_lattice_submodularity(objective, instance, **options),
        *cross.reports,
    ]
    summary = CheckSummary(objective=config.objective, n=instance.n, k=k, reports=reports)
    if config.track_runs:
        run_tracker.log_property_check(config.objective, reports)
    return summary, 0 if summary.passed else 1
