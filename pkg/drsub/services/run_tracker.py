"""
Run tracking for Opik - mirrors solver reports and property checks as traces.
"""
import logging
from typing import Any, Dict, List

try:
    from opik import Opik
    OPIK_AVAILABLE = True
except ImportError:
    OPIK_AVAILABLE = False
    Opik = None

from drsub.core.config import settings

logger = logging.getLogger(__name__)

# Initialize client
try:
    if OPIK_AVAILABLE and settings.opik_api_key:
        opik_client = Opik(api_key=settings.opik_api_key, project_name=settings.opik_project_name)
    else:
        opik_client = None
except Exception:
    opik_client = None


class RunTracker:
    """
    Logs experiment events to Opik. Every method is a no-op without a client,
    and tracking failures are logged rather than raised.
    """

    @staticmethod
    def log_run(report) -> None:
        """Log one AlgorithmReport."""
        if not opik_client:
            return

        try:
            trace = opik_client.trace(
                name="solver_run",
                input={"algorithm": report.algorithm, "dataset": report.dataset, "k": report.k},
                output={"objective": report.objective, "queries": report.queries},
                metadata={
                    "n": report.n,
                    "alpha": report.alpha,
                    "epsilon": report.epsilon,
                    "seed": report.seed,
                    "wall_time_ms": report.wall_time_ms,
                },
            )
            trace.end()
            logger.debug(f"[OPIK] Logged run: {report.algorithm} k={report.k}")

        except Exception as e:
            logger.warning(f"[OPIK] Error logging run: {e}")

    @staticmethod
    def log_property_check(objective: str, reports: List[Any]) -> None:
        """Log the outcome of one `check` invocation."""
        if not opik_client:
            return

        try:
            trace = opik_client.trace(
                name="property_check",
                input={"objective": objective},
                output={r.check: r.passed for r in reports},
                metadata={
                    r.check: {
                        "samples": r.samples_tested,
                        "violations": len(r.violations),
                        "max_violation": r.max_violation_magnitude,
                    }
                    for r in reports
                },
            )
            trace.end()
            logger.debug(f"[OPIK] Logged property check on {objective}")

        except Exception as e:
            logger.warning(f"[OPIK] Error logging property check: {e}")

    @staticmethod
    def summarize_reports(reports: List[Any]) -> Dict[str, Any]:
        """
        Per-algorithm aggregates of a sweep.

        Returns, for each algorithm:
            - runs: number of rows
            - mean_objective / mean_queries
            - total_wall_time_ms
        """
        summary: Dict[str, Dict[str, Any]] = {}
        for report in reports:
            entry = summary.setdefault(
                report.algorithm,
                {"runs": 0, "objective_sum": 0.0, "queries_sum": 0, "total_wall_time_ms": 0},
            )
            entry["runs"] += 1
            entry["objective_sum"] += report.objective
            entry["queries_sum"] += report.queries
            entry["total_wall_time_ms"] += report.wall_time_ms

        return {
            algorithm: {
                "runs": entry["runs"],
                "mean_objective": entry["objective_sum"] / entry["runs"],
                "mean_queries": entry["queries_sum"] / entry["runs"],
                "total_wall_time_ms": entry["total_wall_time_ms"],
            }
            for algorithm, entry in summary.items()
        }


run_tracker = RunTracker()
