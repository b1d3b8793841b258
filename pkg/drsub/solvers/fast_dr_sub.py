"""
FastDrSub: deterministic constant-factor solver with O(n log k) queries.

Two disjoint vectors x and y are grown in one pass over the ground set, each
element contributing at most floor(alpha*k) units to whichever vector gains
more under a value-dependent threshold f(.)/k. Both vectors are then trimmed
to their longest suffix fitting the budget and compared against the best
singleton with more than floor(alpha*k) units.
"""

import logging
import math

from drsub.core.config import settings
from drsub.core.errors import InvalidParameterError
from drsub.core.lattice import LatticeVector, ProblemInstance
from drsub.oracle.counting import ValueOracle, ensure_counting
from drsub.solvers.schema import AdditionLog, Candidate, FastDrSubOutput
from drsub.solvers.subroutines import best_large_singleton, largest_feasible_step, suffix_trim

logger = logging.getLogger(__name__)


def validate_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise InvalidParameterError(f"alpha must lie in (0, 1), got {alpha}")


def argmax_candidate(candidates: list) -> Candidate:
    """First candidate with the largest value."""
    best = candidates[0]
    for candidate in candidates[1:]:
        if candidate.value > best.value:
            best = candidate
    return best


def fast_dr_sub(
    f: ValueOracle,
    instance: ProblemInstance,
    alpha: float = settings.default_alpha,
) -> FastDrSubOutput:
    validate_alpha(alpha)
    oracle = ensure_counting(f)
    start = oracle.query_count
    k = instance.k
    zero = LatticeVector.zero()

    if k == 0:
        value = oracle.evaluate(zero)
        candidate = Candidate(label="zero", vector=zero, value=value)
        return FastDrSubOutput(
            z=zero, value=value, candidates=[candidate], query_count=oracle.query_count - start
        )

    singleton = best_large_singleton(oracle, instance, alpha)
    step_cap = math.floor(alpha * k)

    f_zero = oracle.evaluate(zero)
    x, y = zero, zero
    fx, fy = f_zero, f_zero
    x_log, y_log = AdditionLog(), AdditionLog()

    for element in range(instance.n):
        # e has not been seen yet, so x(e) = y(e) = 0
        cap = min(step_cap, instance.bound(element))
        if cap == 0:
            continue
        dx, vx = largest_feasible_step(oracle, x, element, cap, fx / k)
        dy, vy = largest_feasible_step(oracle, y, element, cap, fy / k)
        if dx == 0 and dy == 0:
            continue
        gain_x = vx - fx if dx > 0 else 0.0
        gain_y = vy - fy if dy > 0 else 0.0
        if gain_x >= gain_y:
            if dx > 0:
                x = x.add_units(element, dx)
                fx = vx
                x_log.append(element, dx, vx)
        elif dy > 0:
            y = y.add_units(element, dy)
            fy = vy
            y_log.append(element, dy, vy)

    x_trim = suffix_trim(x_log, k)
    y_trim = suffix_trim(y_log, k)
    fx_trim = fx if x_trim.norm1 == x.norm1 else oracle.evaluate(x_trim)
    fy_trim = fy if y_trim.norm1 == y.norm1 else oracle.evaluate(y_trim)

    candidates = [
        Candidate(label="x_prime", vector=x_trim, value=fx_trim),
        Candidate(label="y_prime", vector=y_trim, value=fy_trim),
    ]
    # no singleton candidate when every B_e <= floor(alpha * k)
    if singleton is not None:
        candidates.append(
            Candidate(
                label="singleton",
                vector=LatticeVector.unit(singleton.element, singleton.units),
                value=singleton.value,
            )
        )
    best = argmax_candidate(candidates)
    assert instance.is_feasible(best.vector), f"infeasible output {best.vector!r}"

    queries = oracle.query_count - start
    logger.debug(
        f"[SOLVER] fastdrsub n={instance.n} k={k} alpha={alpha:.4f} "
        f"picked {best.label} value={best.value:.6g} queries={queries}"
    )
    return FastDrSubOutput(
        z=best.vector,
        value=best.value,
        candidates=candidates,
        query_count=queries,
        x_full=x,
        y_full=y,
        x_log=x_log,
        y_log=y_log,
    )
