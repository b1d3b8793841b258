"""
FastDrSub+: threshold-greedy refinement reaching 1/4 - epsilon.

FastDrSub's value, scaled by its own guarantee, bounds the optimum by Gamma.
Thresholds then decay geometrically from Gamma/(4k) to epsilon*Gamma/(16k).
For each threshold and element, three vectors take the largest chunk whose
last unit still clears the threshold: z greedily, x and y competitively so
that an element lives in at most one of them.
"""

import logging

from drsub.core.config import settings
from drsub.core.errors import InvalidParameterError
from drsub.core.lattice import LatticeVector, ProblemInstance
from drsub.oracle.counting import ValueOracle, ensure_counting
from drsub.solvers.bounds import gamma_factor
from drsub.solvers.fast_dr_sub import argmax_candidate, fast_dr_sub
from drsub.solvers.schema import AcceptanceRecord, Candidate, FastDrSubPlusReport, ThresholdState
from drsub.solvers.subroutines import largest_feasible_step

logger = logging.getLogger(__name__)


def _cap(instance: ProblemInstance, vector: LatticeVector, element: int) -> int:
    return min(instance.k - vector.norm1, instance.slack(vector, element))


def fast_dr_sub_plus(
    f: ValueOracle,
    instance: ProblemInstance,
    alpha: float = settings.default_alpha,
    epsilon: float = settings.default_epsilon,
    record_trace: bool = False,
) -> FastDrSubPlusReport:
    if not 0.0 < epsilon < 1.0:
        raise InvalidParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    oracle = ensure_counting(f)
    start = oracle.query_count
    k = instance.k

    seed_output = fast_dr_sub(oracle, instance, alpha)
    seed_candidate = Candidate(label="s_prime", vector=seed_output.z, value=seed_output.value)
    gamma = seed_output.value * gamma_factor(alpha) if k > 0 else 0.0
    trace = [] if record_trace else None

    zero = LatticeVector.zero()
    if gamma <= 0.0:
        # theta would stay at 0 forever; only s' and 0 compete
        candidates = [seed_candidate, Candidate(label="zero", vector=zero, value=oracle.evaluate(zero))]
        best = argmax_candidate(candidates)
        return FastDrSubPlusReport(
            s=best.vector,
            value=best.value,
            chosen=best.label,
            candidates=candidates,
            seed_output=seed_output,
            gamma=gamma,
            rounds=0,
            query_count=oracle.query_count - start,
            acceptance_trace=trace,
        )

    f_zero = oracle.evaluate(zero)
    state = ThresholdState(fx=f_zero, fy=f_zero, fz=f_zero, theta=gamma / (4 * k), gamma=gamma)
    stop = epsilon * gamma / (16 * k)
    rounds = 0

    while state.theta >= stop:
        theta = state.theta
        for element in range(instance.n):
            x, y = state.x, state.y
            dx, vx = largest_feasible_step(oracle, x, element, _cap(instance, x, element), theta)
            dy, vy = largest_feasible_step(oracle, y, element, _cap(instance, y, element), theta)
            dz, vz = largest_feasible_step(
                oracle, state.z, element, _cap(instance, state.z, element), theta
            )
            if dz > 0:
                state.z = state.z.add_units(element, dz)
                state.fz = vz

            in_x, in_y = element in x, element in y
            if dx == 0 and dy == 0 and not in_x and not in_y:
                continue

            top_x = vx if dx > 0 else state.fx
            top_y = vy if dy > 0 else state.fy
            base_x = oracle.evaluate(x.without(element)) if in_x else state.fx
            base_y = oracle.evaluate(y.without(element)) if in_y else state.fy

            if top_x - base_x >= top_y - base_y:
                if trace is not None and dx > 0:
                    trace.append(
                        AcceptanceRecord(round=rounds, element=element, units=dx, theta=theta, base=x)
                    )
                state.x = x.add_units(element, dx)
                state.fx = top_x
                if in_y:
                    state.y = y.without(element)
                    state.fy = base_y
            else:
                state.y = y.add_units(element, dy)
                state.fy = top_y
                if in_x:
                    state.x = x.without(element)
                    state.fx = base_x
            assert not (element in state.x and element in state.y), "x and y supports overlap"

        state.theta = (1.0 - epsilon) * theta
        rounds += 1

    candidates = [
        seed_candidate,
        Candidate(label="x", vector=state.x, value=state.fx),
        Candidate(label="y", vector=state.y, value=state.fy),
        Candidate(label="z", vector=state.z, value=state.fz),
    ]
    best = argmax_candidate(candidates)
    assert instance.is_feasible(best.vector), f"infeasible output {best.vector!r}"

    queries = oracle.query_count - start
    logger.debug(
        f"[SOLVER] fastdrsub+ n={instance.n} k={k} eps={epsilon} rounds={rounds} "
        f"picked {best.label} value={best.value:.6g} queries={queries}"
    )
    return FastDrSubPlusReport(
        s=best.vector,
        value=best.value,
        chosen=best.label,
        candidates=candidates,
        seed_output=seed_output,
        gamma=gamma,
        rounds=rounds,
        query_count=queries,
        acceptance_trace=trace,
    )
