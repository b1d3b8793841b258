"""Density-greedy baseline on the reduced knapsack instance."""

import heapq
import logging

from drsub.core.errors import ReductionError
from drsub.core.lattice import LatticeVector
from drsub.reduction.decompose import ReducedInstance

logger = logging.getLogger(__name__)


def density_greedy_reduced(reduced: ReducedInstance) -> LatticeVector:
    """
    Lazy marginal-density greedy subject to c(S) <= k, then the better of the
    greedy set and the best single item.

    Stale densities are upper bounds only when g is submodular; on other
    objectives the lazy order is a heuristic, which is all a baseline needs.
    """
    f = reduced.oracle
    if f is None:
        raise ReductionError("reduced instance has no origin oracle")
    budget = reduced.budget
    zero = LatticeVector.zero()
    f_zero = f.evaluate(zero)

    heap = []
    best_single, best_single_value = zero, f_zero
    for index, item in enumerate(reduced.items):
        if item.weight > budget:
            continue
        single = LatticeVector.unit(item.element, item.weight)
        value = f.evaluate(single)
        if value > best_single_value:
            best_single, best_single_value = single, value
        heapq.heappush(heap, (-(value - f_zero) / item.weight, index))

    x, value, cost = zero, f_zero, 0
    while heap:
        _, index = heapq.heappop(heap)
        item = reduced.items[index]
        if cost + item.weight > budget:
            continue
        candidate = x.add_units(item.element, item.weight)
        candidate_value = f.evaluate(candidate)
        density = (candidate_value - value) / item.weight
        if heap and density < -heap[0][0]:
            heapq.heappush(heap, (-density, index))
            continue
        if density <= 0.0:
            break
        x, value, cost = candidate, candidate_value, cost + item.weight

    logger.debug(
        f"[REDUCTION] density greedy cost={cost}/{budget} value={value:.6g} "
        f"best single={best_single_value:.6g}"
    )
    return x if value >= best_single_value else best_single
