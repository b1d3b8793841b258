"""
Exhaustive ground truth for micro-instances.

Points are visited by non-decreasing norm, then lexicographically on the
dense coordinate tuple; the first point reaching the maximum wins, which
fixes the argmax tie-break.
"""

import logging
from typing import Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from drsub.core.config import settings
from drsub.core.errors import EnumerationGuardError
from drsub.core.lattice import LatticeVector, ProblemInstance
from drsub.oracle.counting import ValueOracle

logger = logging.getLogger(__name__)


class ExactResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    argmax_vector: LatticeVector
    opt_value: float
    states_enumerated: int


def _compositions(bounds: Tuple[int, ...], total: int) -> Iterator[List[int]]:
    """Dense vectors with entries 0..bounds[i] summing to `total`, lexicographically."""
    n = len(bounds)
    # suffix_room[i] = most units coordinates i.. can absorb
    suffix_room = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_room[i] = suffix_room[i + 1] + bounds[i]
    current = [0] * n

    def fill(i: int, remaining: int) -> Iterator[List[int]]:
        if i == n:
            if remaining == 0:
                yield current
            return
        low = max(0, remaining - suffix_room[i + 1])
        for count in range(low, min(bounds[i], remaining) + 1):
            current[i] = count
            yield from fill(i + 1, remaining - count)
        current[i] = 0

    yield from fill(0, total)


def feasible_points(instance: ProblemInstance) -> Iterator[LatticeVector]:
    bounds = tuple(min(b, instance.k) for b in instance.bounds)
    for norm in range(instance.k + 1):
        for dense in _compositions(bounds, norm):
            yield LatticeVector({e: c for e, c in enumerate(dense) if c})


def brute_force_opt(
    f: ValueOracle,
    instance: ProblemInstance,
    force: bool = False,
    max_n: Optional[int] = None,
    max_k: Optional[int] = None,
) -> ExactResult:
    max_n = settings.exact_max_n if max_n is None else max_n
    max_k = settings.exact_max_k if max_k is None else max_k
    if not force and (instance.n > max_n or instance.k > max_k):
        raise EnumerationGuardError(
            f"brute force limited to n <= {max_n}, k <= {max_k} "
            f"(got n={instance.n}, k={instance.k}); pass force to override"
        )

    best_vector: Optional[LatticeVector] = None
    best_value = float("-inf")
    states = 0
    for point in feasible_points(instance):
        states += 1
        value = f.evaluate(point)
        if value > best_value:
            best_vector, best_value = point, value

    logger.debug(f"[EXACT] n={instance.n} k={instance.k}: {states} states, opt={best_value:.6g}")
    return ExactResult(argmax_vector=best_vector, opt_value=best_value, states_enumerated=states)
