"""
Building blocks shared by FastDrSub and FastDrSub+.

Both binary searches lean on DR-submodularity: along one coordinate the unit
marginal f(1_e | base + (d-1) 1_e) is non-increasing in d, so "marginal >= theta"
holds on a prefix of d values. On a non-DR objective the searches still
terminate but only return some boundary point of the predicate.
"""

import logging
import math
from typing import NamedTuple, Optional

from drsub.core.errors import InvalidParameterError, SingletonRangeError
from drsub.core.lattice import LatticeVector, ProblemInstance
from drsub.oracle.counting import ValueOracle
from drsub.solvers.schema import AdditionLog

logger = logging.getLogger(__name__)


class StepResult(NamedTuple):
    units: int
    # f(base + units * 1_e) when the search evaluated it, else None
    value: Optional[float]


class SingletonChoice(NamedTuple):
    element: int
    units: int
    value: float


def largest_feasible_step(
    f: ValueOracle,
    base: LatticeVector,
    element: int,
    cap: int,
    theta: float,
) -> StepResult:
    """
    Largest d in [1, cap] with f(1_e | base + (d-1) 1_e) >= theta, or 0.

    Each bisection step costs two queries; there are ceil(log2(cap + 1)) steps.
    """
    if cap < 0:
        raise InvalidParameterError(f"negative cap {cap}")
    low, high = 0, cap
    value: Optional[float] = None
    while low < high:
        mid = (low + high + 1) // 2
        before = f.evaluate(base.add_units(element, mid - 1))
        after = f.evaluate(base.add_units(element, mid))
        if after - before >= theta:
            low = mid
            value = after
        else:
            high = mid - 1
            if mid == 1:
                value = before
    return StepResult(low, value)


def best_large_singleton(
    f: ValueOracle,
    instance: ProblemInstance,
    alpha: float,
) -> Optional[SingletonChoice]:
    """
    argmax of f(d * 1_e) over elements e and integers floor(alpha*k) < d <= min(k, B_e).

    None when every B_e <= floor(alpha*k), so no element has an in-range d.

    d -> f(d * 1_e) is concave under DR, so its peak is the largest d with a
    non-negative unit marginal. A peak left of the range clamps to the
    leftmost in-range point. Ties go to the smaller element id.
    """
    lower = math.floor(alpha * instance.k)
    if lower >= instance.k:
        raise SingletonRangeError("singleton range empty")

    zero = LatticeVector.zero()
    best: Optional[SingletonChoice] = None
    for element in range(instance.n):
        upper = min(instance.k, instance.bound(element))
        if upper <= lower:
            continue
        peak = largest_feasible_step(f, zero, element, upper, 0.0)
        if peak.units > lower:
            units, value = peak.units, peak.value
        else:
            units = lower + 1
            value = f.evaluate(LatticeVector.unit(element, units))
        if best is None or value > best.value:
            best = SingletonChoice(element, units, value)

    return best


def suffix_trim(log: AdditionLog, k: int) -> LatticeVector:
    """The longest suffix of the log whose units total at most k."""
    entries = {}
    total = 0
    for chunk in reversed(log.chunks):
        if total + chunk.units > k:
            break
        entries[chunk.element] = entries.get(chunk.element, 0) + chunk.units
        total += chunk.units
    return LatticeVector(entries)
