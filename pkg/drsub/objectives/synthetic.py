"""
Synthetic objectives with known structure, used by tests, property checks and
the query-scaling sweeps.

SyntheticConcaveQuadratic is the guaranteed-DR non-monotone family:

    f(x) = sum_j t_j (C_j - t_j) / C_j,   t_j = <w_j, x>,  w_j >= 0

The marginal of 1_e is sum_j w_je (C_j - 2 t_j - w_je) / C_j, which only
shrinks as x grows, so f is DR-submodular everywhere. With C_j at least the
largest feasible t_j, f is also non-negative on the feasible region.
"""

from typing import Sequence

import numpy as np

from drsub.core.errors import InvalidParameterError
from drsub.core.lattice import LatticeVector, ProblemInstance


class SyntheticConcaveQuadratic:
    def __init__(self, direction_weights, caps: Sequence[float]):
        weights = np.array(direction_weights, dtype=float)
        if weights.ndim == 1:
            weights = weights[np.newaxis, :]
        caps = np.array(caps, dtype=float).reshape(-1)
        if weights.shape[0] != caps.shape[0]:
            raise InvalidParameterError(
                f"{weights.shape[0]} weight rows but {caps.shape[0]} caps"
            )
        if np.any(weights < 0.0):
            raise InvalidParameterError("direction weights must be non-negative")
        if np.any(caps <= 0.0):
            raise InvalidParameterError("caps must be positive")
        weights.setflags(write=False)
        caps.setflags(write=False)
        self.direction_weights = weights
        self.caps = caps

    @property
    def n(self) -> int:
        return self.direction_weights.shape[1]

    @property
    def terms(self) -> int:
        return self.direction_weights.shape[0]

    def evaluate(self, x: LatticeVector) -> float:
        return synthetic_evaluate(self, x)

    def validate_for(self, instance: ProblemInstance) -> None:
        """Raise unless every cap covers the largest feasible projection."""
        if instance.n != self.n:
            raise InvalidParameterError(f"objective has n={self.n}, instance n={instance.n}")
        for j in range(self.terms):
            reach = max_feasible_projection(self.direction_weights[j], instance)
            if self.caps[j] < reach:
                raise InvalidParameterError(
                    f"cap C_{j}={self.caps[j]} below feasible projection {reach}"
                )

    def __repr__(self) -> str:
        return f"SyntheticConcaveQuadratic(n={self.n}, terms={self.terms})"


def synthetic_evaluate(inst: SyntheticConcaveQuadratic, x: LatticeVector) -> float:
    if x.is_zero():
        return 0.0
    items = x.items()
    index = np.fromiter((e for e, _ in items), dtype=np.int64, count=len(items))
    counts = np.fromiter((c for _, c in items), dtype=float, count=len(items))
    t = inst.direction_weights[:, index] @ counts
    return float(np.sum(t * (inst.caps - t) / inst.caps))


def max_feasible_projection(weights: np.ndarray, instance: ProblemInstance) -> float:
    """max <w, x> over ||x||_1 <= k, x <= B: fill the heaviest coordinates first."""
    remaining = instance.k
    total = 0.0
    for element in np.argsort(-weights, kind="stable"):
        if remaining == 0 or weights[element] <= 0.0:
            break
        units = min(instance.bound(int(element)), remaining)
        total += float(weights[element]) * units
        remaining -= units
    return total


def random_concave_quadratic(
    instance: ProblemInstance,
    terms: int = 3,
    seed: int = 0,
    density: float = 0.7,
    cap_range: tuple = (1.0, 3.0),
) -> SyntheticConcaveQuadratic:
    """
    Seeded member of the family for `instance`.

    Each weight is non-zero with probability `density`, but every term keeps at
    least its heaviest weight. Each cap is the largest feasible projection
    times a factor drawn from `cap_range`, so small factors give objectives
    that turn down inside the feasible region.
    """
    rng = np.random.default_rng(seed)
    raw = rng.uniform(0.0, 1.0, size=(terms, instance.n))
    keep = rng.random(size=(terms, instance.n)) < density
    empty = np.flatnonzero(~keep.any(axis=1))
    keep[empty, np.argmax(raw[empty], axis=1)] = True
    weights = raw * keep
    caps = np.empty(terms)
    for j in range(terms):
        reach = max_feasible_projection(weights[j], instance)
        caps[j] = reach * rng.uniform(*cap_range) if reach > 0.0 else 1.0
    return SyntheticConcaveQuadratic(weights, caps)


class ModularObjective:
    """f(x) = sum_e slope_e * x(e)."""

    def __init__(self, slopes: Sequence[float]):
        self.slopes = np.array(slopes, dtype=float)

    def evaluate(self, x: LatticeVector) -> float:
        return float(sum(self.slopes[e] * c for e, c in x.items()))

    def __repr__(self) -> str:
        return f"ModularObjective({self.slopes.tolist()})"


class SquareObjective:
    """f(x) = sum_e x(e)^2. Convex per coordinate: a planted non-DR objective."""

    def evaluate(self, x: LatticeVector) -> float:
        return float(sum(c * c for _, c in x.items()))

    def __repr__(self) -> str:
        return "SquareObjective()"
