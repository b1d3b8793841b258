"""Closed-form guarantees of the two solvers."""

import math

from drsub.core.errors import InvalidParameterError

# Minimizer of 8(2 - a)/(1 - a) + 1/a over (0, 1)
OPTIMAL_ALPHA = (2 * math.sqrt(2) - 1) / 7


def gamma_factor(alpha: float) -> float:
    """8(2 - alpha)/(1 - alpha) + 1/alpha; 17 + 4*sqrt(2) at OPTIMAL_ALPHA."""
    if not 0.0 < alpha < 1.0:
        raise InvalidParameterError(f"alpha must lie in (0, 1), got {alpha}")
    return 8.0 * (2.0 - alpha) / (1.0 - alpha) + 1.0 / alpha


def fast_dr_sub_ratio(alpha: float) -> float:
    return 1.0 / gamma_factor(alpha)


def fast_dr_sub_plus_ratio(epsilon: float) -> float:
    return 0.25 - epsilon


def threshold_rounds(epsilon: float) -> int:
    """Number of thresholds Gamma/(4k) * (1-eps)^r that stay >= eps*Gamma/(16k)."""
    if not 0.0 < epsilon < 1.0:
        raise InvalidParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    return int(math.floor(math.log(epsilon / 4.0) / math.log(1.0 - epsilon))) + 1
