"""
Sampled checkers for the structural assumptions the solvers rely on:
DR-submodularity, lattice submodularity, and the two cross lemmas used in the
approximation analysis.

Sampling is reproducible from the seed. A point is drawn by choosing a uniform
support size, a uniform support of that size, then uniform counts subject to
the box and the size budget. Dominating points are the drawn point plus a
uniform number of extra units placed on uniformly chosen elements with slack.
All sampled points stay inside the feasible region ||x||_1 <= k, x <= B.

A sample is a violation when lhs < rhs - tolerance * max(1, |lhs|, |rhs|).
Violations are reported with their witnesses, never suppressed.
"""

import logging
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from drsub.core.config import settings
from drsub.core.lattice import LatticeVector, ProblemInstance
from drsub.oracle.counting import ValueOracle

logger = logging.getLogger(__name__)


class Violation(BaseModel):
    """One failed inequality lhs >= rhs with the points that produced it."""

    witness: Dict[str, Any] = Field(description="Vectors (as dicts) and scalars of the sample")
    lhs: float
    rhs: float

    @property
    def magnitude(self) -> float:
        return self.rhs - self.lhs


class PropertyReport(BaseModel):
    check: str
    samples_tested: int = 0
    violations: List[Violation] = Field(default_factory=list)
    max_violation_magnitude: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, witness: Dict[str, Any], lhs: float, rhs: float, tolerance: float) -> None:
        """Count one sample of lhs >= rhs and keep it if it fails."""
        self.samples_tested += 1
        if lhs < rhs - tolerance * max(1.0, abs(lhs), abs(rhs)):
            self.violations.append(Violation(witness=witness, lhs=lhs, rhs=rhs))
            self.max_violation_magnitude = max(self.max_violation_magnitude, rhs - lhs)

    def summary(self) -> str:
        status = "ok" if self.passed else f"{len(self.violations)} violations"
        return (
            f"{self.check}: {self.samples_tested} samples, {status}, "
            f"max magnitude {self.max_violation_magnitude:.3g}"
        )


class CrossLemmaReport(BaseModel):
    """Disjoint-join and repeated-unit inequalities, reported separately."""

    disjoint_join: PropertyReport
    repeated_units: PropertyReport

    @property
    def passed(self) -> bool:
        return self.disjoint_join.passed and self.repeated_units.passed

    @property
    def reports(self) -> List[PropertyReport]:
        return [self.disjoint_join, self.repeated_units]


# =============================================================================
# SAMPLING
# =============================================================================


def _witness(vector: LatticeVector) -> Dict[int, int]:
    return vector.to_dict()


def sample_vector(
    rng: np.random.Generator,
    instance: ProblemInstance,
    max_norm: int,
    base: Optional[LatticeVector] = None,
) -> LatticeVector:
    """
    Uniform support size, uniform support, uniform counts.

    With `base`, counts are drawn for elements outside the base support only,
    so the result is disjoint from it.
    """
    if base is None:
        candidates = np.arange(instance.n)
    else:
        candidates = np.array([e for e in range(instance.n) if e not in base], dtype=int)
    size_cap = min(len(candidates), max(max_norm, 0))
    if size_cap == 0:
        return LatticeVector.zero()
    size = int(rng.integers(0, size_cap + 1))
    chosen = np.sort(rng.choice(candidates, size=size, replace=False))
    remaining = max_norm
    entries: Dict[int, int] = {}
    for i, element in enumerate(chosen):
        reserve = size - i - 1
        high = min(instance.bound(int(element)), remaining - reserve)
        count = int(rng.integers(1, high + 1))
        entries[int(element)] = count
        remaining -= count
    return LatticeVector(entries)


def sample_extension(
    rng: np.random.Generator,
    instance: ProblemInstance,
    x: LatticeVector,
    max_norm: int,
) -> LatticeVector:
    """y >= x with ||y||_1 <= max_norm: x plus a uniform number of extra units."""
    room = max_norm - x.norm1
    if room <= 0:
        return x
    extra = int(rng.integers(0, room + 1))
    y = x
    for _ in range(extra):
        element = int(rng.integers(0, instance.n))
        if instance.slack(y, element) > 0:
            y = y.add_units(element, 1)
    return y


def _pick_element_with_slack(
    rng: np.random.Generator, instance: ProblemInstance, y: LatticeVector
) -> Optional[int]:
    open_elements = [e for e in range(instance.n) if instance.slack(y, e) > 0]
    if not open_elements:
        return None
    return open_elements[int(rng.integers(0, len(open_elements)))]


# =============================================================================
# CHECKERS
# =============================================================================


def check_dr_submodularity(
    f: ValueOracle,
    instance: ProblemInstance,
    samples: int = settings.checker_samples,
    seed: int = 0,
    tolerance: float = settings.checker_tolerance,
) -> PropertyReport:
    """f(1_e | x) >= f(1_e | y) for sampled x <= y, four queries per sample."""
    report = PropertyReport(check="dr_submodularity")
    if instance.k == 0:
        return report
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x = sample_vector(rng, instance, instance.k - 1)
        y = sample_extension(rng, instance, x, instance.k - 1)
        element = _pick_element_with_slack(rng, instance, y)
        if element is None:
            continue
        gain_x = f.evaluate(x.add_units(element, 1)) - f.evaluate(x)
        gain_y = f.evaluate(y.add_units(element, 1)) - f.evaluate(y)
        report.record(
            {"x": _witness(x), "y": _witness(y), "e": element}, gain_x, gain_y, tolerance
        )
    _log_report(report)
    return report


def check_lattice_submodularity(
    f: ValueOracle,
    instance: ProblemInstance,
    samples: int = settings.checker_samples,
    seed: int = 0,
    tolerance: float = settings.checker_tolerance,
) -> PropertyReport:
    """f(x) + f(y) >= f(x v y) + f(x ^ y) on sampled feasible pairs."""
    report = PropertyReport(check="lattice_submodularity")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x = sample_vector(rng, instance, instance.k)
        y = sample_vector(rng, instance, instance.k)
        lhs = f.evaluate(x) + f.evaluate(y)
        rhs = f.evaluate(x.join(y)) + f.evaluate(x.meet(y))
        report.record({"x": _witness(x), "y": _witness(y)}, lhs, rhs, tolerance)
    _log_report(report)
    return report


def check_cross_lemmas(
    f: ValueOracle,
    instance: ProblemInstance,
    samples: int = settings.checker_samples,
    seed: int = 0,
    tolerance: float = settings.checker_tolerance,
) -> CrossLemmaReport:
    """
    Disjoint joins: f(s v x) + f(s v y) >= f(s) whenever x ^ y = 0.
    Repeated units: t * f(1_e | x) >= f(t * 1_e | x) for t >= 0.

    Both assume a non-negative DR-submodular f; the caller asserts that.
    """
    disjoint = PropertyReport(check="disjoint_join")
    repeated = PropertyReport(check="repeated_units")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        # s takes at most half the budget; s + x + y stays within k
        s = sample_vector(rng, instance, instance.k // 2)
        room = instance.k - s.norm1
        x = sample_vector(rng, instance, room)
        y = sample_vector(rng, instance, room - x.norm1, base=x)
        disjoint.record(
            {"s": _witness(s), "x": _witness(x), "y": _witness(y)},
            f.evaluate(s.join(x)) + f.evaluate(s.join(y)),
            f.evaluate(s),
            tolerance,
        )

        if instance.k == 0:
            continue
        base = sample_vector(rng, instance, instance.k - 1)
        element = _pick_element_with_slack(rng, instance, base)
        if element is None:
            continue
        t_max = min(instance.slack(base, element), instance.k - base.norm1)
        t = int(rng.integers(0, t_max + 1))
        f_base = f.evaluate(base)
        single = f.evaluate(base.add_units(element, 1)) - f_base
        repeated_gain = f.evaluate(base.add_units(element, t)) - f_base
        repeated.record(
            {"x": _witness(base), "e": element, "t": t}, t * single, repeated_gain, tolerance
        )
    report = CrossLemmaReport(disjoint_join=disjoint, repeated_units=repeated)
    for part in report.reports:
        _log_report(part)
    return report


def _log_report(report: PropertyReport) -> None:
    logger.info(f"[CHECK] {report.summary()}")
    for violation in report.violations[:5]:
        logger.warning(
            f"[CHECK] {report.check} witness {violation.witness}: "
            f"lhs={violation.lhs!r} < rhs={violation.rhs!r}"
        )
