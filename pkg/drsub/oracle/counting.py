"""
Value oracles and query accounting.

Every solver talks to its objective exclusively through `evaluate`, so wrapping
the objective in a CountingOracle measures exactly the query complexity the
analysis refers to. Nothing is memoized unless a CachedOracle is layered in
explicitly.
"""

from typing import Callable, Dict, Optional, Protocol, runtime_checkable

from drsub.core.lattice import LatticeVector, ProblemInstance


@runtime_checkable
class ValueOracle(Protocol):
    """Black box returning f(x) for any x in the box 0 <= x <= B."""

    def evaluate(self, x: LatticeVector) -> float:
        ...


class CallableObjective:
    """Adapts a plain function of a LatticeVector into a ValueOracle."""

    def __init__(self, func: Callable[[LatticeVector], float], name: str = "callable"):
        self.func = func
        self.name = name

    def evaluate(self, x: LatticeVector) -> float:
        return float(self.func(x))

    def __repr__(self) -> str:
        return f"CallableObjective({self.name})"


class CountingOracle:
    """
    Value-transparent wrapper counting evaluate calls.

    The counter is not synchronized: a CountingOracle belongs to one worker.
    Concurrent cells each get their own wrapper.
    """

    def __init__(self, inner: ValueOracle):
        self.inner = inner
        self.query_count = 0

    def evaluate(self, x: LatticeVector) -> float:
        self.query_count += 1
        return self.inner.evaluate(x)

    def reset(self) -> None:
        self.query_count = 0

    def __repr__(self) -> str:
        return f"CountingOracle({self.inner!r}, queries={self.query_count})"


class CachedOracle:
    """
    Memoizing layer. Off in all benchmarks: stacking it under a CountingOracle
    would make repeated evaluations free and deflate query counts.
    """

    def __init__(self, inner: ValueOracle, max_entries: Optional[int] = None):
        self.inner = inner
        self.max_entries = max_entries
        self._cache: Dict[LatticeVector, float] = {}
        self.hits = 0

    def evaluate(self, x: LatticeVector) -> float:
        value = self._cache.get(x)
        if value is not None:
            self.hits += 1
            return value
        value = self.inner.evaluate(x)
        if self.max_entries is None or len(self._cache) < self.max_entries:
            self._cache[x] = value
        return value

    def clear(self) -> None:
        self._cache.clear()
        self.hits = 0


def with_counting(f: ValueOracle) -> CountingOracle:
    return CountingOracle(f)


def ensure_counting(f: ValueOracle) -> CountingOracle:
    """Reuse an existing counter so nested solvers share one tally."""
    return f if isinstance(f, CountingOracle) else CountingOracle(f)


def marginal_gain(
    f: ValueOracle,
    delta: LatticeVector,
    base: LatticeVector,
    instance: Optional[ProblemInstance] = None,
) -> float:
    """
    f(delta | base) = f(base + delta) - f(base), two queries.

    With an instance, base + delta is checked against the box first and a
    DomainError is raised instead of querying outside it.
    """
    composed = base.plus(delta)
    if instance is not None:
        instance.require_box(composed)
    return f.evaluate(composed) - f.evaluate(base)
