"""
Integer-lattice vectors and the size-constrained problem instance.

A LatticeVector is a sparse point of Z_+^E: absent elements hold 0 units and
no stored entry is ever 0. Vectors are immutable; every operation returns a
new vector, so a vector can be shared freely between solver candidates and
concurrent readers.
"""

from typing import Dict, Iterator, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from drsub.core.errors import DomainError, InvalidParameterError


class LatticeVector:
    """Sparse non-negative integer vector with a cached l1 norm."""

    __slots__ = ("_entries", "_norm1", "_items")

    def __init__(self, entries: Optional[Mapping[int, int]] = None):
        clean: Dict[int, int] = {}
        total = 0
        for element, count in (entries or {}).items():
            element, count = int(element), int(count)
            if element < 0:
                raise DomainError(f"negative element id {element}")
            if count < 0:
                raise DomainError(f"negative count {count} for element {element}")
            if count:
                clean[element] = count
                total += count
        self._entries = clean
        self._norm1 = total
        self._items: Optional[Tuple[Tuple[int, int], ...]] = None

    @classmethod
    def _trusted(cls, entries: Dict[int, int], norm1: int) -> "LatticeVector":
        # Internal constructor: caller guarantees positive counts and the norm.
        vector = cls.__new__(cls)
        vector._entries = entries
        vector._norm1 = norm1
        vector._items = None
        assert all(c > 0 for c in entries.values()), "zero entry stored"
        assert norm1 == sum(entries.values()), "stale norm1"
        return vector

    @classmethod
    def zero(cls) -> "LatticeVector":
        return cls._trusted({}, 0)

    @classmethod
    def unit(cls, element: int, units: int = 1) -> "LatticeVector":
        """The vector units * 1_e."""
        return cls({element: units})

    # --- read access ---

    def get(self, element: int) -> int:
        return self._entries.get(element, 0)

    def __getitem__(self, element: int) -> int:
        return self._entries.get(element, 0)

    def __contains__(self, element: int) -> bool:
        return element in self._entries

    @property
    def norm1(self) -> int:
        return self._norm1

    @property
    def support(self) -> frozenset:
        return frozenset(self._entries)

    def items(self) -> Tuple[Tuple[int, int], ...]:
        """(element, count) pairs in ascending element order."""
        if self._items is None:
            self._items = tuple(sorted(self._entries.items()))
        return self._items

    def __iter__(self) -> Iterator[int]:
        return (e for e, _ in self.items())

    def is_zero(self) -> bool:
        return self._norm1 == 0

    def to_dict(self) -> Dict[int, int]:
        return dict(self.items())

    def to_dense(self, n: int) -> Tuple[int, ...]:
        return tuple(self._entries.get(e, 0) for e in range(n))

    # --- order and identity ---

    def __le__(self, other: "LatticeVector") -> bool:
        """Coordinatewise x <= y."""
        return all(count <= other.get(e) for e, count in self._entries.items())

    def __ge__(self, other: "LatticeVector") -> bool:
        return other <= self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self.items())

    def __repr__(self) -> str:
        return f"LatticeVector({self.to_dict()})"

    # --- algebra ---

    def add_units(self, element: int, units: int) -> "LatticeVector":
        """x + units * 1_e."""
        if units < 0:
            raise DomainError(f"cannot add {units} units")
        if units == 0:
            return self
        entries = dict(self._entries)
        entries[element] = entries.get(element, 0) + units
        return LatticeVector._trusted(entries, self._norm1 + units)

    def remove_units(self, element: int, units: int) -> "LatticeVector":
        """x - units * 1_e; the coordinate must hold at least `units`."""
        current = self._entries.get(element, 0)
        if units < 0 or units > current:
            raise DomainError(
                f"cannot remove {units} units from element {element} holding {current}"
            )
        if units == 0:
            return self
        entries = dict(self._entries)
        if units == current:
            del entries[element]
        else:
            entries[element] = current - units
        return LatticeVector._trusted(entries, self._norm1 - units)

    def without(self, element: int) -> "LatticeVector":
        """x - x(e) * 1_e."""
        return self.remove_units(element, self._entries.get(element, 0))

    def join(self, other: "LatticeVector") -> "LatticeVector":
        entries = dict(self._entries)
        total = self._norm1
        for element, count in other._entries.items():
            current = entries.get(element, 0)
            if count > current:
                entries[element] = count
                total += count - current
        return LatticeVector._trusted(entries, total)

    def meet(self, other: "LatticeVector") -> "LatticeVector":
        small, large = (self, other) if len(self._entries) <= len(other._entries) else (other, self)
        entries: Dict[int, int] = {}
        total = 0
        for element, count in small._entries.items():
            m = min(count, large._entries.get(element, 0))
            if m:
                entries[element] = m
                total += m
        return LatticeVector._trusted(entries, total)

    def plus(self, other: "LatticeVector") -> "LatticeVector":
        """Coordinatewise sum x + y."""
        entries = dict(self._entries)
        for element, count in other._entries.items():
            entries[element] = entries.get(element, 0) + count
        return LatticeVector._trusted(entries, self._norm1 + other._norm1)


def join(x: LatticeVector, y: LatticeVector) -> LatticeVector:
    """Coordinatewise maximum x v y."""
    return x.join(y)


def meet(x: LatticeVector, y: LatticeVector) -> LatticeVector:
    """Coordinatewise minimum x ^ y."""
    return x.meet(y)


def add_units(x: LatticeVector, element: int, units: int) -> LatticeVector:
    return x.add_units(element, units)


def norm1(x: LatticeVector) -> int:
    return x.norm1


class ProblemInstance(BaseModel):
    """Ground set of size n, size budget k and per-element bounds B_e."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, description="Ground-set size")
    k: int = Field(ge=0, description="Size budget ||x||_1 <= k")
    bounds: Tuple[int, ...] = Field(
        default=(),
        description="Per-element upper bound B_e; defaults to k for every element",
    )

    @model_validator(mode="before")
    @classmethod
    def _default_bounds(cls, data):
        if isinstance(data, dict) and not data.get("bounds"):
            data = dict(data)
            data["bounds"] = (max(int(data.get("k", 1)), 1),) * int(data.get("n", 0))
        return data

    @model_validator(mode="after")
    def _check_bounds(self):
        if len(self.bounds) != self.n:
            raise InvalidParameterError(
                f"expected {self.n} coordinate bounds, got {len(self.bounds)}"
            )
        if any(b < 1 for b in self.bounds):
            raise InvalidParameterError("every coordinate bound must be >= 1")
        return self

    def bound(self, element: int) -> int:
        return self.bounds[element]

    def slack(self, x: LatticeVector, element: int) -> int:
        """B_e - x(e)."""
        return self.bounds[element] - x.get(element)

    def in_box(self, x: LatticeVector) -> bool:
        return all(0 <= e < self.n and c <= self.bounds[e] for e, c in x.items())

    def is_feasible(self, x: LatticeVector) -> bool:
        return x.norm1 <= self.k and self.in_box(x)

    def require_box(self, x: LatticeVector) -> None:
        if not self.in_box(x):
            raise DomainError(f"{x!r} leaves the box 0 <= x <= B of an n={self.n} instance")

    def with_budget(self, k: int) -> "ProblemInstance":
        """Same ground set and bounds under another size budget."""
        return ProblemInstance(n=self.n, k=k, bounds=self.bounds)

    @classmethod
    def uniform(cls, n: int, k: int) -> "ProblemInstance":
        """The B = k * 1 instance used throughout the experiments."""
        return cls(n=n, k=k)
