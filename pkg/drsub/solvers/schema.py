from typing import List, Literal, NamedTuple, Optional

from pydantic import BaseModel, ConfigDict, Field

from drsub.core.errors import InvalidParameterError
from drsub.core.lattice import LatticeVector


class Chunk(NamedTuple):
    element: int
    units: int
    objective_after: float


class AdditionLog:
    """Chunks appended to one of FastDrSub's growing vectors, oldest first."""

    def __init__(self, chunks: Optional[List[Chunk]] = None):
        self.chunks: List[Chunk] = list(chunks or [])

    def append(self, element: int, units: int, objective_after: float) -> None:
        if units < 1:
            raise InvalidParameterError(f"chunk for element {element} must add at least one unit")
        self.chunks.append(Chunk(element, units, objective_after))

    @property
    def total_units(self) -> int:
        return sum(chunk.units for chunk in self.chunks)

    def replay(self) -> LatticeVector:
        """Rebuild the logged vector from 0."""
        vector = LatticeVector.zero()
        for chunk in self.chunks:
            vector = vector.add_units(chunk.element, chunk.units)
        return vector

    def __len__(self) -> int:
        return len(self.chunks)

    def __repr__(self) -> str:
        return f"AdditionLog({[(c.element, c.units) for c in self.chunks]})"


class Candidate(BaseModel):
    """One vector competing in a final argmax."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    label: str
    vector: LatticeVector
    value: float


class FastDrSubOutput(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    z: LatticeVector
    value: float
    candidates: List[Candidate] = Field(description="x', y' and, when one exists, the best large singleton")
    query_count: int
    # Untrimmed vectors and their logs, kept for the suffix-trim analysis
    x_full: LatticeVector = Field(default_factory=LatticeVector.zero)
    y_full: LatticeVector = Field(default_factory=LatticeVector.zero)
    x_log: AdditionLog = Field(default_factory=AdditionLog)
    y_log: AdditionLog = Field(default_factory=AdditionLog)


class AcceptanceRecord(BaseModel):
    """A chunk accepted into x at threshold theta, with x as it was before."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    round: int
    element: int
    units: int
    theta: float
    base: LatticeVector


class ThresholdState(BaseModel):
    """Evolving state of the FastDrSub+ threshold loop."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    x: LatticeVector = Field(default_factory=LatticeVector.zero)
    y: LatticeVector = Field(default_factory=LatticeVector.zero)
    z: LatticeVector = Field(default_factory=LatticeVector.zero)
    fx: float = 0.0
    fy: float = 0.0
    fz: float = 0.0
    theta: float = 0.0
    gamma: float = 0.0


class FastDrSubPlusReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    s: LatticeVector
    value: float
    chosen: Literal["s_prime", "x", "y", "z", "zero"]
    candidates: List[Candidate]
    seed_output: FastDrSubOutput
    gamma: float
    rounds: int
    query_count: int
    acceptance_trace: Optional[List[AcceptanceRecord]] = None
