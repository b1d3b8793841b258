"""
Experiment configuration.

Files are flat `key = value` text with '#' comments; list values are comma
separated. Keys map one-to-one onto RunConfig fields and unknown keys are
rejected, so a typo fails before any run starts.
"""

import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from drsub.core.config import settings
from drsub.core.errors import InvalidParameterError, IngestionError

AlgorithmName = Literal["fastdrsub", "fastdrsubplus", "density_greedy", "brute_force"]
ObjectiveName = Literal["revenue", "concave_quadratic", "square"]

# k/n values plotted in the experiments
DEFAULT_K_FRACTIONS = [0.05, 0.10, 0.15, 0.20, 0.25]
DEFAULT_ALPHA_SWEEP = [0.1, 0.3, 0.5, 0.7, 0.9]


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    return value


def _open_unit(name: str, value: float) -> float:
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {value}")
    return value


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    # Instance
    objective: ObjectiveName = "revenue"
    dataset: Optional[str] = Field(default=None, description="Name written to the CSV")
    dataset_path: Optional[str] = Field(default=None, description="SNAP edge-list file")
    synthetic_n: int = Field(default=100, ge=1)
    synthetic_edge_prob: float = Field(default=0.05, ge=0.0, le=1.0)
    synthetic_terms: int = Field(default=3, ge=1)
    weight_model: Literal["uniform01", "inverse_degree"] = "uniform01"
    exponent_model: Literal["uniform01", "fixed"] = "uniform01"

    # Budgets: explicit k_values win over fractions of n
    k_fractions: List[float] = Field(default_factory=lambda: list(DEFAULT_K_FRACTIONS))
    k_values: List[int] = Field(default_factory=list)

    # Solvers
    algorithms: List[AlgorithmName] = Field(default_factory=lambda: ["fastdrsub", "fastdrsubplus"])
    alpha: float = settings.default_alpha
    alpha_sweep: List[float] = Field(default_factory=list, description="Extra alphas for fastdrsub")
    epsilon: float = settings.default_epsilon
    seed: int = settings.default_seed
    repetitions: int = Field(default=1, ge=1)
    force_exact: bool = False

    # Property checks
    samples: int = Field(default=settings.checker_samples, ge=1)
    tolerance: float = Field(default=settings.checker_tolerance, ge=0.0)

    # Output
    output_path: str = "results.csv"
    record_timing: bool = True
    max_workers: int = Field(default=1, ge=1)
    track_runs: bool = False

    @field_validator("k_fractions", "k_values", "algorithms", "alpha_sweep", mode="before")
    @classmethod
    def _comma_lists(cls, value):
        return _split_list(value)

    @field_validator("k_fractions")
    @classmethod
    def _fractions_in_range(cls, value: List[float]) -> List[float]:
        for fraction in value:
            if not 0.0 < fraction <= 1.0:
                raise ValueError(f"k fraction must lie in (0, 1], got {fraction}")
        return value

    @field_validator("k_values")
    @classmethod
    def _budgets_non_negative(cls, value: List[int]) -> List[int]:
        if any(k < 0 for k in value):
            raise ValueError("k values must be >= 0")
        return value

    @field_validator("alpha")
    @classmethod
    def _alpha_range(cls, value: float) -> float:
        return _open_unit("alpha", value)

    @field_validator("epsilon")
    @classmethod
    def _epsilon_range(cls, value: float) -> float:
        return _open_unit("epsilon", value)

    @field_validator("alpha_sweep")
    @classmethod
    def _sweep_range(cls, value: List[float]) -> List[float]:
        return [_open_unit("alpha", a) for a in value]

    @model_validator(mode="after")
    def _check_instance_source(self):
        if self.dataset_path and self.objective != "revenue":
            raise ValueError("dataset_path only applies to the revenue objective")
        if not self.k_fractions and not self.k_values:
            raise ValueError("need k_fractions or k_values")
        return self

    @property
    def dataset_name(self) -> str:
        if self.dataset:
            return self.dataset
        if self.dataset_path:
            return Path(self.dataset_path).stem
        return f"synthetic_{self.objective}"

    def budgets(self, n: int) -> List[int]:
        """k for every sweep column; fractions give k = ceil(fraction * n)."""
        if self.k_values:
            return list(self.k_values)
        # round away float noise such as 0.15 * 100 = 15.000000000000002
        return [math.ceil(round(fraction * n, 9)) for fraction in self.k_fractions]

    def alphas_for(self, algorithm: str) -> List[float]:
        if algorithm == "fastdrsub" and self.alpha_sweep:
            return list(self.alpha_sweep)
        return [self.alpha]


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, str]:
    values: Dict[str, str] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise InvalidParameterError(f"{source}:{line_number}: expected 'key = value'")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if not key:
            raise InvalidParameterError(f"{source}:{line_number}: missing key")
        values[key] = value
    return values


def load_run_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """File values first, then non-None overrides (CLI flags) on top."""
    values: Dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        try:
            data = path.read_bytes()
        except OSError as e:
            raise IngestionError(f"cannot read config {path}: {e}") from e
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            line_number = data.count(b"\n", 0, e.start) + 1
            raise IngestionError(f"{path.name}:{line_number}: not valid UTF-8 ({e.reason})") from e
        values.update(parse_config_text(text, path.name))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return RunConfig(**values)
