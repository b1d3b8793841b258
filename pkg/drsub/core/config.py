import math

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Observability (optional)
    opik_api_key: str = ""
    opik_project_name: str = "drsub"

    # Diagnostics go to stderr at this level
    log_level: str = "INFO"

    # ==========================================================================
    # Solver defaults
    # ==========================================================================
    # alpha = (2*sqrt(2) - 1) / 7 maximizes the FastDrSub guarantee,
    # giving 1 / (17 + 4*sqrt(2)) ~ 0.044.
    # ==========================================================================
    default_alpha: float = (2 * math.sqrt(2) - 1) / 7
    default_epsilon: float = 0.1
    default_seed: int = 0

    # Property checkers
    checker_samples: int = 10_000
    checker_tolerance: float = 1e-9

    # Brute force is exponential in n; refuse larger instances unless forced
    exact_max_n: int = 8
    exact_max_k: int = 10

    # Path to SNAP facebook_combined.txt (ingestion acceptance test only)
    facebook_edge_list: str = ""

    class Config:
        env_prefix = "DRSUB_"
        env_file = ".env"
        env_file_encoding = "utf-8"


settings = Settings()
