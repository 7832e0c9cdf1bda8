from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Mapping, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, NoDecode, SettingsConfigDict

from app.exceptions import InvalidParameterError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class LogConfig(BaseModel):
    """Logging configuration to be set for the CLI"""

    LOGGER_NAME: str = "app"
    LOG_FORMAT: str = "%(levelname)s | %(asctime)s | %(name)s | %(message)s"
    LOG_LEVEL: str = "INFO"
    version: int = 1
    disable_existing_loggers: bool = False

    formatters: dict = Field(
        default_factory=lambda: {
            "default": {
                "format": (
                    "%(levelname)s - %(asctime)s - %(name)s - %(message)s"
                ),
                "datefmt": "%Y-%m-%d %H:%M:%S",
            },
        }
    )

    handlers: dict = Field(
        default_factory=lambda: {
            "default": {
                "formatter": "default",
                "class": "logging.StreamHandler",
                "stream": "ext://sys.stderr",
            },
        }
    )

    loggers: dict = Field(
        default_factory=lambda: {
            "": {"handlers": ["default"], "level": "WARNING"},
            "app": {"level": "INFO"},
        }
    )

    @model_validator(mode="after")
    def apply_log_level(self) -> "LogConfig":
        """Propagate LOG_LEVEL to the application logger."""
        self.LOG_LEVEL = self.LOG_LEVEL.upper()
        self.loggers.setdefault(self.LOGGER_NAME, {})
        self.loggers[self.LOGGER_NAME]["level"] = self.LOG_LEVEL
        return self


def _split_list(value: Any) -> Any:
    """Accept comma-separated strings for list-valued settings."""
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class RunConfig(BaseSettings):
    """Run settings shared by every CLI subcommand.

    Values come from CLI flags, a key=value config file, environment
    variables prefixed with KDV_ and finally the defaults below.
    Example: KDV_M=32, KDV_N_VALUES=2,4,8
    """

    model_config = SettingsConfigDict(
        env_prefix="KDV_",
        case_sensitive=False,
        extra="ignore",
        env_nested_delimiter="__",
    )

    subcommand: str = Field(
        default="simulate", description="Subcommand being executed"
    )

    # Truncated system
    m: int = Field(default=16, ge=1, description="Galerkin truncation size")
    n: int = Field(
        default=0, ge=0, description="Low/high splitting parameter"
    )
    n_values: Annotated[List[int], NoDecode] = Field(
        default_factory=lambda: [2, 4, 8],
        description="Splitting parameters checked by forms-check",
    )
    m_values: Annotated[List[int], NoDecode] = Field(
        default_factory=lambda: [8, 16, 32],
        description="Truncation sizes swept by estimates",
    )
    decay_n_values: Annotated[List[int], NoDecode] = Field(
        default_factory=lambda: [2, 16],
        description="Split indices compared by the B30 decay check",
    )
    dt: float = Field(default=1e-4, gt=0, description="RK4 time step")
    T: float = Field(default=0.5, ge=0, description="Final time")
    record_stride: int = Field(
        default=5, ge=1, description="Record every k-th step"
    )
    substeps: Optional[int] = Field(
        default=None,
        ge=1,
        description="RK4 steps per dt; from the fastest phase when unset",
    )

    # Initial data
    datum: Literal["pair", "random", "zero"] = Field(
        default="pair", description="Built-in initial datum"
    )
    amplitude: float = Field(
        default=0.25, description="Amplitude of the built-in datum"
    )
    v0_path: Optional[Path] = Field(
        default=None, description="JSON or CSV file with the initial state"
    )
    perturbation: float = Field(
        default=1e-3,
        gt=0,
        description="Size of the second datum used by lipschitz",
    )

    # Analysis parameters
    s: float = Field(default=1.0, description="Sobolev index")
    theta_values: Annotated[List[float], NoDecode] = Field(
        default_factory=lambda: [-0.5, 0.0, 1.0],
        description="Sobolev indices probed by lipschitz",
    )
    energy_scale: float = Field(
        default=1.0,
        description="Multiplier on the conserved energy in forms-check",
    )
    epsilon: float = Field(
        default=0.25, description="Smoothing gain used by B4 and EE11"
    )
    T_star: float = Field(
        default=0.05, gt=0, description="Horizon of the contraction solve"
    )
    c: float = Field(
        default=1.0 / 3.0, description="Coefficient of the invert operator"
    )
    grid: Optional[int] = Field(
        default=None, ge=8, description="Collocation grid for invert"
    )

    # Burgers
    omega: float = Field(default=0.0, description="Rotation frequency")
    omega_values: Annotated[List[float], NoDecode] = Field(
        default_factory=list, description="Frequencies swept by burgers"
    )
    strip: float = Field(
        default=0.5, gt=0, description="Analyticity strip half-width"
    )
    profile: Literal["sine", "linear"] = Field(
        default="sine", description="Burgers initial profile"
    )

    # Estimates
    suite: str = Field(
        default="appendix-default", description="Bound suite to run"
    )
    trials: int = Field(default=200, ge=1, description="Trials per bound")
    seed: int = Field(default=0, ge=0, description="Random seed")
    tol: float = Field(default=1e-6, gt=0, description="Pass tolerance")
    strict: bool = Field(
        default=False, description="Exit with status 2 on a bound failure"
    )

    # Output
    out: Path = Field(default=Path("runs"), description="Output directory")
    format: Literal["csv", "json"] = Field(
        default="csv", description="Format of tabular artifacts"
    )
    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    )

    @field_validator(
        "n_values",
        "m_values",
        "decay_n_values",
        "theta_values",
        "omega_values",
        mode="before",
    )
    @classmethod
    def parse_list(cls, v: Any) -> Any:
        """Split comma-separated lists."""
        return _split_list(v)

    @field_validator("n_values", "m_values", "decay_n_values")
    @classmethod
    def check_positive_sizes(cls, v: List[int]) -> List[int]:
        """Sizes in sweeps must be positive."""
        if any(item < 1 for item in v):
            raise ValueError("sweep sizes must be >= 1")
        return v

    @model_validator(mode="after")
    def normalize_log_level(self) -> "RunConfig":
        """Upper-case the log level name and check it exists."""
        self.log_level = self.log_level.upper()
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"unknown log level '{self.log_level}'")
        return self

    def to_artifact(self) -> Dict[str, Any]:
        """Return the JSON-serialisable dump embedded in artifacts."""
        return self.model_dump(mode="json")


def read_config_file(path: Path) -> Dict[str, str]:
    """
    Read a key=value configuration file.

    Keys are case-insensitive and may carry the KDV_ prefix.

    Args:
        path: Path to the file

    Returns:
        Dict[str, str]: Normalised keys mapped to raw string values

    Raises:
        InvalidParameterError: If the file does not exist
    """
    if not path.is_file():
        raise InvalidParameterError(f"Config file not found: {path}")
    field_names = {name.lower(): name for name in RunConfig.model_fields}
    values: Dict[str, str] = {}
    for key, value in dotenv_values(path).items():
        if value is None:
            continue
        name = key.strip().lower()
        if name.startswith("kdv_"):
            name = name[len("kdv_") :]
        values[field_names.get(name, name)] = value
    return values


def load_config(
    config_file: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """
    Build a RunConfig from a config file and explicit overrides.

    Precedence: overrides > config file > environment > defaults.

    Args:
        config_file: Optional key=value file
        overrides: Values given explicitly (CLI flags); None entries are
            ignored

    Returns:
        RunConfig: Validated configuration
    """
    merged: Dict[str, Any] = {}
    if config_file is not None:
        merged.update(read_config_file(config_file))
    if overrides:
        merged.update(
            {k: v for k, v in overrides.items() if v is not None}
        )
    return RunConfig(**merged)

