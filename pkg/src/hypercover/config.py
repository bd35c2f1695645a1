"""Configuration management for hypercover."""

from pathlib import Path
from typing import Optional

import yaml
from pydantic import BaseModel, Field, field_validator

from hypercover.utils import LOG_LEVELS


class SolverConfig(BaseModel):
    """Exact search limits."""

    node_budget: int = Field(default=2_000_000, ge=1)
    time_budget_s: Optional[float] = None
    max_k: Optional[int] = Field(default=None, ge=1)


class LLLConfig(BaseModel):
    """Randomized splitter settings."""

    lambda_const: float = Field(default=4.0, gt=0)
    budget_factor: int = Field(default=10, ge=1)
    strict_balance: bool = False
    force_case: Optional[int] = None

    @field_validator("force_case")
    @classmethod
    def _check_case(cls, value: Optional[int]) -> Optional[int]:
        if value not in (None, 1, 2):
            raise ValueError("force_case must be 1, 2 or null")
        return value


class CorpusConfig(BaseModel):
    """Sizes of the randomized corpora behind the tables."""

    fm2k_per_k: int = Field(default=100, ge=1)
    f2k_per_k: int = Field(default=100, ge=1)
    small_values_3: int = Field(default=100, ge=1)
    small_values_4: int = Field(default=50, ge=1)
    max_multigraph_vertices: int = Field(default=10, ge=3)
    max_graph_vertices: int = Field(default=20, ge=4)


class OutputConfig(BaseModel):
    """Table rendering."""

    table_format: str = "text"
    html_report: Optional[Path] = None

    @field_validator("table_format")
    @classmethod
    def _check_format(cls, value: str) -> str:
        if value not in ("text", "csv"):
            raise ValueError("table_format must be 'text' or 'csv'")
        return value


class LoggingConfig(BaseModel):
    """Console verbosity: DEBUG adds algorithm detail, WARNING drops step timings."""

    level: str = "INFO"
    quiet: bool = False

    @field_validator("level")
    @classmethod
    def _check_level(cls, value: str) -> str:
        name = value.upper()
        if name not in LOG_LEVELS:
            raise ValueError(f"level must be one of {', '.join(LOG_LEVELS)}")
        return name


class Config(BaseModel):
    """Main configuration model."""

    solver: SolverConfig = Field(default_factory=SolverConfig)
    lll: LLLConfig = Field(default_factory=LLLConfig)
    corpus: CorpusConfig = Field(default_factory=CorpusConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    @classmethod
    def load(cls, config_path: Path | str = "config.yaml") -> "Config":
        """Load configuration from YAML file with local overrides.

        A config.local.yaml next to the base file is deep-merged on top of it.
        Without a base file the defaults apply (local overrides still do).

        Args:
            config_path: Path to the base configuration file

        Returns:
            Config instance with applied overrides
        """
        config_path = Path(config_path)
        data: dict = {}
        if config_path.exists():
            with open(config_path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}

        local_config_path = config_path.parent / "config.local.yaml"
        if local_config_path.exists():
            with open(local_config_path, "r", encoding="utf-8") as f:
                local_data = yaml.safe_load(f)
            if local_data:
                data = _deep_merge(data, local_data)

        return cls(**data)


def _deep_merge(base: dict, override: dict) -> dict:
    """Deep merge two dictionaries; values in `override` win."""
    result = base.copy()
    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = value
    return result


# Global config instance
_config: Config | None = None


def get_config() -> Config:
    """Get global configuration instance."""
    global _config
    if _config is None:
        _config = Config.load()
    return _config


def reload_config(config_path: Path | str = "config.yaml") -> Config:
    """Reload configuration from file."""
    global _config
    _config = Config.load(config_path)
    return _config
