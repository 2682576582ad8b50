"""Configuration loading from YAML + environment variables."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml
from pydantic import AliasChoices, BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from hckm.subroutines.base import SubroutineConfig
from hckm.types import DatasetFormat


class HCKMConfig(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="HCKM_", extra="ignore", populate_by_name=True)

    log_level: str = Field(
        default="INFO", validation_alias=AliasChoices("HCKM_LOG", "HCKM_LOG_LEVEL")
    )

    # Algorithm
    epsilon: float = 0.36
    subroutine: str = "overseed"
    overseed_factor: float = 3.0
    lloyd_rounds: int = 20
    seed: int = 0

    # Sweep
    workers: int = 1
    prune: bool = True
    progress_every: int = 1000

    # Subroutine plugins
    plugin_dirs: list[str] = Field(default_factory=list)
    disabled_subroutines: list[str] = Field(default_factory=list)

    @classmethod
    def settings_customise_sources(
        cls, settings_cls, init_settings, env_settings, dotenv_settings, file_secret_settings
    ):
        # environment beats values passed in from the YAML file
        return env_settings, init_settings, dotenv_settings, file_secret_settings

    @classmethod
    def from_yaml(cls, path: str | Path = "hckm.yaml") -> HCKMConfig:
        """Load config from YAML file, with env vars taking precedence."""
        yaml_path = Path(path)
        yaml_data: dict[str, Any] = {}

        if yaml_path.exists():
            with yaml_path.open("r", encoding="utf-8") as f:
                raw = yaml.safe_load(f) or {}
            yaml_data = _flatten_yaml(raw.get("hckm", {}))

        return cls(**yaml_data)


def _flatten_yaml(data: dict, prefix: str = "") -> dict:
    """Flatten nested YAML into flat key-value pairs for Pydantic."""
    flat: dict[str, Any] = {}
    for key, value in data.items():
        full_key = f"{prefix}_{key}" if prefix else key
        if isinstance(value, dict):
            flat.update(_flatten_yaml(value, full_key))
        else:
            flat[full_key] = value
    return flat


class GeneratorSpec(BaseModel):
    """Synthetic instance recipe: ``blobs`` or ``uniform``."""

    kind: str = "blobs"
    count: int = 3          # blobs
    per_blob: int = 20      # blobs
    sigma: float = 0.1      # blobs
    spread: float = 10.0    # blob spacing / uniform box extent
    n: int = 60             # uniform
    dim: int = 2
    seed: int = 0

    @field_validator("kind")
    @classmethod
    def _known_kind(cls, value: str) -> str:
        if value not in ("blobs", "uniform"):
            raise ValueError(f"unknown generator {value!r}; expected blobs or uniform")
        return value

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> GeneratorSpec:
        """``blobs:count=3,per_blob=20,sigma=0.1,spread=10`` or ``uniform:n=8,dim=2``."""
        kind, _, rest = text.partition(":")
        fields: dict[str, Any] = {"kind": kind.strip(), "seed": seed}
        for item in filter(None, (p.strip() for p in rest.split(","))):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"generator field {item!r} must look like key=value")
            fields[key.strip()] = value.strip()
        return cls(**fields)


class RunConfig(BaseModel):
    """Everything one CLI run needs, after merging flags over HCKMConfig."""

    input: Path | None = None
    input_format: DatasetFormat = DatasetFormat.CSV
    generator: GeneratorSpec | None = None
    k: int
    u: int
    epsilon: float = 0.36
    subroutine: str = "overseed"
    overseed_factor: float = 3.0
    lloyd_rounds: int = 20
    seed: int = 0
    workers: int = 1
    prune: bool = True
    progress_every: int = 1000
    output: Path | None = None
    certify: bool = False

    @field_validator("k", "u", "workers", mode="before")
    @classmethod
    def _strict_positive_int(cls, value: Any) -> int:
        if isinstance(value, bool):
            raise ValueError("expected a positive integer")
        if isinstance(value, float):
            if not value.is_integer():
                raise ValueError(f"expected a positive integer, got {value}")
            value = int(value)
        if isinstance(value, str):
            value = int(value.strip())
        if int(value) < 1:
            raise ValueError(f"expected a positive integer, got {value}")
        return int(value)

    @field_validator("epsilon")
    @classmethod
    def _positive_epsilon(cls, value: float) -> float:
        if not value > 0:
            raise ValueError(f"epsilon must be positive, got {value}")
        return value

    @model_validator(mode="after")
    def _one_source(self) -> RunConfig:
        if self.input is None and self.generator is None:
            raise ValueError("either an input path or a generator spec is required")
        return self

    @property
    def epsilon_prime(self) -> float:
        return self.epsilon / 36.0

    def subroutine_config(self) -> SubroutineConfig:
        return SubroutineConfig.from_epsilon(
            self.epsilon,
            overseed_factor=self.overseed_factor,
            lloyd_rounds=self.lloyd_rounds,
            rng_seed=self.seed,
        )

    def echo(self) -> dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)
