"""Run configuration."""

import logging
from os import getenv
from pathlib import Path
from typing import Any, Literal, Mapping, Optional

import yaml
from pydantic import BaseModel, ValidationError, root_validator, validator

from .error import RejectedInputError

LOGGER = logging.getLogger(__name__)


CONFIG_KEYS = ("tau-euler", "tau_euler")
CACHE_DIR_ENV = "TAU_EULER_CACHE_DIR"


def _alias_generator(key: str) -> str:
    return key.replace("_", "-")


class _Section(BaseModel):
    class Config:
        alias_generator = _alias_generator
        allow_population_by_field_name = True
        validate_assignment = True


class TauConfig(_Section):
    limit: int = 10_000
    max_limit: int = 1_000_000
    schoolbook_threshold: int = 512

    @validator("limit", "max_limit")
    @classmethod
    def positive(cls, v):
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @classmethod
    def default(cls):
        return cls()


class AnglesConfig(_Section):
    cutoff: int = 10_000
    precision_bits: int = 128
    bins: int = 50

    @validator("precision_bits")
    @classmethod
    def enough_bits(cls, v):
        if v < 96:
            raise ValueError("normalization needs at least 96 bits")
        return v

    @classmethod
    def default(cls):
        return cls()


class ProductsConfig(_Section):
    reduction: Literal["sequential", "tree"] = "sequential"
    pole_tolerance: float = 1e-12

    @classmethod
    def default(cls):
        return cls()


class UnitarityConfig(_Section):
    grid: int = 4096
    refine_tol: float = 1e-10
    ambiguity_band: float = 1e-9

    @classmethod
    def default(cls):
        return cls()


class WorkersConfig(_Section):
    count: int = 1
    chunk_size: int = 512
    executor: Literal["thread", "process"] = "thread"

    @classmethod
    def default(cls):
        return cls()


class OutputConfig(_Section):
    format: Literal["csv", "json", "svg"] = "csv"
    path: Optional[Path] = None
    cache_dir: Optional[Path] = None

    @classmethod
    def default(cls):
        return cls()


class RunConfig(_Section):
    tau: TauConfig = TauConfig.default()
    angles: AnglesConfig = AnglesConfig.default()
    products: ProductsConfig = ProductsConfig.default()
    unitarity: UnitarityConfig = UnitarityConfig.default()
    workers: WorkersConfig = WorkersConfig.default()
    output: OutputConfig = OutputConfig.default()

    @root_validator(skip_on_failure=True)
    @classmethod
    def cutoff_within_limit(cls, values):
        tau, angles = values.get("tau"), values.get("angles")
        if tau.limit > tau.max_limit:
            raise ValueError(
                f"tau limit {tau.limit} exceeds memory budget {tau.max_limit}"
            )
        if angles.cutoff > tau.limit:
            raise ValueError(
                f"prime cutoff {angles.cutoff} exceeds tau limit {tau.limit}"
            )
        return values

    @classmethod
    def default(cls):
        return cls()


def _merge(base: dict, overrides: Mapping[str, Any]) -> dict:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = _merge(merged[key], value)
        elif value is not None:
            merged[key] = value
    return merged


def _load_settings(path: Optional[Path]) -> Mapping[str, Any]:
    if not path:
        return {}
    with open(path) as config_file:
        document = yaml.safe_load(config_file) or {}
    for key in CONFIG_KEYS:
        settings = document.get(key)
        if settings:
            return settings
    return {}


def get_config(
    path: Optional[Path] = None, overrides: Optional[Mapping[str, Any]] = None
) -> RunConfig:
    """Retrieve run configuration from a YAML file, CLI overrides and environment."""
    settings = _load_settings(path)
    try:
        if settings:
            base = RunConfig(**settings).dict()
        else:
            LOGGER.warning("Using default configuration")
            base = RunConfig.default().dict()

        merged = _merge(base, overrides or {})
        cache_dir = getenv(CACHE_DIR_ENV)
        if cache_dir and not merged["output"].get("cache_dir"):
            merged["output"]["cache_dir"] = Path(cache_dir)

        config = RunConfig(**merged)
    except ValidationError as err:
        raise RejectedInputError(str(err)) from err

    LOGGER.debug("Returning config: %s", config.json(indent=2))
    LOGGER.debug("Returning config(aliases): %s", config.json(by_alias=True, indent=2))
    return config
