"""Run configuration, read from the environment (and a local .env file)."""

import os
from contextlib import contextmanager
from contextvars import ContextVar
from pathlib import Path
from typing import Annotated, Literal, Optional

import dotenv
from pydantic import BaseModel, ConfigDict, Field

from . import __version__

ENV_PREFIX = "SNCOVER_"

PositiveInt = Annotated[int, Field(gt=0)]


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    oracle_cap: Annotated[PositiveInt, Field(description="Largest n for Kronecker coefficients")] = 20
    product_cap: Annotated[PositiveInt, Field(description="Largest n for full-support products")] = 14
    table_cap: Annotated[PositiveInt, Field(description="Largest n for character tables")] = 20
    enumeration_cap: Annotated[PositiveInt, Field(description="Largest n for enumerating partitions")] = 60
    uniform_cap: Annotated[PositiveInt, Field(description="Largest n for the uniform sampler")] = 100_000
    cache_dir: Path = Field(default_factory=lambda: Path.home() / ".cache" / "sncover")
    seed: Annotated[int, Field(ge=0)] = 0
    output_format: Literal["table", "structured"] = "table"
    threads: PositiveInt = 1
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        dotenv.load_dotenv()
        values = {}
        for name in cls.model_fields:
            raw = os.getenv(ENV_PREFIX + name.upper())
            if raw is not None and raw != "":
                values[name] = raw
        # SNCOVER_FORMAT is the documented spelling
        if "output_format" not in values and os.getenv(ENV_PREFIX + "FORMAT"):
            values["output_format"] = os.getenv(ENV_PREFIX + "FORMAT")
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def fingerprint(self) -> dict:
        return self.model_dump(mode="json", exclude={"log_level"})


_active: ContextVar[Optional[RunConfig]] = ContextVar("sncover_config", default=None)
_default: Optional[RunConfig] = None


def get_config() -> RunConfig:
    global _default
    cfg = _active.get()
    if cfg is not None:
        return cfg
    if _default is None:
        _default = RunConfig.from_env()
    return _default


@contextmanager
def use_config(cfg: RunConfig):
    token = _active.set(cfg)
    try:
        yield cfg
    finally:
        _active.reset(token)


class Provenance(BaseModel):
    """What a result needs to be rerun bit for bit: package version, seed and config."""

    version: str = Field(default_factory=lambda: __version__)
    seed: Optional[int] = None
    config: dict = Field(default_factory=lambda: get_config().fingerprint())
