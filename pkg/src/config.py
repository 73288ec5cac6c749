"""
Runtime settings, read from the environment (and a .env file if present).
"""
from __future__ import annotations

import os
from typing import Any, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

DEFAULT_SEED = 20240611
DEFAULT_MAX_CLOSURE = 50_000
DEFAULT_ORDER_BOUND = 10_000
DEFAULT_SAMPLES = 1_000


class Settings(BaseModel):
    seed: int = DEFAULT_SEED
    max_closure: int = Field(default=DEFAULT_MAX_CLOSURE, ge=1)
    order_bound: int = Field(default=DEFAULT_ORDER_BOUND, ge=1)
    samples: int = Field(default=DEFAULT_SAMPLES, ge=1)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    return int(raw)


def load_settings(**overrides: Optional[Any]) -> Settings:
    """Build Settings from COXRIG_* variables; non-None keyword overrides win."""
    values = {
        "seed": _env_int("COXRIG_SEED", DEFAULT_SEED),
        "max_closure": _env_int("COXRIG_MAX_CLOSURE", DEFAULT_MAX_CLOSURE),
        "order_bound": _env_int("COXRIG_ORDER_BOUND", DEFAULT_ORDER_BOUND),
        "samples": _env_int("COXRIG_SAMPLES", DEFAULT_SAMPLES),
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**values)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def set_settings(settings: Settings) -> None:
    global _settings
    _settings = settings
