"""
Settings loader: YAML defaults with in-code fallbacks and environment overrides.
"""

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

load_dotenv()

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "defaults.yaml"

_FALLBACK = {
    "oracle": {"default_bound": 5, "max_bound": 8},
    "quasi_integrality": {"multiple_search_limit": 8},
    "kernel_witnesses": {"combination_radius": 2},
    "sweep": {"seed": 20240611, "count": 25},
    "logging": {"level": "WARNING"},
}


@dataclass(frozen=True)
class Settings:
    oracle_default_bound: int
    oracle_max_bound: int
    multiple_search_limit: int
    combination_radius: int
    sweep_seed: int
    sweep_count: int
    log_level: str


def _load_raw():
    path = Path(os.getenv("MONOIDKIT_CONFIG", str(CONFIG)))
    if path.exists():
        try:
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
            merged = {}
            for section, defaults in _FALLBACK.items():
                merged[section] = {**defaults, **(data.get(section) or {})}
            return merged
        except (OSError, yaml.YAMLError) as e:
            logger.warning("Could not read %s, using built-in defaults: %s", path, e)
    return {section: dict(values) for section, values in _FALLBACK.items()}


@lru_cache(maxsize=1)
def get_settings():
    """
    Return the active settings.
    Environment variables MONOIDKIT_LOG_LEVEL and MONOIDKIT_ORACLE_BOUND
    take precedence over the YAML file.
    """
    raw = _load_raw()
    bound = int(os.getenv("MONOIDKIT_ORACLE_BOUND", raw["oracle"]["default_bound"]))
    return Settings(
        oracle_default_bound=bound,
        oracle_max_bound=int(raw["oracle"]["max_bound"]),
        multiple_search_limit=int(raw["quasi_integrality"]["multiple_search_limit"]),
        combination_radius=int(raw["kernel_witnesses"]["combination_radius"]),
        sweep_seed=int(raw["sweep"]["seed"]),
        sweep_count=int(raw["sweep"]["count"]),
        log_level=os.getenv("MONOIDKIT_LOG_LEVEL", raw["logging"]["level"]).upper(),
    )


def clear_settings_cache():
    """Forget the cached settings so the next call re-reads file and environment."""
    get_settings.cache_clear()
