"""
Environment overrides for experiment runs.

Recognised variables (a `.env` file is loaded by the CLI before these are read):
    SHOCKLAB_OUT_DIR   output directory for artifacts
    SHOCKLAB_WORKERS   worker process count
"""

import os
from dataclasses import dataclass

from domain.errors import ConfigurationError

OUT_DIR_VAR = "SHOCKLAB_OUT_DIR"
WORKERS_VAR = "SHOCKLAB_WORKERS"


@dataclass(frozen=True, slots=True)
class EnvOverrides:
    """Overrides read from the environment; None when unset."""

    out_dir: str | None
    workers: int | None

    def as_dict(self) -> dict[str, str | int | None]:
        return {OUT_DIR_VAR: self.out_dir, WORKERS_VAR: self.workers}


def load_optional_setting(name: str) -> str | None:
    """Load an optional setting from the environment.

    Args:
        name: Name of the variable (e.g. 'SHOCKLAB_OUT_DIR').

    Returns:
        The stripped value, or None if unset or blank.
    """
    value = os.getenv(name)
    if value is None:
        return None
    value = value.strip()
    return value or None


def load_int_setting(name: str, *, minimum: int = 1) -> int | None:
    """Load an optional integer setting.

    Args:
        name: Name of the variable.
        minimum: Smallest accepted value.

    Returns:
        The parsed integer, or None if unset.

    Raises:
        ConfigurationError: If the value is not an integer or is below minimum.
    """
    raw = load_optional_setting(name)
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    return value


def load_env_overrides() -> EnvOverrides:
    """Read all recognised overrides."""
    return EnvOverrides(out_dir=load_optional_setting(OUT_DIR_VAR), workers=load_int_setting(WORKERS_VAR))
