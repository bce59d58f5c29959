"""Settings loaded from the environment (and an optional .env file)."""

import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from .exceptions import ConfigurationError

DEFAULT_MAX_SPAIRS = 50_000
DEFAULT_MAX_DEGREE = 40
DEFAULT_SEED = 0

_LOG_LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
}


@dataclass(frozen=True)
class Settings:
    """Runtime settings shared by the CLI and the library defaults."""

    max_spairs: int = DEFAULT_MAX_SPAIRS
    max_degree: int = DEFAULT_MAX_DEGREE
    seed: int = DEFAULT_SEED
    log_level: int = logging.INFO


def _int_from_env(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    return value


def load_settings() -> Settings:
    """Read settings from the environment.

    Returns:
        Settings with defaults for every unset variable

    Raises:
        ConfigurationError: If a variable holds an invalid value
    """
    load_dotenv()

    level_name = os.getenv("JET_POISSON_LOG_LEVEL", "INFO").upper()
    if level_name not in _LOG_LEVELS:
        raise ConfigurationError(
            f"JET_POISSON_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}, "
            f"got {level_name!r}"
        )

    return Settings(
        max_spairs=_int_from_env("JET_POISSON_MAX_SPAIRS", DEFAULT_MAX_SPAIRS, 1),
        max_degree=_int_from_env("JET_POISSON_MAX_DEGREE", DEFAULT_MAX_DEGREE, 1),
        seed=_int_from_env("JET_POISSON_SEED", DEFAULT_SEED),
        log_level=_LOG_LEVELS[level_name],
    )
