"""
Experiment config files.

Flat KEY=value text, one key per line, read with dotenv_values so nothing
leaks into os.environ. Keys are the ExperimentConfig fields upper-cased:

    M=8
    N=12
    K=2
    P_RULE=pbar_fraction:1.0
    EPSILON=0
    DELTA_SOURCE=exact

Usage:
    from harness.config import load_config

    cfg = load_config("data/general_noiseless.cfg", {"TRIALS": 50})
"""

from dataclasses import fields
from pathlib import Path

from dotenv import dotenv_values

from utils import settings
from utils.errors import ConfigError
from .types import ExperimentConfig

_INT_KEYS = {"M", "N", "K", "TRIALS", "SEED", "SAMPLED_TRIALS", "WORKERS"}
_FLOAT_KEYS = {"EPSILON"}
_BOOL_KEYS = {"FRESH_MATRIX"}
_REQUIRED = ("M", "N", "K")

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off", ""}

KNOWN_KEYS = tuple(f.name.upper() for f in fields(ExperimentConfig))


def _coerce(key: str, value):
    if not isinstance(value, str):
        return value
    text = value.strip()
    try:
        if key in _INT_KEYS:
            return int(text.replace("_", ""))
        if key in _FLOAT_KEYS:
            return float(text)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    if key in _BOOL_KEYS:
        lowered = text.lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise ConfigError(f"{key}: expected true/false, got {value!r}")
    return text


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """
    Build an ExperimentConfig from a file plus overrides.

    Args:
        path: config file, or None to use overrides alone
        overrides: {KEY: value}; None values are ignored. Overrides beat the file,
            the file beats the ExperimentConfig defaults (WORKERS defaults to
            LPREC_WORKERS).

    Returns:
        Validated ExperimentConfig

    Raises:
        ConfigError: unreadable file, unknown key, missing M/N/K, bad value
    """
    raw: dict = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        raw.update({key.upper(): value for key, value in dotenv_values(path).items()})

    for key, value in (overrides or {}).items():
        if value is not None:
            raw[key.upper()] = value

    raw.setdefault("WORKERS", settings.workers())

    unknown = sorted(set(raw) - set(KNOWN_KEYS))
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    missing = [key for key in _REQUIRED if raw.get(key) in (None, "")]
    if missing:
        raise ConfigError(f"missing config key(s): {', '.join(missing)}")

    values = {key.lower(): _coerce(key, value) for key, value in raw.items() if value is not None}
    return ExperimentConfig(**values)
