"""Environment-driven settings for src/ scripts.

Reads `.env` from the project root, then the process environment:
- LPREC_ENUM_CAP: subset cap for exact RIC enumeration (default 1,000,000)
- LPREC_WORKERS: worker threads for enumeration and Monte-Carlo trials (default 1)
- LPREC_REPORT_DIR: where montecarlo writes reports when --report is omitted

Usage:
    from utils.settings import enum_cap, workers

    cap = enum_cap()
"""

import os
from pathlib import Path

from dotenv import load_dotenv

from .constants import DEFAULT_ENUM_CAP
from .errors import ConfigError

PROJECT_ROOT = Path(__file__).parent.parent.parent

# Load .env from project root
load_dotenv(PROJECT_ROOT / ".env")


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{name} must be >= 1, got {value}")
    return value


def enum_cap() -> int:
    """Subset-count cap for exact RIC enumeration."""
    return _int_env("LPREC_ENUM_CAP", DEFAULT_ENUM_CAP)


def workers() -> int:
    """Default number of worker threads."""
    return _int_env("LPREC_WORKERS", 1)


def report_dir() -> Path:
    """Default directory for montecarlo reports."""
    raw = os.environ.get("LPREC_REPORT_DIR", "").strip()
    return Path(raw) if raw else PROJECT_ROOT / "reports"
