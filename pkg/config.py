"""
Configuration settings for numerans.

Defaults live in config/defaults.yml; environment variables (optionally
from a .env file) override them.
"""
import os
from pathlib import Path
from typing import Any, Dict

import yaml
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

DEFAULTS_FILE = Path(__file__).resolve().parent / "config" / "defaults.yml"


def _load_defaults() -> Dict[str, Dict[str, Any]]:
    if not DEFAULTS_FILE.exists():
        return {}
    with DEFAULTS_FILE.open(encoding="utf-8") as handle:
        return yaml.safe_load(handle) or {}


_DEFAULTS = _load_defaults()


def _setting(section: str, key: str, env: str, fallback: Any) -> Any:
    """Environment variable if set, else the YAML default, else ``fallback``; cast to the fallback's type."""
    default = _DEFAULTS.get(section, {}).get(key, fallback)
    raw = os.environ.get(env)
    if raw is None:
        return type(fallback)(default)
    if isinstance(fallback, bool):
        return raw.lower() == "true"
    if isinstance(fallback, int):
        return int(float(raw))
    return type(fallback)(raw)


# Application configuration
APP_CONFIG = {
    "log_level": _setting("app", "log_level", "LOG_LEVEL", "WARNING"),
    "debug": _setting("app", "debug", "DEBUG", False),
}

# Builtin languages
LANGUAGE_CONFIG = {
    "max_base": _setting("languages", "max_base", "MAX_BASE", 100),
}

# Counting configuration
COUNTING_CONFIG = {
    "numeric_limit_depth": _setting("counting", "numeric_limit_depth", "NUMERIC_LIMIT_DEPTH", 200),
}

# Adherence walks
ADHERENCE_CONFIG = {
    "greedy_depth_limit": _setting("adherence", "greedy_depth_limit", "GREEDY_DEPTH_LIMIT", 1_000_000),
    "validate_depth_limit": _setting("adherence", "validate_depth_limit", "VALIDATE_DEPTH_LIMIT", 10_000),
    "prefix_depth": _setting("adherence", "prefix_depth", "ADHERENCE_PREFIX_DEPTH", 64),
}

# Real-number representation
REALS_CONFIG = {
    "rational_base_depth": _setting("reals", "rational_base_depth", "RATIONAL_BASE_DEPTH", 80),
    "spectral_tolerance": _setting("reals", "spectral_tolerance", "SPECTRAL_TOLERANCE", 1e-12),
    "spectral_enclosure": _setting("reals", "spectral_enclosure", "SPECTRAL_ENCLOSURE", 1e-10),
    "spectral_max_iterations": _setting("reals", "spectral_max_iterations", "SPECTRAL_MAX_ITERATIONS", 10_000),
    "encode_precision_budget": _setting("reals", "encode_precision_budget", "ENCODE_PRECISION_BUDGET", 4),
    "endpoint_search_depth": _setting("reals", "endpoint_search_depth", "ENDPOINT_SEARCH_DEPTH", 24),
    "infinite_value_depth": _setting("reals", "infinite_value_depth", "INFINITE_VALUE_DEPTH", 64),
    "periodic_shift_limit": _setting("reals", "periodic_shift_limit", "PERIODIC_SHIFT_LIMIT", 64),
}

# Brute-force reference implementations
ORACLE_CONFIG = {
    "enumeration_guard": _setting("oracle", "enumeration_guard", "ENUMERATION_GUARD", 10_000_000),
}

# HTTP API
API_CONFIG = {
    "host": _setting("api", "host", "API_HOST", "127.0.0.1"),
    "port": _setting("api", "port", "API_PORT", 8000),
    "system_cache_size": _setting("api", "system_cache_size", "SYSTEM_CACHE_SIZE", 32),
}


def get_config() -> Dict[str, Any]:
    """Return the complete configuration dictionary."""
    return {
        "app": APP_CONFIG,
        "languages": LANGUAGE_CONFIG,
        "counting": COUNTING_CONFIG,
        "adherence": ADHERENCE_CONFIG,
        "reals": REALS_CONFIG,
        "oracle": ORACLE_CONFIG,
        "api": API_CONFIG,
    }
