"""
Configuration, logging setup and JSON output helpers
"""

import json
import logging
import os
import sys
from functools import lru_cache
from typing import Any, Dict, Optional

from .errors import ConfigError

CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), "config", "config.json")

ENV_OVERRIDES = {
    "XINNER_STEP_BUDGET": ("step_budget", int),
    "XINNER_LOG_LEVEL": ("log_level", str),
}

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _packaged_defaults() -> Dict[str, Any]:
    with open(CONFIG_PATH, "r") as json_data:
        return dict(json.load(json_data))


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load the packaged defaults, a user file on top, then environment overrides.

    Args:
        path (str, optional): JSON file whose keys replace the defaults

    Returns:
        dict: Effective configuration
    """
    config = dict(_packaged_defaults())
    if path is not None:
        try:
            with open(path, "r") as json_data:
                user = json.load(json_data)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
        unknown = sorted(set(user) - set(config))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        config.update(user)
    for variable, (key, kind) in ENV_OVERRIDES.items():
        raw = os.environ.get(variable)
        if raw is None:
            continue
        try:
            config[key] = kind(raw)
        except ValueError:
            raise ConfigError(f"{variable} must be {kind.__name__}, got {raw!r}") from None
    if int(config["step_budget"]) < 1:
        raise ConfigError("step_budget must be positive")
    return config


def configure_logging(level: str = "WARNING") -> None:
    """Route xinner log records to stderr at the given level."""
    root = logging.getLogger("xinner")
    numeric = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric, int):
        raise ConfigError(f"unknown log level {level!r}")
    root.setLevel(numeric)
    if not any(getattr(h, "_xinner", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        handler._xinner = True  # type: ignore[attr-defined]
        root.addHandler(handler)


def to_json(payload: Dict[str, Any], schema: int = 1) -> str:
    """Deterministic JSON text with the schema version stamped in."""
    body = dict(payload)
    body["schema"] = schema
    return json.dumps(body, sort_keys=True, indent=2, default=str)
