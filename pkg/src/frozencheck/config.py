"""Tool configuration: lint policy switches and output format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

DEFAULT_CONFIG_PATH = "./frozencheck.config.json"

_KNOWN_KEYS = {"immutable_by_default", "allow_mutable", "format"}


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    immutable_by_default: bool = False
    allow_mutable: tuple[str, ...] = ()
    format: str = "text"

    def with_overrides(
        self, immutable_by_default: bool | None = None, format: str | None = None
    ) -> "Config":
        cfg = self
        if immutable_by_default is not None:
            cfg = replace(cfg, immutable_by_default=immutable_by_default)
        if format is not None:
            cfg = replace(cfg, format=format)
        return cfg


def load_config(path: str | None = None) -> Config:
    """Load configuration from a JSON file.

    With no explicit path, the default path is used if it exists, otherwise
    defaults apply. An explicit path must exist. Unknown keys are rejected
    by name.
    """
    explicit = path is not None
    target = Path(path if path is not None else DEFAULT_CONFIG_PATH)
    if not target.exists():
        if explicit:
            raise ConfigError(f"config file not found: {target}")
        return Config()
    try:
        raw = json.loads(target.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {target}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {target} must be a JSON object")
    for key in raw:
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config key '{key}' in {target}")

    immutable = raw.get("immutable_by_default", False)
    if not isinstance(immutable, bool):
        raise ConfigError("config key 'immutable_by_default' must be a boolean")
    allow = raw.get("allow_mutable", [])
    if not isinstance(allow, list) or not all(isinstance(x, str) for x in allow):
        raise ConfigError("config key 'allow_mutable' must be a list of class names")
    fmt = raw.get("format", "text")
    if fmt not in ("text", "json"):
        raise ConfigError("config key 'format' must be \"text\" or \"json\"")
    return Config(
        immutable_by_default=immutable,
        allow_mutable=tuple(allow),
        format=fmt,
    )
