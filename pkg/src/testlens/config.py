"""Tool configuration: defaults, file loading, flag merging.

The config file is a flat TOML-style key/value document. Supported value
forms are quoted strings, booleans, numbers, and single-line arrays of
quoted strings. Unknown keys are rejected. Command-line flags always win
over file values.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .lint import DEFAULT_COLLECTION_VOCABULARY
from .renamedetect import DEFAULT_THRESHOLD

ENV_CONFIG = "TESTLENS_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    lexicon: str | None = None
    catalog: str | None = None
    rules: tuple[str, ...] | None = None
    collection_vocabulary: tuple[str, ...] = DEFAULT_COLLECTION_VOCABULARY
    threshold: float = DEFAULT_THRESHOLD
    format: str | None = None
    not_rule_boolean_asserts: bool = False


def _parse_value(raw: str, lineno: int):
    raw = raw.strip()
    if raw.startswith('"') and raw.endswith('"') and len(raw) >= 2:
        return raw[1:-1]
    if raw in ("true", "false"):
        return raw == "true"
    if raw.startswith("[") and raw.endswith("]"):
        inner = raw[1:-1].strip()
        if not inner:
            return ()
        items = []
        for part in inner.split(","):
            part = part.strip()
            if not (part.startswith('"') and part.endswith('"') and len(part) >= 2):
                raise ConfigError(f"line {lineno}: array items must be quoted strings")
            items.append(part[1:-1])
        return tuple(items)
    try:
        return float(raw) if "." in raw else int(raw)
    except ValueError:
        raise ConfigError(f"line {lineno}: cannot parse value {raw!r}") from None


def parse_config_text(text: str) -> Config:
    known = {f.name: f for f in fields(Config)}
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        values[key] = _parse_value(raw, lineno)
    cfg = Config()
    for key, value in values.items():
        if key in ("rules", "collection_vocabulary") and isinstance(value, str):
            value = (value,)
        if key == "threshold":
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError("threshold must be a number")
            value = float(value)
        if key == "not_rule_boolean_asserts" and not isinstance(value, bool):
            raise ConfigError("not_rule_boolean_asserts must be true or false")
        cfg = replace(cfg, **{key: value})
    return cfg


def load_config(path: str | None = None) -> Config:
    """Config from an explicit path, else $TESTLENS_CONFIG, else defaults."""
    if path is None:
        path = os.environ.get(ENV_CONFIG)
    if not path:
        return Config()
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())
