from __future__ import annotations

import logging
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml

from jumped_wenger.errors import ConfigError, JumpedWengerError
from jumped_wenger.gf import FieldSpec, parse_field
from jumped_wenger.models import GridSpec, Limits

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "JWG_CONFIG_PATH"

_LIMIT_KEYS = {
    "max_vertices": int,
    "max_roots": int,
    "workers": int,
    "path_samples": int,
    "seed": int,
    "exhaustive_regularity": int,
    "regularity_sample": int,
    "max_algebraic_cube": int,
    "sample_diameter": bool,
}

_RANGE_RE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")
_PAIR_RE = re.compile(r"^\s*(\d+)\s*[-:]\s*(\d+)\s*$")
_FIELD_TOKEN_RE = re.compile(r"\d+(?:\s*\^\s*\d+)?(?:\s*/\s*\[[^\]]*\])?")


def _load_yaml(path: Path) -> Dict[str, Any]:
    if not path.exists():
        raise ConfigError(f"Config file not found at '{path}'.")
    try:
        with path.open("r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"Failed to parse config YAML at '{path}': {exc}") from exc

    if not isinstance(data, dict):
        raise ConfigError(f"Config at '{path}' must be a YAML mapping/object.")
    return data


def _coerce_int(value: Any, key: str, minimum: int = 0) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"'{key}' must be an integer, got a boolean.")
    try:
        number = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"'{key}' must be an integer, got {value!r}.") from exc
    if number < minimum:
        raise ConfigError(f"'{key}' must be >= {minimum}, got {number}.")
    return number


def _coerce_bool(value: Any, key: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"'{key}' must be true or false, got {value!r}.")
    return value


def _coerce_limits(section: Any, base: Limits) -> Limits:
    if section is None:
        return base
    if not isinstance(section, dict):
        raise ConfigError("'limits' must be a mapping.")
    unknown = set(section) - set(_LIMIT_KEYS)
    if unknown:
        raise ConfigError(f"Unknown keys in 'limits': {sorted(unknown)}.")
    values: Dict[str, Any] = {}
    for key, kind in _LIMIT_KEYS.items():
        if key not in section:
            continue
        if kind is bool:
            values[key] = _coerce_bool(section[key], f"limits.{key}")
        else:
            values[key] = _coerce_int(section[key], f"limits.{key}", 1 if key == "workers" else 0)
    return base.with_overrides(**values)


def coerce_fields(value: Any, key: str = "q") -> Tuple[FieldSpec, ...]:
    """A list (or comma-separated string) of field descriptions."""
    if isinstance(value, (int, str)):
        items: List[Any] = _FIELD_TOKEN_RE.findall(str(value)) if isinstance(value, str) else [value]
    elif isinstance(value, list):
        items = value
    else:
        raise ConfigError(f"'{key}' must be a list of field orders.")
    if not items:
        raise ConfigError(f"'{key}' must name at least one field.")
    fields: List[FieldSpec] = []
    for item in items:
        try:
            fields.append(parse_field(str(item)))
        except JumpedWengerError as exc:
            raise ConfigError(f"Invalid field {item!r} in '{key}': {exc}") from exc
    return tuple(sorted(set(fields), key=lambda f: (f.q, f.modulus)))


def coerce_m_values(value: Any, key: str = "m") -> Tuple[int, ...]:
    """An integer, a list, "a..b" or a {min, max} mapping."""
    if isinstance(value, dict):
        low = _coerce_int(value.get("min", 1), f"{key}.min", 1)
        high = _coerce_int(value.get("max", low), f"{key}.max", 1)
        values = list(range(low, high + 1))
    elif isinstance(value, str) and _RANGE_RE.match(value):
        low, high = (int(g) for g in _RANGE_RE.match(value).groups())
        values = list(range(low, high + 1))
    elif isinstance(value, list):
        values = [_coerce_int(v, key, 1) for v in value]
    elif isinstance(value, str):
        values = [_coerce_int(v, key, 1) for v in value.split(",") if v.strip()]
    else:
        values = [_coerce_int(value, key, 1)]
    if not values or min(values) < 1:
        raise ConfigError(f"'{key}' must select at least one m >= 1.")
    return tuple(sorted(set(values)))


def coerce_ij(value: Any, key: str = "ij") -> Optional[Tuple[Tuple[int, int], ...]]:
    """None for "all"; otherwise a sorted tuple of (i, j) pairs."""
    if value is None or (isinstance(value, str) and value.strip().lower() == "all"):
        return None
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    if not isinstance(value, list) or not value:
        raise ConfigError(f"'{key}' must be 'all' or a list of i-j pairs.")
    pairs = set()
    for item in value:
        if isinstance(item, list) and len(item) == 2:
            i, j = (_coerce_int(v, key, 1) for v in item)
        elif isinstance(item, str) and _PAIR_RE.match(item):
            i, j = (int(g) for g in _PAIR_RE.match(item).groups())
        else:
            raise ConfigError(f"Invalid pair {item!r} in '{key}'; use 'i-j' or [i, j].")
        if not 1 <= i < j:
            raise ConfigError(f"Pair ({i}, {j}) in '{key}' needs 1 <= i < j.")
        pairs.add((i, j))
    return tuple(sorted(pairs))


def load_limits(path: Optional[Path] = None) -> Limits:
    """
    Resolve the base limits.

    Precedence:
    1. The YAML file at ``path`` if given.
    2. The file named by JWG_CONFIG_PATH if set.
    3. Built-in defaults.

    Explicit CLI flags and a grid file's own ``limits`` are applied on top by
    the caller.
    """

    if path is None:
        env_path = os.getenv(CONFIG_ENV_VAR)
        if not env_path:
            return Limits()
        path = Path(env_path)
    data = _load_yaml(Path(path))
    logger.debug("Loaded limits from %s", path)
    return _coerce_limits(data.get("limits", data), Limits())


def grid_from_mapping(data: Dict[str, Any], base: Optional[Limits] = None) -> GridSpec:
    for required in ("q", "m"):
        if required not in data:
            raise ConfigError(f"Grid is missing required key '{required}'.")
    unknown = set(data) - {"q", "m", "ij", "limits"}
    if unknown:
        raise ConfigError(f"Unknown grid keys: {sorted(unknown)}.")
    return GridSpec(
        fields=coerce_fields(data["q"]),
        m_values=coerce_m_values(data["m"]),
        ij=coerce_ij(data.get("ij", "all")),
        limits=_coerce_limits(data.get("limits"), base or load_limits()),
    )


def load_grid_yaml(path: Path, base: Optional[Limits] = None) -> GridSpec:
    data = _load_yaml(Path(path))
    logger.info("Loaded grid definition from %s", path)
    return grid_from_mapping(data, base)


__all__ = [
    "CONFIG_ENV_VAR",
    "ConfigError",
    "load_limits",
    "grid_from_mapping",
    "load_grid_yaml",
    "coerce_fields",
    "coerce_m_values",
    "coerce_ij",
]
