"""Run configuration: JSON schema, strict validation, canonical hashing.

The JSON file is the single source of truth for a run; the CLI only selects
the config, the command, an optional identity subset, and the output
directory.  Unknown keys anywhere in the document are rejected with a
diagnostic naming the offending key.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .errors import ConfigError, StrongCouplingError
from .params import GeneratorSpec, PhysicalParams


def _expect_mapping(val, where):
    if not isinstance(val, dict):
        raise ConfigError(f"{where}: expected an object")
    return val


def _reject_unknown(mapping, allowed, where):
    for key in mapping:
        if key not in allowed:
            raise ConfigError(f"{where}: unknown key {key!r}")


def _get_number(mapping, key, where, default=None, required=False):
    if key not in mapping:
        if required:
            raise ConfigError(f"{where}: missing required key {key!r}")
        return default
    val = mapping[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{where}.{key}: expected a number")
    return float(val)

def _get_int(mapping, key, where, default=None, required=False):
    if key not in mapping:
        if required:
            raise ConfigError(f"{where}: missing required key {key!r}")
        return default
    val = mapping[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"{where}.{key}: expected an integer")
    return val


def parse_range(mapping, where) -> list[float]:
    """{"start": a, "stop": b, "num": n} -> n equally spaced samples."""
    _expect_mapping(mapping, where)
    _reject_unknown(mapping, {"start", "stop", "num"}, where)
    start = _get_number(mapping, "start", where, required=True)
    stop = _get_number(mapping, "stop", where, required=True)
    num = _get_int(mapping, "num", where, required=True)
    if num < 1:
        raise ConfigError(f"{where}.num: must be >= 1")
    if num == 1:
        return [start]
    step = (stop - start) / (num - 1)
    return [start + i * step for i in range(num)]


def parse_values(mapping, key, where) -> list[float] | None:
    """Accept either an explicit list or a range object under ``key``."""
    if key not in mapping:
        return None
    val = mapping[key]
    if isinstance(val, list):
        out = []
        for i, v in enumerate(val):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"{where}.{key}[{i}]: expected a number")
            out.append(float(v))
        return out
    return parse_range(val, f"{where}.{key}")


@dataclass
class RunConfig:
    params: PhysicalParams
    generator: GeneratorSpec
    formats: tuple[str, ...]
    plots: bool
    blocks: dict[str, Any] = field(default_factory=dict)
    raw: dict[str, Any] = field(default_factory=dict)

    @property
    def config_hash(self) -> str:
        canon = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()


_TOP_KEYS = {
    "params",
    "generator",
    "output",
    "propagator",
    "spectrum",
    "eigfn",
    "green",
    "fourier",
    "verify",
    "oracle",
}

_COMMAND_BLOCKS = {
    "propagator",
    "spectrum",
    "eigfn",
    "green",
    "fourier",
    "verify",
    "oracle",
}


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return parse_config(raw)


def parse_config(raw: dict) -> RunConfig:
    _expect_mapping(raw, "config")
    _reject_unknown(raw, _TOP_KEYS, "config")

    pm = _expect_mapping(raw.get("params", {}), "params")
    _reject_unknown(pm, {"mass", "hbar", "coupling", "dim", "ell"}, "params")
    try:
        params = PhysicalParams(
            mass=_get_number(pm, "mass", "params", 1.0),
            hbar=_get_number(pm, "hbar", "params", 1.0),
            coupling=_get_number(pm, "coupling", "params", 0.0),
            dim=_get_int(pm, "dim", "params", 1),
            ell=_get_int(pm, "ell", "params", 0),
        )
    except StrongCouplingError as exc:
        raise ConfigError(f"params: strong-coupling regime rejected ({exc})") from exc
    except ValueError as exc:
        raise ConfigError(f"params: {exc}") from exc

    gm = _expect_mapping(raw.get("generator", {}), "generator")
    _reject_unknown(gm, {"u", "v", "w"}, "generator")
    try:
        generator = GeneratorSpec(
            u=_get_number(gm, "u", "generator", 0.0),
            v=_get_number(gm, "v", "generator", 0.0),
            w=_get_number(gm, "w", "generator", 0.0),
        )
    except ValueError as exc:
        raise ConfigError(f"generator: {exc}") from exc

    om = _expect_mapping(raw.get("output", {}), "output")
    _reject_unknown(om, {"formats", "plots"}, "output")
    formats = om.get("formats", ["csv"])
    if not isinstance(formats, list) or not formats:
        raise ConfigError("output.formats: expected a nonempty list")
    for f in formats:
        if f not in ("csv", "json"):
            raise ConfigError(f"output.formats: unknown format {f!r}")
    plots = om.get("plots", True)
    if not isinstance(plots, bool):
        raise ConfigError("output.plots: expected a boolean")

    blocks = {k: raw[k] for k in _COMMAND_BLOCKS if k in raw}
    return RunConfig(
        params=params,
        generator=generator,
        formats=tuple(formats),
        plots=plots,
        blocks=blocks,
        raw=raw,
    )
