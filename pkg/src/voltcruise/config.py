"""Scenario files: one JSON document with aircraft, battery and mission sections."""

import dataclasses
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .airframe import AircraftParams
from .battery import BatteryParams
from .errors import DomainError
from .planner import MissionSpec

GOLDEN_SCENARIO = "cx300_montreal_ottawa"

_SECTIONS = {
    "aircraft": AircraftParams,
    "battery": BatteryParams,
    "mission": MissionSpec,
}
_OVERRIDE_KEYS = ("density_kg_m3",)
_TOP_LEVEL = set(_SECTIONS) | {"overrides", "description"}


class ConfigError(ValueError):
    """A scenario file is malformed. ``key`` and ``line`` locate the problem when known."""

    def __init__(self, message, key=None, line=None):
        where = ""
        if key is not None:
            where += f" [key '{key}'"
            where += f", line {line}]" if line is not None else "]"
        super().__init__(message + where)
        self.key = key
        self.line = line


@dataclass(frozen=True)
class ScenarioConfig:
    aircraft: AircraftParams
    battery: BatteryParams
    mission: MissionSpec
    density_override: float | None = None
    description: str = ""

    def to_dict(self):
        out = {
            "description": self.description,
            "aircraft": dataclasses.asdict(self.aircraft),
            "battery": dataclasses.asdict(self.battery),
            "mission": dataclasses.asdict(self.mission),
        }
        if self.density_override is not None:
            out["overrides"] = {"density_kg_m3": self.density_override}
        return out


def golden_scenario_path(name=GOLDEN_SCENARIO):
    return Path(str(resources.files("voltcruise") / "data" / f"{name}.json"))


def _line_of(text, key, after=None):
    lines = text.splitlines()
    start = 0
    if after is not None:
        for i, line in enumerate(lines):
            if f'"{after}"' in line:
                start = i
                break
    for i in range(start, len(lines)):
        if f'"{key}"' in lines[i]:
            return i + 1
    return None


def _number(section, key, value, text):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key} must be a number, got {value!r}", key, _line_of(text, key, section))
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{section}.{key} must be finite", key, _line_of(text, key, section))
    return value


def _build_section(name, cls, raw, text):
    if not isinstance(raw, dict):
        raise ConfigError(f"section '{name}' must be an object", name, _line_of(text, name))
    expected = [f.name for f in dataclasses.fields(cls)]
    for key in raw:
        if key not in expected:
            raise ConfigError(f"unknown key in section '{name}'", key, _line_of(text, key, name))
    for key in expected:
        if key not in raw:
            raise ConfigError(f"missing required key in section '{name}'", key, _line_of(text, name))
    values = {k: _number(name, k, raw[k], text) for k in expected}
    try:
        return cls(**values)
    except DomainError as exc:
        key = exc.field or name
        raise ConfigError(f"invalid {name}: {exc}", key, _line_of(text, key, name)) from None


def parse_scenario(text):
    """Validate scenario JSON text into a ScenarioConfig."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(raw, dict):
        raise ConfigError("scenario must be a JSON object")
    for key in raw:
        if key not in _TOP_LEVEL:
            raise ConfigError("unknown top-level key", key, _line_of(text, key))
    for name in _SECTIONS:
        if name not in raw:
            raise ConfigError("missing required section", name)
    built = {name: _build_section(name, cls, raw[name], text) for name, cls in _SECTIONS.items()}

    density = None
    overrides = raw.get("overrides", {})
    if not isinstance(overrides, dict):
        raise ConfigError("section 'overrides' must be an object", "overrides", _line_of(text, "overrides"))
    for key, value in overrides.items():
        if key not in _OVERRIDE_KEYS:
            raise ConfigError("unknown key in section 'overrides'", key, _line_of(text, key, "overrides"))
        density = _number("overrides", key, value, text)
        if density <= 0:
            raise ConfigError("overrides.density_kg_m3 must be > 0", key, _line_of(text, key, "overrides"))

    description = raw.get("description", "")
    if not isinstance(description, str):
        raise ConfigError("description must be a string", "description", _line_of(text, "description"))
    return ScenarioConfig(density_override=density, description=description, **built)


def load_scenario(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc.strerror}") from None
    return parse_scenario(text)
