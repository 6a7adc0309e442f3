"""JSON run configuration: geometry, run, sweep and oracle blocks.

Angles in the file are degrees (``gamma_deg``) and stay degrees in
``RunConfig``; conversion to radians happens only when a ColletGeometry is
built, so a dumped config reloads bit-for-bit.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .designspace import ASSUMED, _TABLE, Scenario
from .errors import ColletError, ConfigError
from .geometry import ColletGeometry
from .solver import DEFAULT_CLEARANCE, DEFAULT_STEPS, DEFAULT_TRAVEL, thread_to_displacement


@dataclass
class GeometryBlock:
    a: float
    b0: float
    c: float
    d: float
    t: float
    gamma_deg: float
    E: float
    leaves: int = 4
    rest_opening: float = 53.0
    pitch: float = 1.5

    @classmethod
    def from_preset(cls, name: str) -> "GeometryBlock":
        try:
            dims = dict(_TABLE[name.upper()], **ASSUMED)
        except KeyError:
            raise ConfigError(f"unknown preset {name!r}") from None
        dims["gamma_deg"] = math.degrees(dims.pop("gamma"))
        return cls(**dims)

    def to_geometry(self) -> ColletGeometry:
        values = dataclasses.asdict(self)
        values["gamma"] = math.radians(values.pop("gamma_deg"))
        return ColletGeometry(**values)


@dataclass
class RunBlock:
    delta_total: float | None = DEFAULT_TRAVEL
    revolutions: float | None = None
    n_steps: int = DEFAULT_STEPS
    clearance: float = DEFAULT_CLEARANCE

    def travel(self, pitch: float) -> float:
        if self.delta_total is not None:
            return self.delta_total
        return thread_to_displacement(pitch, self.revolutions)


@dataclass
class SweepBlock:
    scenario: str = Scenario.CHUCK_SIZE.value
    values: list[float] = field(default_factory=list)


@dataclass
class OracleBlock:
    n_elems: int = 400
    tolerance: float = 0.10


@dataclass
class RunConfig:
    geometry: GeometryBlock
    run: RunBlock = field(default_factory=RunBlock)
    sweep: SweepBlock = field(default_factory=SweepBlock)
    oracle: OracleBlock = field(default_factory=OracleBlock)

    def collet_geometry(self) -> ColletGeometry:
        try:
            return self.geometry.to_geometry()
        except ColletError as exc:
            raise ConfigError(f"invalid geometry: {exc}") from exc

    def travel(self) -> float:
        return self.run.travel(self.geometry.pitch)

    def to_dict(self) -> dict[str, Any]:
        out = dataclasses.asdict(self)
        run = out["run"]
        if run["delta_total"] is None:
            del run["delta_total"]
        else:
            del run["revolutions"]
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any], preset: str | None = None) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
        unknown = set(data) - {"geometry", "run", "sweep", "oracle"}
        if unknown:
            raise ConfigError(f"unknown config blocks: {sorted(unknown)}")

        geo = dict(data.get("geometry") or {})
        preset = geo.pop("preset", None) if preset is None else preset
        if preset is not None:
            base = dataclasses.asdict(GeometryBlock.from_preset(preset))
            base.update(geo)
            geo = base
        geometry = _build(GeometryBlock, geo, "geometry")

        run = dict(data.get("run") or {})
        if "delta_total" in run and "revolutions" in run:
            raise ConfigError("run block: give exactly one of delta_total or revolutions")
        if "revolutions" in run:
            run["delta_total"] = None
        cfg = cls(
            geometry=geometry,
            run=_build(RunBlock, run, "run"),
            sweep=_build(SweepBlock, data.get("sweep") or {}, "sweep"),
            oracle=_build(OracleBlock, data.get("oracle") or {}, "oracle"),
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        self.collet_geometry()
        r = self.run
        if not isinstance(r.n_steps, int) or r.n_steps < 1:
            raise ConfigError(f"run.n_steps must be a positive integer, got {r.n_steps!r}")
        if not r.clearance > 0:
            raise ConfigError(f"run.clearance must be positive, got {r.clearance}")
        if r.delta_total is not None and not r.delta_total >= 0:
            raise ConfigError(f"run.delta_total must be >= 0, got {r.delta_total}")
        if r.delta_total is None and not (r.revolutions is not None and r.revolutions >= 0):
            raise ConfigError(f"run.revolutions must be >= 0, got {r.revolutions}")
        try:
            Scenario.parse(self.sweep.scenario)
        except ColletError as exc:
            raise ConfigError(str(exc)) from exc
        if not isinstance(self.oracle.n_elems, int) or self.oracle.n_elems < 16:
            raise ConfigError(f"oracle.n_elems must be an integer >= 16, got {self.oracle.n_elems!r}")

    @classmethod
    def load(cls, path: str | Path, preset: str | None = None) -> "RunConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
        return cls.from_dict(data, preset)

    @classmethod
    def for_preset(cls, name: str) -> "RunConfig":
        return cls.from_dict({}, preset=name)


def _build(kind, values: dict[str, Any], block: str):
    names = {f.name for f in dataclasses.fields(kind)}
    unknown = set(values) - names
    if unknown:
        raise ConfigError(f"{block} block: unknown keys {sorted(unknown)}")
    try:
        return kind(**values)
    except TypeError as exc:
        raise ConfigError(f"{block} block: {exc}") from exc
