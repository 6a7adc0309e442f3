"""Design-space sweeps over chuck width and adaptor diameter, and sample presets."""

from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import ColletError, DomainError
from .geometry import ColletGeometry
from .solver import (DEFAULT_CLEARANCE, DEFAULT_STEPS, DEFAULT_TRAVEL,
                     CurveRow, DeflectionCurve, StopReason, march)

GRID_SAMPLES = 200

# Sample geometries.  Only a, b0, c and d are given for the samples; gamma,
# t, E, leaves, pitch and rest_opening are shared assumptions (E is a typical
# modulus for a printed nylon composite).
ASSUMED = dict(t=2.0, gamma=0.2, E=1700.0, leaves=4, rest_opening=53.0, pitch=1.5)
_TABLE = {
    "S1": dict(a=34.0, b0=26.5, c=3.0, d=34.0),
    "S2": dict(a=34.0, b0=26.5, c=6.0, d=34.0),
    "S3": dict(a=34.0, b0=26.5, c=4.0, d=34.0),
    "S4": dict(a=34.0, b0=26.5, c=4.0, d=30.0),
    "S5": dict(a=34.0, b0=26.5, c=4.0, d=40.0),
}
PRESET_NAMES = tuple(_TABLE)


class Scenario(str, Enum):
    CHUCK_SIZE = "chuck_size"
    ADAPTOR_DIAMETER = "adaptor_diameter"

    @property
    def field(self) -> str:
        return "c" if self is Scenario.CHUCK_SIZE else "d"

    @classmethod
    def parse(cls, name: str) -> "Scenario":
        aliases = {"chuck": cls.CHUCK_SIZE, "adaptor": cls.ADAPTOR_DIAMETER}
        try:
            return aliases.get(name) or cls(name)
        except ValueError:
            raise DomainError(f"unknown scenario {name!r}") from None


def preset(name: str) -> ColletGeometry:
    """Geometry of sample ``S1``..``S5``."""
    try:
        dims = _TABLE[name.upper()]
    except KeyError:
        raise DomainError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None
    return ColletGeometry(**dims, **ASSUMED)


@dataclass
class DesignSpaceGrid:
    scenario: Scenario
    base_geometry: ColletGeometry
    swept_values: list[float]
    curves: list[DeflectionCurve]
    common_delta_grid: np.ndarray

    def resampled(self) -> np.ndarray:
        """Tip deflection of every curve on the common grid, shape (curves, samples)."""
        return np.array([np.interp(self.common_delta_grid, c.deltas, c.tips)
                         for c in self.curves])


def common_grid(curves: Sequence[DeflectionCurve], samples: int = GRID_SAMPLES) -> np.ndarray:
    """Uniform travel grid up to the shortest curve's final travel."""
    end = min(c.final_delta for c in curves)
    return np.linspace(0.0, end, samples)


def _run_point(args):
    geom, delta_total, n_steps, clearance = args
    return march(geom, delta_total, n_steps, clearance)


def sweep(base: ColletGeometry, scenario: Scenario | str, values: Sequence[float],
          delta_total: float = DEFAULT_TRAVEL, n_steps: int = DEFAULT_STEPS,
          clearance: float = DEFAULT_CLEARANCE, workers: int | None = None
          ) -> DesignSpaceGrid:
    """March every perturbed geometry; failed points keep a ``no_solution`` curve.

    With ``workers > 1`` the marches run in a process pool; output order
    always follows ``values``.
    """
    scenario = Scenario.parse(scenario) if isinstance(scenario, str) else scenario
    if not values:
        raise DomainError("sweep needs at least one value")

    geoms: list[ColletGeometry | str] = []
    for v in values:
        try:
            geoms.append(dataclasses.replace(base, **{scenario.field: float(v)}))
        except ColletError as exc:
            geoms.append(f"invalid geometry for {scenario.field}={v}: {exc}")
    jobs = [(g, delta_total, n_steps, clearance) for g in geoms
            if isinstance(g, ColletGeometry)]

    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            marched = iter(list(pool.map(_run_point, jobs)))
    else:
        marched = (_run_point(job) for job in jobs)

    curves = []
    for g in geoms:
        if isinstance(g, ColletGeometry):
            curves.append(next(marched))
        else:
            nan = float("nan")
            curves.append(DeflectionCurve(
                base, n_steps, [CurveRow(0.0, 0.0, nan, nan, nan, 0.0, 0.0)],
                StopReason.NO_SOLUTION, clearance, delta_total, failure=g))

    return DesignSpaceGrid(scenario, base, [float(v) for v in values], curves,
                           common_grid(curves))
