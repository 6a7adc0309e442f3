"""Incremental march of the adaptor over the jaw.

Each increment recomputes the contact angle on the current ellipse, finds
the next contact angle by arc length, adds the Castigliano tip increment and
then shrinks the ellipse's semi-minor axis so that it passes through the
shifted contact point.  The march stops at the requested travel, when the tip
reaches the knob clearance or the tooth-interference limit, or when a step
has no solution.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .errors import ColletError, DegenerateContactWarning, DomainError
from .geometry import (ColletGeometry, EllipseState, contact_angle, contact_x_after,
                       solve_next_contact_angle, update_minor_axis)
from .mechanics import ContactSolution, solve_contact

log = logging.getLogger(__name__)

DEFAULT_STEPS = 60
DEFAULT_CLEARANCE = 1.5
DEFAULT_TRAVEL = 3.0


class StopReason(str, Enum):
    REACHED_DELTA = "reached_delta"
    CLEARANCE_REACHED = "clearance_reached"
    INTERFERENCE = "interference"
    NO_SOLUTION = "no_solution"


class CurveRow(NamedTuple):
    """State after an increment.

    ``b`` is the semi-minor axis after the update; ``beta``, ``phi`` and the
    forces belong to the increment that produced the row.  Row 0 is the
    unloaded start (``phi == beta``, zero forces).
    """

    delta: float
    delta_tip: float
    b: float
    beta: float
    phi: float
    fx: float
    fy: float


@dataclass
class DeflectionCurve:
    geometry: ColletGeometry
    n_steps: int
    rows: list[CurveRow]
    stop_reason: StopReason
    clearance: float = DEFAULT_CLEARANCE
    delta_total: float = 0.0
    steps: list[ContactSolution] = field(default_factory=list, repr=False)
    failure: str | None = None

    @property
    def deltas(self) -> list[float]:
        return [row.delta for row in self.rows]

    @property
    def tips(self) -> list[float]:
        return [row.delta_tip for row in self.rows]

    @property
    def final_delta(self) -> float:
        return self.rows[-1].delta

    @property
    def max_tip(self) -> float:
        return max(row.delta_tip for row in self.rows)


def thread_to_displacement(pitch: float, revolutions: float) -> float:
    """Axial adaptor advance for ``revolutions`` turns of a thread of ``pitch``."""
    if not pitch > 0:
        raise DomainError(f"pitch must be positive, got {pitch}")
    if revolutions < 0:
        raise DomainError(f"revolutions must be >= 0, got {revolutions}")
    return pitch * revolutions


def interference_limit(geom: ColletGeometry) -> float:
    """Tip travel at which the slot gaps close (first-order model ``m*c/2pi``).

    Closing every jaw radially by ``delta`` shortens the circumference by
    ``2*pi*delta``; the ``m`` slots of width ``c`` absorb at most ``m*c``.
    """
    return geom.leaves * geom.c / (2 * math.pi)


def grip_range(geom: ColletGeometry, curve: DeflectionCurve) -> tuple[float, float]:
    """Smallest and largest knob diameters the collet can clamp."""
    return geom.rest_opening - 2 * curve.max_tip, geom.rest_opening


def march(geom: ColletGeometry, delta_total: float = DEFAULT_TRAVEL,
          n_steps: int = DEFAULT_STEPS, clearance: float = DEFAULT_CLEARANCE
          ) -> DeflectionCurve:
    """Run the adaptor over ``delta_total`` mm in ``n_steps`` equal increments.

    When an increment carries the tip past the clearance or interference
    limit, the final row is placed where the limit is crossed by linear
    interpolation within that increment, so the tip never exceeds the limit.
    """
    if delta_total < 0:
        raise DomainError(f"delta_total must be >= 0, got {delta_total}")
    if int(n_steps) != n_steps or n_steps < 1:
        raise DomainError(f"n_steps must be a positive integer, got {n_steps}")
    if not clearance > 0:
        raise DomainError(f"clearance must be positive, got {clearance}")

    state = geom.initial_state()
    beta0 = _initial_beta(geom)
    rows = [CurveRow(0.0, 0.0, geom.b0, beta0, beta0, 0.0, 0.0)]
    curve = DeflectionCurve(geom, n_steps, rows, StopReason.REACHED_DELTA,
                            clearance=clearance, delta_total=delta_total)

    interference = interference_limit(geom)
    limit = min(clearance, interference)
    limit_reason = (StopReason.CLEARANCE_REACHED if clearance <= interference
                    else StopReason.INTERFERENCE)
    if delta_total == 0:
        return curve
    if limit <= 0:
        curve.stop_reason = limit_reason
        return curve

    h = delta_total / n_steps
    tip = 0.0
    for k in range(n_steps):
        try:
            sol = solve_contact(geom, state, h)
            contact_x_after(state.a, state.b_k, sol.beta, h)  # raises past the apex
            b_next = update_minor_axis(state.a, state.b_k, sol.beta, h, geom.d)
        except ColletError as exc:
            curve.stop_reason = StopReason.NO_SOLUTION
            curve.failure = f"step {k}: {exc}"
            log.info("march stopped at step %d: %s", k, exc)
            return curve

        tip_next = tip + sol.delta_tip_step
        curve.steps.append(sol)
        if tip_next >= limit:
            s = (limit - tip) / sol.delta_tip_step
            rows.append(_partial_row(geom, state, sol, k * h, h, s, limit))
            curve.stop_reason = limit_reason
            return curve

        tip = tip_next
        rows.append(CurveRow((k + 1) * h, tip, b_next, sol.beta, sol.phi, sol.F_X, sol.F_Y))
        state = EllipseState(state.a, min(b_next, state.b_k), k + 1)
    return curve


def _initial_beta(geom: ColletGeometry) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateContactWarning)
        return contact_angle(geom.a, geom.b0, geom.d)


def _partial_row(geom, state, sol, delta_start, h, s, tip_limit):
    sub = s * h
    b = update_minor_axis(state.a, state.b_k, sol.beta, sub, geom.d)
    phi = solve_next_contact_angle(state.a, state.b_k, sol.beta, sub)
    return CurveRow(delta_start + sub, tip_limit, min(b, state.b_k), sol.beta, phi,
                    s * sol.F_X, s * sol.F_Y)
