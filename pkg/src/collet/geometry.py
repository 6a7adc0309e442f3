"""Elliptical jaw geometry and jaw/adaptor contact kinematics.

Angles are polar angles measured from the +x axis (the jaw base direction);
the jaw runs from the base at ``theta = gamma`` to the tip at ``theta = pi/2``.
Lengths are in mm.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import (DegenerateContactWarning, DomainError, GeometryError,
                     NoSolutionError, NonPhysicalStateError)
from .numerics import ROOT_ATOL, bisect, integrate

HALF_PI = 0.5 * math.pi
MIN_GAMMA = 0.05


@dataclass(frozen=True)
class ColletGeometry:
    """Design parameters of one collet jaw, its adaptor and thread.

    ``gamma`` is in radians; ``E`` in MPa; everything else in mm.
    """

    a: float
    b0: float
    c: float
    d: float
    t: float
    gamma: float
    E: float
    leaves: int = 4
    rest_opening: float = 53.0
    pitch: float = 1.5

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not (self.a > 0 and self.b0 > 0):
            raise GeometryError(f"axes must be positive (a={self.a}, b0={self.b0})")
        if not self.c >= 0:
            raise GeometryError(f"slot width c must be >= 0, got {self.c}")
        if not (self.t > 0 and self.E > 0):
            raise GeometryError(f"t and E must be positive (t={self.t}, E={self.E})")
        if int(self.leaves) != self.leaves or self.leaves < 2:
            raise GeometryError(f"leaves must be an integer >= 2, got {self.leaves}")
        if not self.pitch > 0:
            raise GeometryError(f"pitch must be positive, got {self.pitch}")
        if not self.rest_opening > 0:
            raise GeometryError(f"rest_opening must be positive, got {self.rest_opening}")
        if not 0 < self.d <= 2 * self.b0:
            raise GeometryError(
                f"adaptor diameter d={self.d} must lie in (0, 2*b0={2 * self.b0}]")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateContactWarning)
            beta = contact_angle(self.a, self.b0, self.d)
        if not MIN_GAMMA <= self.gamma < beta:
            raise GeometryError(
                f"base angle gamma={self.gamma} must satisfy "
                f"{MIN_GAMMA} <= gamma < beta={beta:.6g}")

        from .section import central_angle
        r_bar = radius_at(self.a, self.b0, self.gamma) * math.sin(self.gamma)
        try:
            central_angle(self.c, r_bar, self.leaves)
        except DomainError as exc:
            raise GeometryError(f"section vanishes at the jaw base: {exc}") from exc

    @property
    def apex_contact(self) -> bool:
        """True for the degenerate case d == 2*b0 (contact at the jaw tip)."""
        return self.d == 2 * self.b0

    def initial_state(self) -> "EllipseState":
        return EllipseState(self.a, self.b0, 0)


@dataclass(frozen=True)
class EllipseState:
    """Current deformed ellipse: fixed semi-major ``a``, semi-minor ``b_k``."""

    a: float
    b_k: float
    step_index: int = 0

    def __post_init__(self):
        if not (self.a > 0 and self.b_k > 0):
            raise DomainError(f"ellipse axes must be positive (a={self.a}, b={self.b_k})")


def _check_axes(a: float, b: float) -> None:
    if not (a > 0 and b > 0):
        raise DomainError(f"ellipse axes must be positive (a={a}, b={b})")


def radius_at(a: float, b: float, theta: float) -> float:
    """Polar radius of the ellipse ``x^2/a^2 + y^2/b^2 = 1`` at ``theta``."""
    _check_axes(a, b)
    if not 0.0 <= theta <= HALF_PI:
        raise DomainError(f"theta={theta} outside [0, pi/2]")
    return a * b / math.hypot(b * math.cos(theta), a * math.sin(theta))


def contact_angle(a: float, b: float, d: float) -> float:
    """Polar angle of the jaw point at height ``d/2`` (adaptor inner radius).

    The closed form is ``acot(a*sqrt(4b^2 - d^2) / (b*d))``, written with
    ``atan2`` so the apex case ``d == 2b`` returns exactly ``pi/2``.
    """
    _check_axes(a, b)
    if not d > 0:
        raise DomainError(f"adaptor diameter must be positive, got {d}")
    if d > 2 * b:
        raise NoSolutionError(f"adaptor diameter {d} exceeds jaw height 2b={2 * b}")
    if d == 2 * b:
        warnings.warn("contact at the jaw apex (d == 2b)", DegenerateContactWarning,
                      stacklevel=2)
        return HALF_PI
    return math.atan2(b * d, a * math.sqrt(4 * b * b - d * d))


def contact_x_after(a: float, b: float, beta: float, delta: float) -> float:
    """Abscissa of the contact point after the adaptor advances by ``delta``."""
    if delta < 0:
        raise DomainError(f"adaptor advance must be >= 0, got {delta}")
    x = radius_at(a, b, beta) * math.cos(beta) - delta
    if x < 0:
        raise NonPhysicalStateError(
            f"adaptor advanced past the apex (contact x = {x:.6g} mm)")
    return x


def update_minor_axis(a: float, b: float, beta: float, delta: float, d: float) -> float:
    """Semi-minor axis of the ellipse through the shifted contact ``(x'_c, d/2)``."""
    x = radius_at(a, b, beta) * math.cos(beta) - delta
    arg = a * a - x * x
    if not arg > 0:
        raise DomainError(f"shifted contact |x| = {abs(x):.6g} is not inside |x| < a = {a}")
    return a * d / (2.0 * math.sqrt(arg))


def arc_length(a: float, b: float, theta0: float, theta1: float) -> float:
    """Jaw arc length between two polar angles, ``int r(theta) dtheta``."""
    _check_axes(a, b)
    if not 0.0 <= theta0 <= theta1 <= HALF_PI:
        raise DomainError(f"need 0 <= theta0 <= theta1 <= pi/2, got ({theta0}, {theta1})")
    bb, aa = b * b, a * a
    ab = a * b

    def integrand(th):
        c, s = math.cos(th), math.sin(th)
        return ab / math.sqrt(bb * c * c + aa * s * s)

    return integrate(integrand, theta0, theta1)


def solve_next_contact_angle(a: float, b: float, beta: float, delta: float) -> float:
    """Angle ``phi`` such that the arc from ``beta`` to ``phi`` equals ``delta``.

    Solved by bisection on ``[beta, pi/2]`` to an absolute arc-length
    residual of ``1e-9`` mm.
    """
    if delta < 0:
        raise DomainError(f"adaptor advance must be >= 0, got {delta}")
    if delta == 0:
        return beta
    remaining = arc_length(a, b, beta, HALF_PI)
    if delta > remaining:
        raise NoSolutionError(
            f"advance {delta:.6g} mm exceeds the {remaining:.6g} mm of jaw left "
            "before the apex")
    return bisect(lambda phi: arc_length(a, b, beta, phi) - delta, beta, HALF_PI,
                  atol=ROOT_ATOL)
