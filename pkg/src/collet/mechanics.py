"""Castigliano statics of the elliptical jaw for one adaptor increment.

Sign convention: ``F_X`` and ``F_Y`` are the magnitudes of the contact force
components, which push the jaw inward (-x) and down (-y).  ``V`` is a virtual
downward force at the tip.  With these signs the internal moment at station
``theta`` (from the loads between ``theta`` and the tip) is::

    M = V*x(theta) + F_Y*(x(theta) - x(beta)) + F_X*(y(beta) - y(theta))   for theta <= beta
    M = V*x(theta)                                                         for theta >  beta

and all deflections are reported positive downward.  Arc elements are
``r(theta) dtheta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, SectionVanishedError, SingularSystemError
from .geometry import (HALF_PI, ColletGeometry, EllipseState, contact_angle,
                       radius_at, solve_next_contact_angle)
from .numerics import integrate
from .section import central_angle, shape_factor


class Compliance(NamedTuple):
    """Contact (``a_*``) and tip (``b_*``) flexibility coefficients, mm/N."""

    a_x: float
    a_y: float
    b_x: float
    b_y: float


@dataclass(frozen=True)
class ContactSolution:
    beta: float
    phi: float
    gap: float
    F_X: float
    F_Y: float
    a_x: float
    a_y: float
    b_x: float
    b_y: float
    delta_tip_step: float

    @property
    def coefficients(self) -> Compliance:
        return Compliance(self.a_x, self.a_y, self.b_x, self.b_y)


def moment_terms(geom: ColletGeometry, state: EllipseState, theta: float,
                 beta: float) -> tuple[float, float, float]:
    """Partial derivatives of the internal moment w.r.t. ``F_Y``, ``F_X`` and ``V``."""
    if not geom.gamma <= theta <= HALF_PI:
        raise DomainError(f"theta={theta} outside the jaw [{geom.gamma}, pi/2]")
    a, b = state.a, state.b_k
    r_t = radius_at(a, b, theta)
    x_t = r_t * math.cos(theta)
    if theta > beta:
        return 0.0, 0.0, x_t
    r_b = radius_at(a, b, beta)
    dm_dfy = x_t - r_b * math.cos(beta)
    dm_dfx = r_b * math.sin(beta) - r_t * math.sin(theta)
    return dm_dfy, dm_dfx, x_t


def force_ratio(a: float, b: float, beta: float) -> float:
    """``F_Y / F_X`` for a contact force normal to the ellipse at ``beta``."""
    if not 0 <= beta < HALF_PI:
        raise DomainError(
            f"force ratio is unbounded for contact angle beta={beta} (need beta < pi/2)")
    return (a * a) / (b * b) * math.tan(beta)


def _bending_rigidity(geom: ColletGeometry, R_bar: float) -> float:
    alpha = central_angle(geom.c, R_bar, geom.leaves)
    return geom.E * R_bar ** 3 * geom.t * shape_factor(alpha)


def compliance_coefficients(geom: ColletGeometry, state: EllipseState,
                            beta: float) -> Compliance:
    """Integrate the four flexibility coefficients over ``[gamma, beta]``."""
    gamma = geom.gamma
    if beta < gamma:
        raise DomainError(f"contact angle beta={beta} lies below the jaw base gamma={gamma}")
    if beta == gamma:
        return Compliance(0.0, 0.0, 0.0, 0.0)
    if beta > HALF_PI:
        raise DomainError(f"contact angle beta={beta} beyond the tip")

    a, b = state.a, state.b_k
    r_b = radius_at(a, b, beta)
    x_b, y_b = r_b * math.cos(beta), r_b * math.sin(beta)
    # alpha is smallest at the base; fail here rather than inside quad
    _bending_rigidity(geom, radius_at(a, b, gamma) * math.sin(gamma))

    def parts(th):
        r = radius_at(a, b, th)
        x, y = r * math.cos(th), r * math.sin(th)
        w = r / _bending_rigidity(geom, y)
        return x - x_b, y_b - y, x, w

    def f_ax(th):
        arm_y, arm_x, _, w = parts(th)
        return arm_x * arm_y * w

    def f_ay(th):
        arm_y, _, _, w = parts(th)
        return arm_y * arm_y * w

    def f_bx(th):
        _, arm_x, x, w = parts(th)
        return arm_x * x * w

    def f_by(th):
        arm_y, _, x, w = parts(th)
        return arm_y * x * w

    return Compliance(*(integrate(f, gamma, beta) for f in (f_ax, f_ay, f_bx, f_by)))


def solve_contact_forces(coeffs: Compliance, ratio: float, gap: float) -> tuple[float, float]:
    """Contact forces that produce the prescribed downward contact deflection."""
    if gap < 0:
        raise DomainError(f"contact gap must be >= 0, got {gap}")
    denom = coeffs.a_x + coeffs.a_y * ratio
    if not denom > 1e-300:
        raise SingularSystemError(f"contact compliance a_x + a_y*ratio = {denom!r}")
    f_x = gap / denom
    return f_x, ratio * f_x


def tip_deflection_step(coeffs: Compliance, ratio: float, gap: float) -> float:
    """Tip deflection for a given contact gap; independent of E and t."""
    solve_contact_forces(coeffs, ratio, gap)
    if gap == 0:
        return 0.0
    return gap * (coeffs.b_x + coeffs.b_y * ratio) / (coeffs.a_x + coeffs.a_y * ratio)


def solve_contact(geom: ColletGeometry, state: EllipseState, step: float) -> ContactSolution:
    """Contact kinematics and statics for one adaptor increment on ``state``."""
    a, b = state.a, state.b_k
    beta = contact_angle(a, b, geom.d)
    phi = solve_next_contact_angle(a, b, beta, step)
    gap = max(radius_at(a, b, phi) * math.sin(phi) - geom.d / 2, 0.0)
    coeffs = compliance_coefficients(geom, state, beta)
    ratio = force_ratio(a, b, beta)
    f_x, f_y = solve_contact_forces(coeffs, ratio, gap)
    return ContactSolution(
        beta=beta, phi=phi, gap=gap, F_X=f_x, F_Y=f_y,
        a_x=coeffs.a_x, a_y=coeffs.a_y, b_x=coeffs.b_x, b_y=coeffs.b_y,
        delta_tip_step=tip_deflection_step(coeffs, ratio, gap),
    )


def strain_energy(geom: ColletGeometry, state: EllipseState, beta: float,
                  F_X: float, F_Y: float, V: float = 0.0, n_gauss: int = 400) -> float:
    """Bending strain energy ``int M^2 / (2 E I) r dtheta`` with a real tip force ``V``.

    Uses a fixed Gauss-Legendre rule on each side of ``beta`` so that energies
    at neighbouring ``V`` share nodes and differences are free of adaptive noise.
    """
    x_gl, w_gl = np.polynomial.legendre.leggauss(n_gauss)
    a, b = state.a, state.b_k
    r_b = radius_at(a, b, beta)
    x_b, y_b = r_b * math.cos(beta), r_b * math.sin(beta)

    total = 0.0
    for lo, hi, loaded in ((geom.gamma, beta, True), (beta, HALF_PI, False)):
        if hi <= lo:
            continue
        th = 0.5 * (hi - lo) * x_gl + 0.5 * (hi + lo)
        r = a * b / np.hypot(b * np.cos(th), a * np.sin(th))
        x, y = r * np.cos(th), r * np.sin(th)
        moment = V * x
        if loaded:
            moment = moment + F_Y * (x - x_b) + F_X * (y_b - y)
        alpha = 2 * math.pi / geom.leaves - 2 * np.arcsin(geom.c / (2 * y))
        if np.any(alpha <= 0):
            raise SectionVanishedError("central angle <= 0 inside the jaw")
        s = np.sin(alpha / 2)
        rigidity = geom.E * y ** 3 * geom.t * ((alpha + np.sin(alpha)) / 2 - 4 * s * s / alpha)
        total += 0.5 * (hi - lo) * float(np.sum(w_gl * moment ** 2 / (2 * rigidity) * r))
    return total


def energy_tip_deflection(geom: ColletGeometry, state: EllipseState,
                          solution: ContactSolution, h: float = 1e-4) -> float:
    """Tip deflection as ``dU/dV`` at ``V = 0`` by central difference."""
    def u(v):
        return strain_energy(geom, state, solution.beta, solution.F_X, solution.F_Y, v)
    return (u(h) - u(-h)) / (2 * h)
