"""Bending properties of the jaw's thin circular-arc cross-section.

At a station ``theta`` the section is an arc of mean radius
``R_bar = r(theta) * sin(theta)`` (the jaw's distance from the collet axis),
wall thickness ``t`` and central angle ``alpha``.  Second moments are about
the axis through the collet centre (``I_zz``) and about the section centroid
(``I_c``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SectionVanishedError
from .geometry import HALF_PI, ColletGeometry, EllipseState, radius_at


@dataclass(frozen=True)
class SectionProperties:
    theta: float
    R_bar: float
    alpha: float
    y_bar: float
    I_zz: float
    I_c: float


def central_angle(c: float, R_bar: float, leaves: int = 4) -> float:
    """Arc angle left to one jaw after removing a slot of width ``c`` each side."""
    if not R_bar > 0:
        raise DomainError(f"mean radius must be positive, got {R_bar}")
    if not c < 2 * R_bar:
        raise SectionVanishedError(f"slot width c={c} >= 2*R_bar={2 * R_bar}")
    alpha = 2 * math.pi / leaves - 2 * math.asin(c / (2 * R_bar))
    if not alpha > 0:
        raise SectionVanishedError(
            f"central angle {alpha:.6g} <= 0 (c={c}, R_bar={R_bar:.6g}, leaves={leaves})")
    return alpha


def thin_arc_izz(R_bar: float, t: float, alpha: float) -> float:
    return R_bar ** 3 * t * (alpha + math.sin(alpha)) / 2


def exact_arc_izz(R_bar: float, t: float, alpha: float) -> float:
    """``I_zz`` of the annular sector ``R_bar +/- t/2`` without the thin-wall step."""
    r_o, r_i = R_bar + t / 2, R_bar - t / 2
    return (r_o ** 4 - r_i ** 4) * (alpha + math.sin(alpha)) / 8


def centroid_offset(R_bar: float, alpha: float) -> float:
    return 2 * R_bar * math.sin(alpha / 2) / alpha


def shape_factor(alpha: float) -> float:
    """Dimensionless centroidal second moment: ``I_c = R_bar^3 * t * shape_factor``."""
    if alpha < 0.05:
        # closed form cancels catastrophically; leading term is alpha^5/720
        a2 = alpha * alpha
        return alpha ** 5 * (1 / 720 - a2 / 20160 + a2 * a2 / 1209600 - a2 ** 3 / 119750400)
    s = math.sin(alpha / 2)
    return (alpha + math.sin(alpha)) / 2 - 4 * s * s / alpha


def arc_properties(R_bar: float, t: float, alpha: float, theta: float = float("nan")
                   ) -> SectionProperties:
    """Section properties of a thin arc given its mean radius and central angle."""
    if not alpha > 0:
        raise SectionVanishedError(f"central angle {alpha} <= 0")
    return SectionProperties(
        theta=theta,
        R_bar=R_bar,
        alpha=alpha,
        y_bar=centroid_offset(R_bar, alpha),
        I_zz=thin_arc_izz(R_bar, t, alpha),
        I_c=R_bar ** 3 * t * shape_factor(alpha),
    )


def section_at(geom: ColletGeometry, state: EllipseState, theta: float) -> SectionProperties:
    """Section properties at ``theta`` on the current (deformed) ellipse."""
    if not geom.gamma <= theta <= HALF_PI:
        raise DomainError(f"theta={theta} outside the jaw [{geom.gamma}, pi/2]")
    R_bar = radius_at(state.a, state.b_k, theta) * math.sin(theta)
    alpha = central_angle(geom.c, R_bar, geom.leaves)
    return arc_properties(R_bar, geom.t, alpha, theta)
