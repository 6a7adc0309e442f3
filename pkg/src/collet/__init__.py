"""Analytical model of an elliptical-jaw collet closed by a threaded adaptor."""

from .designspace import DesignSpaceGrid, Scenario, preset, sweep
from .errors import (ColletError, ConfigError, DomainError, GeometryError,
                     NoSolutionError, SectionVanishedError, SingularSystemError)
from .geometry import (ColletGeometry, EllipseState, arc_length, contact_angle,
                       contact_x_after, radius_at, solve_next_contact_angle,
                       update_minor_axis)
from .mechanics import (Compliance, ContactSolution, compliance_coefficients,
                        force_ratio, moment_terms, solve_contact,
                        solve_contact_forces, tip_deflection_step)
from .section import SectionProperties, central_angle, section_at
from .solver import (DeflectionCurve, StopReason, grip_range,
                     interference_limit, march, thread_to_displacement)

__version__ = "0.1.0"
