"""Exception and warning types raised by the collet model."""


class ColletError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ColletError, ValueError):
    """An input lies outside the domain where a formula is defined."""


class GeometryError(DomainError):
    """A ColletGeometry violates one of its invariants."""


class SectionVanishedError(DomainError):
    """The jaw cross-section central angle has dropped to zero or below."""


class NoSolutionError(ColletError):
    """A root or contact point could not be found (e.g. adaptor ran off the jaw)."""


class NonPhysicalStateError(NoSolutionError):
    """The march reached a configuration with no physical meaning."""


class SingularSystemError(ColletError):
    """A linear system (force solve or stiffness matrix) is singular."""


class ConfigError(ColletError):
    """A run configuration could not be read or validated."""


class DegenerateContactWarning(UserWarning):
    """Adaptor diameter equals the jaw apex height, so contact sits at the apex."""
