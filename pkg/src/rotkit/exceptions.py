"""Exception types shared across the package."""


class RotkitError(ValueError):
    """Base class for all rotkit domain errors."""


class DimensionMismatch(RotkitError):
    """Input shapes are inconsistent with the requested operation."""


class NearZeroInput(RotkitError):
    """A vector that must be normalized has norm below the safe threshold."""


class NearZeroAxis(NearZeroInput):
    """Axis part of an axis-angle vector is too small for a nonzero angle."""


class NearZeroScale(RotkitError):
    """Similarity-transform scale is below the safe threshold."""


class DegenerateInput(RotkitError):
    """Input lies in the measure-zero set where the map is undefined
    (e.g. span-deficient columns fed to the orthonormalization)."""


class ProjectionPole(RotkitError):
    """Normalized input coincides with the stereographic projection point."""


class InvalidK(RotkitError):
    """Projection count k outside the valid range 1..n-2."""


class EmptyInput(RotkitError):
    """An operation that needs at least one element received none."""


class ConfigError(RotkitError):
    """Experiment configuration is invalid."""
