"""Exception types shared across the toolkit.

All input-validation failures derive from :class:`SurrokitError`, itself a
``ValueError``, so callers can catch one base class.
"""


class SurrokitError(ValueError):
    """Base class for all toolkit errors."""


class NonFinite(SurrokitError):
    """A series contains NaN or infinite samples."""


class ConstantSeries(SurrokitError):
    """The series has zero sample variance."""


class TooShort(SurrokitError):
    """The series (or requested sub-segment) is too short for the operation."""


class BadWindow(SurrokitError):
    """Invalid window length / overlap combination."""


class SymmetryViolation(SurrokitError):
    """Spectrum violates the real-signal constraint (DC/Nyquist not real)."""


class BadCutoff(SurrokitError):
    """Phase-randomization cutoff bin outside [0, N/2]."""


class BadLag(SurrokitError):
    """Lag outside the admissible range."""


class BadBins(SurrokitError):
    """Histogram bin count below 2."""


class LengthMismatch(SurrokitError):
    """Two series that must have equal length do not."""


class Divergence(SurrokitError):
    """A simulated process left its stability region."""


class DegenerateEnsemble(SurrokitError):
    """Surrogate ensemble generation failed for at least one member."""


class NoPeak(SurrokitError):
    """The magnitude spectrum has no pronounced peak to anchor a cutoff."""
