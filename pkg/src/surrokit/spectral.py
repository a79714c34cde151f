"""One-sided Fourier decomposition of real series and band-limited phase
randomization.

A :class:`Spectrum` holds the magnitude/phase of the one-sided DFT
(bins 0..N//2). Conjugate symmetry of the full spectrum is implicit: the
inverse transform reconstructs a real series as long as the DC bin (and the
Nyquist bin, for even N) stays real, i.e. has phase 0 or pi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadCutoff, SymmetryViolation
from .series import as_series, make_rng

_REAL_PHASE_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Magnitude/phase of the one-sided DFT of a real series of length N."""

    magnitudes: np.ndarray  # |X(n)|, n = 0..N//2
    phases: np.ndarray  # arg X(n) in (-pi, pi]
    n_samples: int

    @property
    def n_bins(self) -> int:
        return self.magnitudes.size

    @property
    def has_nyquist(self) -> bool:
        return self.n_samples % 2 == 0

    def __post_init__(self):
        if self.magnitudes.shape != self.phases.shape:
            raise SymmetryViolation("magnitude/phase arrays differ in shape")
        if self.magnitudes.size != self.n_samples // 2 + 1:
            raise SymmetryViolation("one-sided spectrum has wrong bin count")


def _check_real_bins(spec: Spectrum) -> None:
    def is_real_phase(phi: float) -> bool:
        return min(abs(phi), abs(abs(phi) - np.pi)) <= _REAL_PHASE_TOL

    if not is_real_phase(spec.phases[0]):
        raise SymmetryViolation(f"DC phase {spec.phases[0]} not in {{0, pi}}")
    if spec.has_nyquist and not is_real_phase(spec.phases[-1]):
        raise SymmetryViolation(f"Nyquist phase {spec.phases[-1]} not in {{0, pi}}")


def forward(x) -> Spectrum:
    """One-sided DFT split into magnitudes and phases."""
    arr = as_series(x)
    X = np.fft.rfft(arr)
    return Spectrum(
        magnitudes=np.abs(X), phases=np.angle(X), n_samples=arr.size
    )


def inverse(spec: Spectrum) -> np.ndarray:
    """Reconstruct the real series from a one-sided spectrum.

    Raises :class:`SymmetryViolation` when the DC (or Nyquist) bin carries a
    non-real phase and the result could not be a real series.
    """
    _check_real_bins(spec)
    X = spec.magnitudes * np.exp(1j * spec.phases)
    return np.fft.irfft(X, n=spec.n_samples)


def randomize_phases_band(spec: Spectrum, f_c: int, seed) -> Spectrum:
    """Replace phases above cutoff bin ``f_c`` with fresh uniform draws.

    Bins ``n <= f_c`` keep their original phases (this preserves the slow,
    low-frequency behavior of the series); interior bins above the cutoff get
    i.i.d. phases uniform on (-pi, pi]. Magnitudes are copied bit-for-bit and
    the DC/Nyquist bins are never touched, so the inverse stays real and keeps
    the original sample mean. ``f_c = 0`` randomizes every interior phase
    (full phase randomization); ``f_c = N//2`` is the identity.
    """
    if not 0 <= f_c <= spec.n_samples // 2:
        raise BadCutoff(f"f_c={f_c} outside [0, {spec.n_samples // 2}]")
    rng = make_rng(seed)
    phases = spec.phases.copy()
    # Interior bins strictly above f_c; the last bin is excluded only when it
    # is a true Nyquist bin (even N).
    hi = spec.n_bins - 1 if spec.has_nyquist else spec.n_bins
    lo = max(f_c + 1, 1)
    if lo < hi:
        phases[lo:hi] = rng.uniform(-np.pi, np.pi, size=hi - lo)
    return Spectrum(
        magnitudes=spec.magnitudes.copy(),
        phases=phases,
        n_samples=spec.n_samples,
    )
