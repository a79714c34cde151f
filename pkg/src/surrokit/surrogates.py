"""Constrained-realization surrogate generators.

Seven methods are provided:

======  ==========================================================
rs      random shuffle (preserves amplitude distribution)
rp      random phase (preserves periodogram / autocorrelation)
aaft    amplitude-adjusted Fourier transform (AD exact, spectrum approx.)
iaaft   iterated AAFT (AD exact, spectrum refined until convergence)
sss     small-shuffle surrogate (local index shuffle, keeps slow trends)
bpr     band-phase-randomized (phases randomized only above cutoff f_c)
aa_bpr  amplitude-adjusted band-phase-randomized (iaaft-style iteration
        that restores the data's low-band phases at every step)
======  ==========================================================

rs/aaft/iaaft/sss/aa_bpr outputs are exact permutations of the input;
rp/bpr preserve the one-sided periodogram exactly (magnitudes are copied,
never recomputed). Everything is deterministic per seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadCutoff, DegenerateEnsemble, SurrokitError
from .series import as_series, make_rng, spawn_seeds
from .spectral import forward, inverse, randomize_phases_band

METHODS = ("rs", "rp", "aaft", "iaaft", "sss", "bpr", "aa_bpr")


@dataclass(frozen=True)
class SurrogateSpec:
    """Method selector plus method parameters for one surrogate recipe."""

    method: str
    f_c: int = 0  # bpr / aa_bpr only
    sss_amplitude: float = 1.0  # sss only
    max_iterations: int = 1000  # iaaft / aa_bpr only
    seed: int | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise SurrokitError(f"unknown method {self.method!r}; use {METHODS}")
        if self.sss_amplitude <= 0:
            raise SurrokitError("sss_amplitude must be > 0")
        if self.max_iterations < 1:
            raise SurrokitError("max_iterations must be >= 1")


@dataclass
class IterationInfo:
    """Convergence metadata for the iterative generators."""

    iterations: int = 0
    converged: bool = True
    spectrum_rel_error: float = 0.0


def _ranks(values: np.ndarray) -> np.ndarray:
    """Rank of each element, ties broken by original index (stable)."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty_like(order)
    ranks[order] = np.arange(order.size)
    return ranks


def rs(x, seed) -> np.ndarray:
    """Random shuffle: a uniform random permutation of the data."""
    arr = as_series(x)
    return make_rng(seed).permutation(arr)


def rp(x, seed) -> np.ndarray:
    """Random-phase surrogate: all interior Fourier phases replaced."""
    arr = as_series(x)
    return inverse(randomize_phases_band(forward(arr), 0, seed))


def bpr(x, f_c: int, seed) -> np.ndarray:
    """Band-phase-randomized surrogate: phases replaced only above ``f_c``."""
    arr = as_series(x)
    return inverse(randomize_phases_band(forward(arr), f_c, seed))


def aaft(x, seed) -> np.ndarray:
    """Amplitude-adjusted Fourier transform surrogate.

    Gaussianize by rank, phase-randomize the gaussianized series, then
    rank-reorder the original data to match. The output has exactly the
    data's amplitude distribution; the spectrum is only approximately
    preserved (the method's documented flaw, fixed by :func:`iaaft`).
    """
    arr = as_series(x)
    rng = make_rng(seed)
    gauss = np.sort(rng.standard_normal(arr.size))
    gaussianized = gauss[_ranks(arr)]
    shuffled = inverse(randomize_phases_band(forward(gaussianized), 0, rng))
    return np.sort(arr)[_ranks(shuffled)]


def sss(x, sss_amplitude: float, seed) -> np.ndarray:
    """Small-shuffle surrogate: reorder by rank of ``index + A * gauss``.

    Small amplitudes displace each sample only a few positions, destroying
    inter-point dynamics while keeping any slow trend. ``A -> 0`` tends to the
    identity permutation (ties broken by original index).
    """
    arr = as_series(x)
    if sss_amplitude <= 0:
        raise SurrokitError("sss amplitude must be > 0")
    rng = make_rng(seed)
    keys = np.arange(arr.size) + sss_amplitude * rng.standard_normal(arr.size)
    return arr[np.argsort(keys, kind="stable")]


ADAPTATION_EXPONENT = 0.5  # imposed-magnitude correction strength
STALL_LIMIT = 30  # iterations without improvement before declaring a fixed point


def _iterate_amplitude_adjusted(
    arr: np.ndarray,
    seed,
    max_iterations: int,
    keep_below: int | None,
) -> tuple[np.ndarray, IterationInfo]:
    """Shared loop for iaaft (keep_below=None) and aa_bpr.

    Alternates a spectrum-enforcement step (impose magnitudes and, for
    aa_bpr, restore the data's phases for bins <= keep_below) with a
    rank-reorder step enforcing the data's amplitude distribution exactly.
    Ending on the reorder step leaves a residual spectral error; because
    that residual is a fixed bias of the reorder, it can be compensated:
    after every pass the *imposed* magnitudes are nudged by the ratio of
    target to achieved spectrum (exponent :data:`ADAPTATION_EXPONENT`), so
    the post-reorder spectrum — the one that matters — converges to the
    data's. The best output seen is kept; the loop stops once
    :data:`STALL_LIMIT` passes bring no further improvement.
    """
    rng = make_rng(seed)
    n = arr.size
    target = np.fft.rfft(arr)
    target_mag = np.abs(target)
    target_phase = np.angle(target)
    scale = np.linalg.norm(target_mag)
    sorted_arr = np.sort(arr)

    s = rng.permutation(arr)
    imposed = target_mag.copy()
    best_s, best_err = s, np.inf
    stall = 0
    info = IterationInfo(converged=False)
    for it in range(1, max_iterations + 1):
        phases = np.angle(np.fft.rfft(s))
        if keep_below is not None:
            phases[: keep_below + 1] = target_phase[: keep_below + 1]
        candidate = np.fft.irfft(imposed * np.exp(1j * phases), n=n)
        s = sorted_arr[_ranks(candidate)]
        info.iterations = it
        achieved = np.abs(np.fft.rfft(s))
        err = float(
            np.linalg.norm(achieved - target_mag) / scale if scale > 0 else 0.0
        )
        if err < best_err - 1e-15:
            best_s, best_err, stall = s, err, 0
        else:
            stall += 1
            if stall >= STALL_LIMIT:
                info.converged = True
                break
        ratio = np.divide(
            target_mag, achieved,
            out=np.ones_like(target_mag), where=achieved > 0,
        )
        imposed = imposed * ratio ** ADAPTATION_EXPONENT
    info.spectrum_rel_error = best_err if np.isfinite(best_err) else 0.0
    return best_s, info


def iaaft(
    x, seed, max_iterations: int = 1000, return_info: bool = False
):
    """Iterated AAFT surrogate.

    The amplitude distribution of the output is exactly the data's (the loop
    ends on a rank-reorder step); the spectrum is approximate, with the final
    relative error reported in the info record. Non-convergence within
    ``max_iterations`` is not an error, only flagged.
    """
    arr = as_series(x)
    out, info = _iterate_amplitude_adjusted(arr, seed, max_iterations, None)
    return (out, info) if return_info else out


def aa_bpr(
    x, f_c: int, seed, max_iterations: int = 1000, return_info: bool = False
):
    """Amplitude-adjusted band-phase-randomized surrogate.

    iaaft-style iteration whose spectrum step also restores the data's phases
    for every bin <= ``f_c``, so low-frequency (slow/trend) behavior survives
    while the amplitude distribution is matched exactly. ``f_c = 0`` reduces
    to iaaft; ``f_c = N//2`` returns the data itself.
    """
    arr = as_series(x)
    if not 0 <= f_c <= arr.size // 2:
        raise BadCutoff(f"f_c={f_c} outside [0, {arr.size // 2}]")
    out, info = _iterate_amplitude_adjusted(arr, seed, max_iterations, f_c)
    return (out, info) if return_info else out


def generate(x, spec: SurrogateSpec, seed=None) -> np.ndarray:
    """Generate one surrogate according to ``spec``.

    ``seed`` overrides ``spec.seed`` (used for ensemble splitting).
    """
    use_seed = spec.seed if seed is None else seed
    if spec.method == "rs":
        return rs(x, use_seed)
    if spec.method == "rp":
        return rp(x, use_seed)
    if spec.method == "aaft":
        return aaft(x, use_seed)
    if spec.method == "iaaft":
        return iaaft(x, use_seed, spec.max_iterations)
    if spec.method == "sss":
        return sss(x, spec.sss_amplitude, use_seed)
    if spec.method == "bpr":
        return bpr(x, spec.f_c, use_seed)
    if spec.method == "aa_bpr":
        return aa_bpr(x, spec.f_c, use_seed, spec.max_iterations)
    raise SurrokitError(f"unknown method {spec.method!r}")


def ensemble(x, spec: SurrogateSpec, m: int) -> np.ndarray:
    """Generate ``m`` surrogates as an (m, N) array.

    Member k is driven by child seed k of ``spec.seed`` (see
    :func:`surrokit.series.spawn_seeds`), so the ensemble is reproducible
    and independent of generation order.
    """
    arr = as_series(x)
    if m < 1:
        raise SurrokitError("ensemble size must be >= 1")
    seeds = spawn_seeds(spec.seed, m)
    out = np.empty((m, arr.size))
    for k, child in enumerate(seeds):
        try:
            out[k] = generate(arr, spec, seed=child)
        except SurrokitError as exc:
            raise DegenerateEnsemble(f"surrogate {k} failed: {exc}") from exc
    return out
