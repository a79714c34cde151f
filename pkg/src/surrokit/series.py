"""Core time-series operations: validation, normalization, end-point
trimming, windowed local moments, calibrated noise, and plain-text I/O.

Conventions used throughout the toolkit:

* a time series is a 1-d ``float64`` numpy array of length >= 2 with all
  samples finite;
* sample variance always uses the unbiased (N-1) divisor;
* every stochastic operation takes an explicit seed and is deterministic
  given that seed.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import BadWindow, ConstantSeries, NonFinite, TooShort


def make_rng(seed) -> np.random.Generator:
    """Build the toolkit's generator (PCG64 via ``default_rng``) from a seed.

    Accepts ints, ``SeedSequence`` objects (used for ensemble splitting) or
    ready-made generators, which are passed through.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_seeds(master_seed, count: int) -> list[np.random.SeedSequence]:
    """Derive ``count`` independent child seeds from a master seed.

    The splitting rule is ``np.random.SeedSequence(master_seed).spawn(count)``;
    child k always drives surrogate/trial k, so ensemble results do not depend
    on execution order.
    """
    if isinstance(master_seed, np.random.SeedSequence):
        return master_seed.spawn(count)
    return np.random.SeedSequence(master_seed).spawn(count)


def as_series(x, min_length: int = 2) -> np.ndarray:
    """Coerce ``x`` to a valid 1-d float series, raising on bad input."""
    arr = np.asarray(x, dtype=float).ravel()
    if arr.size < min_length:
        raise TooShort(f"series has {arr.size} samples, need >= {min_length}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite("series contains NaN or infinite samples")
    return arr


def normalize(x) -> np.ndarray:
    """Rescale to zero sample mean and unit sample variance (N-1 divisor).

    Idempotent within floating-point tolerance and affine-invariant:
    ``normalize(a * x + b) == sign(a) * normalize(x)``.
    """
    arr = as_series(x)
    std = arr.std(ddof=1)
    if std == 0.0:
        raise ConstantSeries("cannot normalize a constant series")
    return (arr - arr.mean()) / std


def trim_endpoint_mismatch(x, min_keep_fraction: float = 0.9) -> np.ndarray:
    """Return the sub-segment minimizing the end-point mismatch.

    The mismatch of segment ``x[i..j]`` combines the value jump and the
    first-difference (slope) jump across the wrap-around point::

        C(i, j) = (x[i] - x[j])**2 + ((x[i+1] - x[i]) - (x[j] - x[j-1]))**2

    Only segments of length >= ``min_keep_fraction * N`` are considered.
    Ties prefer longer segments, then smaller start index.
    """
    arr = as_series(x)
    n = arr.size
    if not 0.0 < min_keep_fraction <= 1.0 or n * min_keep_fraction < 16:
        raise TooShort(
            "need 0 < min_keep_fraction <= 1 and N * min_keep_fraction >= 16"
        )
    l_min = int(np.ceil(n * min_keep_fraction))
    d = np.diff(arr)  # d[i] = x[i+1] - x[i]

    best_cost = np.inf
    best = (0, n - 1)
    # Longest lengths first, strict improvement only: ties resolve to the
    # longer segment, and argmin resolves equal costs to the smaller i.
    for length in range(n, l_min - 1, -1):
        i = np.arange(0, n - length + 1)
        j = i + length - 1
        cost = (arr[i] - arr[j]) ** 2 + (d[i] - d[j - 1]) ** 2
        k = int(np.argmin(cost))
        if cost[k] < best_cost:
            best_cost = cost[k]
            best = (int(i[k]), int(j[k]))
    i0, j0 = best
    return arr[i0 : j0 + 1].copy()


@dataclass(frozen=True)
class LocalMoments:
    """Per-window sample mean and variance over sliding windows."""

    window_length: int
    overlap_fraction: float
    means: np.ndarray
    variances: np.ndarray

    @property
    def n_windows(self) -> int:
        return self.means.size


def local_moments(x, window_length: int, overlap_fraction: float) -> LocalMoments:
    """Windowed mean/variance with windows anchored at index 0.

    The hop is ``round(window_length * (1 - overlap_fraction))`` samples
    (at least 1); a trailing partial window is discarded.
    """
    arr = as_series(x)
    n = arr.size
    if not (2 <= window_length <= n) or not (0.0 <= overlap_fraction < 1.0):
        raise BadWindow(
            f"need 2 <= window_length <= {n} and 0 <= overlap_fraction < 1"
        )
    step = max(1, int(round(window_length * (1.0 - overlap_fraction))))
    windows = np.lib.stride_tricks.sliding_window_view(arr, window_length)[::step]
    return LocalMoments(
        window_length=window_length,
        overlap_fraction=overlap_fraction,
        means=windows.mean(axis=1),
        variances=windows.var(axis=1, ddof=1),
    )


def add_noise_snr(x, snr_db: float, seed) -> np.ndarray:
    """Add zero-mean Gaussian white noise at the requested SNR (dB).

    Noise variance is ``var(x) / 10**(snr_db / 10)``. ``snr_db = inf`` is the
    no-noise sentinel and returns the input unchanged.
    """
    arr = as_series(x)
    var_x = arr.var(ddof=1)
    if var_x == 0.0:
        raise ConstantSeries("SNR undefined for a constant series")
    if np.isposinf(snr_db):
        return arr.copy()
    rng = make_rng(seed)
    sigma = np.sqrt(var_x / 10.0 ** (snr_db / 10.0))
    return arr + rng.normal(0.0, sigma, size=arr.size)


def read_series(path) -> np.ndarray:
    """Read a series from plain text (one value per line, '#' comments)
    or single-column CSV with an optional header."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        token = line.split(",")[0].strip()
        try:
            values.append(float(token))
        except ValueError:
            if lineno == 1:  # tolerate a single CSV header line
                continue
            raise NonFinite(f"{path}:{lineno}: cannot parse {token!r}")
    return as_series(values)


def write_series(x, path) -> None:
    """Write a series as plain text, one value per line, locale-independent."""
    arr = as_series(x)
    buf = io.StringIO()
    for v in arr:
        buf.write(f"{v:.17g}\n")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(buf.getvalue())


def write_csv_rows(path, header: list[str], rows) -> None:
    """Write tidy CSV rows with a header (helper for result emission)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
