"""Discriminating statistics: lagged autocorrelation, average mutual
information, and the normalized rms difference of windowed local moments.
"""

from __future__ import annotations

import numpy as np

from .errors import BadBins, BadLag, BadWindow, ConstantSeries, LengthMismatch
from .series import as_series, local_moments


def autocorrelation(x, lag: int) -> float:
    """Biased lag-``lag`` autocorrelation estimate.

    ``r(lag) = sum((x_t - m)(x_{t+lag} - m)) / sum((x_t - m)^2)`` with the
    full-series mean ``m``; ``r(0) == 1``.
    """
    arr = as_series(x)
    if not 0 <= lag < arr.size:
        raise BadLag(f"lag={lag} outside [0, {arr.size - 1}]")
    centered = arr - arr.mean()
    denom = np.dot(centered, centered)
    if denom == 0.0:
        raise ConstantSeries("autocorrelation undefined for a constant series")
    if lag == 0:
        return 1.0
    return float(np.dot(centered[:-lag], centered[lag:]) / denom)


def default_ami_bins(n: int) -> int:
    """Default marginal bin count, ``max(4, floor(N ** (1/3)))``."""
    # the small epsilon keeps perfect cubes from rounding down (1000 -> 10)
    return max(4, int(np.floor(n ** (1.0 / 3.0) + 1e-9)))


def _equiprobable_bins(values: np.ndarray, bins: int) -> np.ndarray:
    """Map values to ``bins`` near-equal-occupancy bins via stable ranks."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty_like(order)
    ranks[order] = np.arange(order.size)
    return (ranks * bins) // order.size


def _equal_width_bins(values: np.ndarray, bins: int) -> np.ndarray:
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.zeros(values.size, dtype=int)
    idx = ((values - lo) / (hi - lo) * bins).astype(int)
    return np.clip(idx, 0, bins - 1)


def ami(x, lag: int, bins: int | None = None,
        binning: str = "equiprobable") -> float:
    """Average mutual information (nats) between ``x_t`` and ``x_{t+lag}``.

    With the default ``equiprobable`` binning the joint histogram uses
    rank-based marginal bins (ties broken by original index), which makes the
    estimate a pure rank statistic: strictly monotone transforms of the data
    leave it unchanged. ``equal_width`` binning partitions the value range
    into uniform cells instead; it is sensitive to the amplitude distribution
    (so pair it with amplitude-adjusted surrogates) but markedly more
    responsive to time-varying second moments, which is why the hypothesis
    test uses it as its discriminant. Empty joint cells contribute zero.
    """
    arr = as_series(x)
    if not 1 <= lag < arr.size:
        raise BadLag(f"lag={lag} outside [1, {arr.size - 1}]")
    if bins is None:
        bins = default_ami_bins(arr.size)
    if bins < 2:
        raise BadBins("need at least 2 bins")
    if binning not in ("equiprobable", "equal_width"):
        raise BadBins(f"unknown binning {binning!r}")
    a = arr[: arr.size - lag]
    b = arr[lag:]
    if binning == "equiprobable":
        ba = _equiprobable_bins(a, bins)
        bb = _equiprobable_bins(b, bins)
    else:
        ba = _equal_width_bins(a, bins)
        bb = _equal_width_bins(b, bins)
    joint = np.zeros((bins, bins))
    np.add.at(joint, (ba, bb), 1.0)
    p = joint / a.size
    pi = p.sum(axis=1, keepdims=True)
    qj = p.sum(axis=0, keepdims=True)
    mask = p > 0
    return float(np.sum(p[mask] * np.log(p[mask] / (pi @ qj)[mask])))


def nrms_local_diff(
    x, s, window_length: int = 64, overlap_fraction: float = 0.5,
    moment: str = "mean",
) -> float:
    """Normalized rms difference of windowed local moments.

    rms over windows of ``moment(x) - moment(s)``, divided by the rms
    deviation of the data's local moment from its global value. 0 means the
    surrogate tracks the data's local behavior exactly; values near 1 mean
    it does no better than assuming stationarity.
    """
    arr_x = as_series(x)
    arr_s = as_series(s)
    if arr_x.size != arr_s.size:
        raise LengthMismatch(f"lengths differ: {arr_x.size} vs {arr_s.size}")
    if moment not in ("mean", "variance"):
        raise BadWindow(f"moment must be 'mean' or 'variance', got {moment!r}")
    lm_x = local_moments(arr_x, window_length, overlap_fraction)
    lm_s = local_moments(arr_s, window_length, overlap_fraction)
    if moment == "mean":
        mx, ms = lm_x.means, lm_s.means
        global_moment = arr_x.mean()
    else:
        mx, ms = lm_x.variances, lm_s.variances
        global_moment = arr_x.var(ddof=1)
    denom = np.sqrt(np.mean((mx - global_moment) ** 2))
    if denom == 0.0:
        raise ConstantSeries("data has no local-moment variation to compare")
    return float(np.sqrt(np.mean((mx - ms) ** 2)) / denom)
