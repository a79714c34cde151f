"""Rank-based one-sided surrogate test, cutoff-range selection, the full
cutoff sweep, and empirical size/power estimation.

The core decision rule: generate M surrogates, reject the null when the
data's statistic strictly exceeds every surrogate's, a one-sided test with
exact significance 1/(M+1) under exchangeability (M=99 -> 0.01).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import NoPeak, SurrokitError, TooShort
from .series import as_series, spawn_seeds, write_csv_rows
from .spectral import forward
from .stats import ami, autocorrelation, nrms_local_diff
from .surrogates import SurrogateSpec, bpr, ensemble

STATISTICS = ("ac", "ami")


DISCRIMINANT_AMI_BINS = (12, 16)  # equal-width partitions pooled by the test
DISCRIMINANT_LAG = 2  # default AMI lag for the hypothesis test
TEMPORAL_AMI_BINS = 16  # rank-binned lag-1 AMI, the second sweep component
AC_BAND_TOLERANCE = 0.01  # absolute slack on the AC(1) preservation band
MIN_RANDOMIZED_FRACTION = 1.0 / 32.0  # of the half band, else vacuous


def _stat_value(statistic: str, x, lag: int, bins: int | None,
                binning: str = "equal_width") -> float:
    """Scalar discriminant. The default AMI discriminant sums the mutual
    information over the partitions in :data:`DISCRIMINANT_AMI_BINS`, which
    removes the dependence on any single arbitrary bin count; an explicit
    ``bins`` selects a single partition."""
    if statistic == "ac":
        return autocorrelation(x, lag)
    if statistic == "ami":
        if bins is None:
            return sum(
                ami(x, lag, b, binning=binning)
                for b in DISCRIMINANT_AMI_BINS
            )
        return ami(x, lag, bins, binning=binning)
    raise SurrokitError(f"unknown statistic {statistic!r}; use {STATISTICS}")


@dataclass(frozen=True)
class TestVerdict:
    """Outcome of one one-sided rank test."""

    statistic: str
    lag: int
    data_value: float
    surrogate_values: np.ndarray
    rank_of_data: int  # 1..M+1 among {data} u surrogates
    alpha: float
    reject: bool
    linearity_preserved: bool  # data AC(1) inside ensemble 5th-95th band


def _verdict_from_values(
    statistic, lag, data_value, surr_values, linearity_preserved
) -> TestVerdict:
    m = surr_values.size
    rank = 1 + int(np.sum(surr_values < data_value))
    reject = bool(np.all(data_value > surr_values))
    return TestVerdict(
        statistic=statistic,
        lag=lag,
        data_value=float(data_value),
        surrogate_values=surr_values,
        rank_of_data=rank,
        alpha=1.0 / (m + 1),
        reject=reject,
        linearity_preserved=linearity_preserved,
    )


def _linearity_preserved(
    x, surr: np.ndarray, lag: int = 1, tol: float = AC_BAND_TOLERANCE
) -> tuple[bool, np.ndarray]:
    """Data AC(1) inside the ensemble 5th-95th band, widened by ``tol``.

    The absolute tolerance keeps the check aimed at gross violations (the
    surrogates no longer carrying the data's linear correlations at all)
    rather than tripping on the sub-1e-3 bias the amplitude-adjustment step
    leaves in very tight ensembles.
    """
    ac_data = autocorrelation(x, lag)
    ac_surr = np.array([autocorrelation(s, lag) for s in surr])
    p5, p95 = np.percentile(ac_surr, [5.0, 95.0])
    return bool(p5 - tol <= ac_data <= p95 + tol), ac_surr


def _default_lag(statistic: str, lag: int | None) -> int:
    if lag is not None:
        return lag
    return DISCRIMINANT_LAG if statistic == "ami" else 1


def rank_test(
    x,
    spec: SurrogateSpec,
    m: int = 99,
    statistic: str = "ami",
    lag: int | None = None,
    bins: int | None = None,
    binning: str = "equal_width",
) -> TestVerdict:
    """One-sided rank test of the data against an M-member ensemble.

    Rejects iff the data statistic strictly exceeds all M surrogate values
    (alpha = 1/(M+1)). The verdict also records whether the data's AC(1)
    sits inside the ensemble's (tolerance-widened) 5th-95th percentile band,
    i.e. whether the surrogates preserve the data's linear correlations.
    ``lag`` defaults to 1 for ``ac`` and to :data:`DISCRIMINANT_LAG` for
    ``ami`` (lag-1 AMI has little power against slowly modulated processes;
    see :func:`sweep`).
    """
    arr = as_series(x)
    lag = _default_lag(statistic, lag)
    if m < 19:
        raise SurrokitError("need at least 19 surrogates (alpha <= 0.05)")
    surr = ensemble(arr, spec, m)
    data_value = _stat_value(statistic, arr, lag, bins, binning)
    surr_values = np.array(
        [_stat_value(statistic, s, lag, bins, binning) for s in surr]
    )
    preserved, _ = _linearity_preserved(arr, surr)
    return _verdict_from_values(statistic, lag, data_value, surr_values, preserved)


# ---------------------------------------------------------------------------
# cutoff-range selection


def select_fc_min(
    x,
    method: str = "auto",
    seed: int = 0,
    peak_decay_fraction: float = 0.05,
    smooth_width: int = 5,
    peak_prominence: float = 20.0,
    nrms_threshold: float = 0.09,
    n_probe_surrogates: int = 9,
    grid: np.ndarray | None = None,
) -> int:
    """Choose the lowest usable phase-randomization cutoff.

    ``spectral_peak``: smooth the magnitude spectrum (moving average of width
    ``smooth_width``), locate its global maximum, and return the first bin
    above it where the smoothed magnitude has decayed below
    ``peak_decay_fraction`` of the peak. Raises :class:`NoPeak` when the
    spectrum has no pronounced peak (peak below ``peak_prominence`` times the
    median magnitude).

    ``local_mean``: walk a coarse cutoff grid upward and return the smallest
    cutoff for which the median normalized-rms local-mean difference over
    ``n_probe_surrogates`` band-phase-randomized surrogates drops below
    ``nrms_threshold``.

    ``auto`` tries the spectral method and falls back to the local-mean one.
    """
    arr = as_series(x)
    n = arr.size
    if n < 128:
        raise TooShort("cutoff selection needs at least 128 samples")
    if method == "auto":
        try:
            return select_fc_min(
                arr, "spectral_peak", seed, peak_decay_fraction, smooth_width,
                peak_prominence, nrms_threshold, n_probe_surrogates, grid,
            )
        except NoPeak:
            return select_fc_min(
                arr, "local_mean", seed, peak_decay_fraction, smooth_width,
                peak_prominence, nrms_threshold, n_probe_surrogates, grid,
            )
    if method == "spectral_peak":
        mags = forward(arr).magnitudes.copy()
        mags[0] = 0.0  # ignore DC
        kernel = np.ones(smooth_width) / smooth_width
        smooth = np.convolve(mags, kernel, mode="same")
        peak_bin = int(np.argmax(smooth))
        peak_val = smooth[peak_bin]
        if peak_val < peak_prominence * np.median(smooth[1:]):
            raise NoPeak("no pronounced spectral peak")
        if peak_bin < 2 * smooth_width:
            # a near-DC maximum is trend leakage, not an oscillatory peak
            raise NoPeak("spectral maximum sits at near-zero frequency")
        below = np.nonzero(smooth[peak_bin:] < peak_decay_fraction * peak_val)[0]
        if below.size == 0:
            raise NoPeak("magnitude never decays below threshold above peak")
        return peak_bin + int(below[0])
    if method == "local_mean":
        if grid is None:
            # ~2.5% of N granularity up to half band
            grid = np.unique(
                np.round(np.linspace(n / 40, n // 2, 20)).astype(int)
            )
        seeds = spawn_seeds(seed, len(grid) * n_probe_surrogates)
        for gi, f_c in enumerate(grid):
            vals = [
                nrms_local_diff(
                    arr,
                    bpr(arr, int(f_c), seeds[gi * n_probe_surrogates + k]),
                    moment="mean",
                )
                for k in range(n_probe_surrogates)
            ]
            if np.median(vals) < nrms_threshold:
                return int(f_c)
        return int(grid[-1])
    raise SurrokitError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# cutoff sweep


@dataclass(frozen=True)
class SweepPoint:
    """Per-cutoff record: all statistics with ensemble percentile bands.

    ``ami_*`` is the amplitude-sensitive component (equal-width binning,
    lag :data:`DISCRIMINANT_LAG`), ``amir_*`` the temporal component
    (rank binning, lag 1). The point is ``degenerate`` when the ensemble
    cannot carry evidence: it contains an exact copy of the data, or the
    cutoff sits so close to the identity limit that almost no phases are
    randomized.
    """

    f_c: int
    linearity_preserved: bool
    degenerate: bool
    ac_data: float
    ac_p5: float
    ac_p50: float
    ac_p95: float
    ac_reject: bool
    ami_data: float
    ami_p5: float
    ami_p50: float
    ami_p95: float
    ami_reject: bool
    amir_data: float
    amir_p5: float
    amir_p50: float
    amir_p95: float
    amir_reject: bool
    reject: bool  # verdict of the driving statistic


@dataclass(frozen=True)
class SweepResult:
    """Result of sweeping the cutoff over a grid of values."""

    fc_min: int
    fc_max: int
    statistic: str
    m: int
    lag: int
    points: list[SweepPoint]

    @property
    def fc_grid(self) -> np.ndarray:
        return np.array([p.f_c for p in self.points])

    def valid_points(self) -> list[SweepPoint]:
        """Points that can inform the test: surrogates preserve the data's
        linear correlations and none of them is the data itself (an ensemble
        containing exact copies of the data can never reject)."""
        return [
            p for p in self.points
            if p.linearity_preserved and not p.degenerate
        ]

    CSV_HEADER = [
        "fc", "stat", "data_value", "p5", "p50", "p95",
        "reject", "linearity_preserved",
    ]

    def csv_rows(self) -> list[list]:
        rows = []
        for p in self.points:
            rows.append([p.f_c, "ac", p.ac_data, p.ac_p5, p.ac_p50, p.ac_p95,
                         int(p.ac_reject), int(p.linearity_preserved)])
            rows.append([p.f_c, "ami", p.ami_data, p.ami_p5, p.ami_p50,
                         p.ami_p95, int(p.ami_reject),
                         int(p.linearity_preserved)])
            rows.append([p.f_c, "ami_rank", p.amir_data, p.amir_p5,
                         p.amir_p50, p.amir_p95, int(p.amir_reject),
                         int(p.linearity_preserved)])
        return rows

    def to_csv(self, path) -> None:
        write_csv_rows(path, self.CSV_HEADER, self.csv_rows())

    def to_dict(self) -> dict:
        return {
            "fc_min": self.fc_min,
            "fc_max": self.fc_max,
            "statistic": self.statistic,
            "m": self.m,
            "lag": self.lag,
            "classification": classify(self),
            "points": [
                {
                    "fc": p.f_c,
                    "linearity_preserved": p.linearity_preserved,
                    "degenerate": p.degenerate,
                    "reject": p.reject,
                    "ac": {"data": p.ac_data, "p5": p.ac_p5,
                           "p50": p.ac_p50, "p95": p.ac_p95,
                           "reject": p.ac_reject},
                    "ami": {"data": p.ami_data, "p5": p.ami_p5,
                            "p50": p.ami_p50, "p95": p.ami_p95,
                            "reject": p.ami_reject},
                    "ami_rank": {"data": p.amir_data, "p5": p.amir_p5,
                                 "p50": p.amir_p50, "p95": p.amir_p95,
                                 "reject": p.amir_reject},
                }
                for p in self.points
            ],
        }

    def to_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)


def sweep(
    x,
    fc_min: int,
    fc_max: int,
    grid_size: int = 10,
    m: int = 99,
    statistic: str = "ami",
    seed: int = 0,
    lag: int | None = None,
    bins: int | None = None,
    binning: str = "equal_width",
    method: str = "bpr",
    max_iterations: int = 1000,
) -> SweepResult:
    """Run the rank test on an evenly spaced grid of cutoff values.

    At every grid point an ensemble of ``m`` surrogates (default plain
    band-phase-randomized) is generated once and three statistics are
    evaluated for data and ensemble: AC(1), the amplitude-sensitive AMI
    discriminant (equal-width binning pooled over
    :data:`DISCRIMINANT_AMI_BINS`, lag :data:`DISCRIMINANT_LAG`), and the
    temporal AMI component (rank binning, :data:`TEMPORAL_AMI_BINS` cells,
    lag 1). With ``statistic="ami"`` the point rejects when *either* AMI
    component is extreme, so the per-point significance is bounded by
    2/(m+1): the amplitude component carries the power against slow
    modulation (whose signature is an amplitude-profile mismatch), the
    temporal one against genuinely nonlinear dynamics, and neither alone
    covers both. AC is always taken at lag 1 (the linear-correlation
    fingerprint); the AMI discriminant lag defaults to
    :data:`DISCRIMINANT_LAG` because at lag 1 the equal-width mutual
    information of a slowly frequency-modulated process is statistically
    indistinguishable from its stationary surrogates, whereas at lag 2 the
    modulation separates cleanly. Plain (non-amplitude-adjusted) surrogates
    are the default because their amplitude distribution only converges to
    the data's as the preserved band grows, which is exactly the mismatch
    the sweep is designed to localize; amplitude adjustment (``aa_bpr``)
    erases that signal and is intended for testing single cutoffs on data
    whose amplitude distribution must be respected. Points where the
    surrogates fail to preserve the data's linear correlations are flagged
    and excluded from classification, as are degenerate points (ensemble
    contains the data itself, or the cutoff leaves less than
    :data:`MIN_RANDOMIZED_FRACTION` of the half band randomized). Seeds
    derive hierarchically from ``seed`` by grid index, so results are
    independent of evaluation order.
    """
    arr = as_series(x)
    half = arr.size // 2
    if not (0 <= fc_min < fc_max <= half):
        raise SurrokitError(f"need 0 <= fc_min < fc_max <= {half}")
    if grid_size < 2:
        raise SurrokitError("grid_size must be >= 2")
    if statistic not in STATISTICS:
        raise SurrokitError(f"unknown statistic {statistic!r}")
    ami_lag = _default_lag("ami", lag)
    grid = np.unique(np.round(np.linspace(fc_min, fc_max, grid_size)).astype(int))
    grid_seeds = spawn_seeds(seed, len(grid))
    points = []
    for f_c, child in zip(grid, grid_seeds):
        spec = SurrogateSpec(method=method, f_c=int(f_c),
                             max_iterations=max_iterations, seed=child)
        surr = ensemble(arr, spec, m)
        preserved, ac_surr = _linearity_preserved(arr, surr)
        degenerate = bool(
            half - f_c < MIN_RANDOMIZED_FRACTION * half
            or any(np.array_equal(s, arr) for s in surr)
        )
        ac_data = autocorrelation(arr, 1)
        ami_data = _stat_value("ami", arr, ami_lag, bins, binning)
        ami_surr = np.array(
            [_stat_value("ami", s, ami_lag, bins, binning) for s in surr]
        )
        amir_data = ami(arr, 1, TEMPORAL_AMI_BINS)
        amir_surr = np.array([ami(s, 1, TEMPORAL_AMI_BINS) for s in surr])
        ac_v = _verdict_from_values("ac", 1, ac_data, ac_surr, preserved)
        ami_v = _verdict_from_values("ami", ami_lag, ami_data, ami_surr,
                                     preserved)
        amir_v = _verdict_from_values("ami", 1, amir_data, amir_surr,
                                      preserved)
        ac_q = np.percentile(ac_surr, [5.0, 50.0, 95.0])
        ami_q = np.percentile(ami_surr, [5.0, 50.0, 95.0])
        amir_q = np.percentile(amir_surr, [5.0, 50.0, 95.0])
        if statistic == "ami":
            point_reject = ami_v.reject or amir_v.reject
        else:
            point_reject = ac_v.reject
        points.append(SweepPoint(
            f_c=int(f_c),
            linearity_preserved=preserved,
            degenerate=degenerate,
            ac_data=ac_data, ac_p5=ac_q[0], ac_p50=ac_q[1], ac_p95=ac_q[2],
            ac_reject=ac_v.reject,
            ami_data=ami_data, ami_p5=ami_q[0], ami_p50=ami_q[1],
            ami_p95=ami_q[2], ami_reject=ami_v.reject,
            amir_data=amir_data, amir_p5=amir_q[0], amir_p50=amir_q[1],
            amir_p95=amir_q[2], amir_reject=amir_v.reject,
            reject=point_reject,
        ))
    return SweepResult(fc_min=fc_min, fc_max=fc_max, statistic=statistic,
                       m=m, lag=ami_lag, points=points)


CLASSIFICATIONS = (
    "LinearStationary", "LinearNonStationary", "Nonlinear", "Inconclusive"
)


def classify(result: SweepResult) -> str:
    """Map the verdict pattern over the cutoff grid to a series class.

    Only linearity-preserving grid points count. All accepted ->
    LinearStationary; all rejected -> Nonlinear; a rejected prefix followed
    by an accepted suffix (as the cutoff grows) -> LinearNonStationary; any
    other mixed pattern -> Inconclusive.
    """
    verdicts = [p.reject for p in result.valid_points()]
    if len(verdicts) < 2:
        return "Inconclusive"
    if not any(verdicts):
        return "LinearStationary"
    if all(verdicts):
        return "Nonlinear"
    first_accept = verdicts.index(False)
    if not any(verdicts[first_accept:]):
        return "LinearNonStationary"
    return "Inconclusive"


def accept_onset(result: SweepResult) -> int | None:
    """First linearity-preserving cutoff at which the null is accepted."""
    for p in result.valid_points():
        if not p.reject:
            return p.f_c
    return None


# ---------------------------------------------------------------------------
# empirical size / power


@dataclass(frozen=True)
class ErrorRates:
    """Empirical type-I (size) and type-II rates over repeated trials.

    Only the rate matching the ground truth of the generator is populated;
    the other is ``None``.
    """

    alpha_hat: float | None
    beta_hat: float | None
    trials: int


def estimate_power(
    generator,
    trials: int,
    seed: int = 0,
    null_is_true: bool = True,
    m: int = 99,
    statistic: str = "ami",
    lag: int | None = None,
    bins: int | None = None,
    binning: str = "equal_width",
    method: str = "iaaft",
    f_c: int = 0,
    max_iterations: int = 1000,
    normalize_input: bool = True,
) -> ErrorRates:
    """Monte Carlo size/power estimation for the rank test.

    ``generator`` maps a seed to a fresh series realization (e.g. a preset).
    When the null is true by construction, the rejection rate estimates the
    empirical significance level alpha; when it is false, the non-rejection
    rate estimates beta (power = 1 - beta).
    """
    if trials < 20:
        raise SurrokitError("need at least 20 trials")
    from .series import normalize as _normalize

    trial_seeds = spawn_seeds(seed, trials)
    rejections = 0
    for child in trial_seeds:
        gen_seed, test_seed = child.spawn(2)
        x = np.asarray(generator(gen_seed))
        if normalize_input:
            x = _normalize(x)
        spec = SurrogateSpec(method=method, f_c=f_c,
                             max_iterations=max_iterations, seed=test_seed)
        verdict = rank_test(x, spec, m=m, statistic=statistic, lag=lag,
                            bins=bins, binning=binning)
        rejections += int(verdict.reject)
    rate = rejections / trials
    if null_is_true:
        return ErrorRates(alpha_hat=rate, beta_hat=None, trials=trials)
    return ErrorRates(alpha_hat=None, beta_hat=1.0 - rate, trials=trials)
