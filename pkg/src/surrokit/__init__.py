"""surrokit: constrained-realization surrogate data methods and a
band-phase-randomized cutoff-sweep test for nonlinearity in stationary and
non-stationary time series."""

from . import errors
from .hypothesis import (
    CLASSIFICATIONS,
    STATISTICS,
    ErrorRates,
    SweepResult,
    TestVerdict,
    accept_onset,
    classify,
    estimate_power,
    rank_test,
    select_fc_min,
    sweep,
)
from .models import PRESET_NAMES, Ar2Params, NlParams, gen_ar2, gen_nl, preset
from .series import (
    LocalMoments,
    add_noise_snr,
    local_moments,
    normalize,
    read_series,
    spawn_seeds,
    trim_endpoint_mismatch,
    write_series,
)
from .spectral import Spectrum, forward, inverse, randomize_phases_band
from .stats import ami, autocorrelation, default_ami_bins, nrms_local_diff
from .surrogates import (
    METHODS,
    SurrogateSpec,
    aa_bpr,
    aaft,
    bpr,
    ensemble,
    generate,
    iaaft,
    rp,
    rs,
    sss,
)

__version__ = "0.1.0"

__all__ = [
    "CLASSIFICATIONS", "METHODS", "PRESET_NAMES", "STATISTICS",
    "Ar2Params", "ErrorRates", "LocalMoments", "NlParams", "Spectrum",
    "SurrogateSpec", "SweepResult", "TestVerdict", "aa_bpr", "aaft",
    "accept_onset", "add_noise_snr", "ami", "autocorrelation", "bpr",
    "classify", "default_ami_bins", "ensemble", "errors", "estimate_power",
    "forward", "gen_ar2",
    "gen_nl", "generate", "iaaft", "inverse", "local_moments", "normalize",
    "preset", "randomize_phases_band", "rank_test", "read_series", "rp", "rs",
    "select_fc_min", "spawn_seeds", "sss", "sweep", "trim_endpoint_mismatch",
    "write_series",
]
