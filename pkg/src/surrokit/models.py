"""Benchmark process generators: a (possibly period-modulated) noisy AR(2)
oscillator and a deterministic nonlinear two-tap map, plus the four named
presets used throughout the test-bench:

=====  ========================================================
LS     linear stationary (AR(2), fixed period)
LNS    linear non-stationary (AR(2), sinusoidally modulated period)
NLS    nonlinear stationary (fixed map coefficient)
NLNS   nonlinear non-stationary (coefficient switches mid-series)
=====  ========================================================
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Divergence, SurrokitError
from .series import make_rng

TRANSIENT = 1000  # samples discarded before the kept series
_DIVERGENCE_LIMIT = 1e6


@dataclass(frozen=True)
class Ar2Params:
    """Damped-oscillator AR(2) with optional period modulation.

    The lag-1 coefficient is ``a1(n) = 2 cos(2 pi / T(n)) exp(-1/tau_decay)``
    with ``T(n) = t_e + m_t sin(2 pi n / t_mod)``; the lag-2 coefficient is
    ``a2 = -exp(-2/tau_decay)`` (the minus sign is required for a stable
    damped oscillator). Driving noise is standard Gaussian.
    """

    t_e: float = 10.0
    m_t: float = 0.0
    t_mod: float = 250.0
    tau_decay: float = 50.0
    n: int = 2048
    seed: int = 0

    def __post_init__(self):
        if self.t_e <= 0 or self.t_mod <= 0 or self.tau_decay <= 0:
            raise SurrokitError("t_e, t_mod and tau_decay must be > 0")
        if self.n < 4:
            raise SurrokitError("need n >= 4")


@dataclass(frozen=True)
class NlParams:
    """Two-tap nonlinear map ``x(n) = a1(n) f(x(n-1)) + a2 x(n-2)`` with
    ``f(u) = u (1 - u^2) exp(-u^2)``.

    ``a1`` switches from ``a1_first`` to ``a1_second`` at
    ``floor(switch_fraction * n)``; the map is iterated noise-free unless
    ``noise_std > 0``.
    """

    a1_first: float = 3.4
    a1_second: float = 3.4
    switch_fraction: float = 1.0
    a2: float = 0.8
    n: int = 2048
    seed: int = 0
    noise_std: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.switch_fraction <= 1.0:
            raise SurrokitError("switch_fraction must be in (0, 1]")
        if self.n < 4:
            raise SurrokitError("need n >= 4")


def gen_ar2(p: Ar2Params) -> np.ndarray:
    """Generate an AR(2) realization; the first TRANSIENT samples are
    discarded and the kept samples correspond to n = 1..N (so the period
    modulation phase is anchored to the start of the kept series)."""
    rng = make_rng(p.seed)
    total = p.n + TRANSIENT
    # n runs from -TRANSIENT+1 so the kept block sees n = 1..N.
    steps = np.arange(total) - TRANSIENT + 1
    period = p.t_e + p.m_t * np.sin(2.0 * np.pi * steps / p.t_mod)
    a1 = 2.0 * np.cos(2.0 * np.pi / period) * np.exp(-1.0 / p.tau_decay)
    a2 = -np.exp(-2.0 / p.tau_decay)
    eta = rng.standard_normal(total)
    x = np.empty(total)
    prev1 = prev2 = 0.0
    for i in range(total):
        val = a1[i] * prev1 + a2 * prev2 + eta[i]
        if abs(val) > _DIVERGENCE_LIMIT:
            raise Divergence(f"AR(2) diverged at step {i}")
        x[i] = val
        prev2, prev1 = prev1, val
    return x[TRANSIENT:]


def gen_nl(p: NlParams) -> np.ndarray:
    """Generate a realization of the nonlinear map, transient discarded.

    Initial conditions are 0.1 (zero is a fixed point of the map); during the
    transient the first-regime coefficient is used.
    """
    rng = make_rng(p.seed)
    total = p.n + TRANSIENT
    switch_at = TRANSIENT + int(np.floor(p.switch_fraction * p.n))
    eta = (
        rng.normal(0.0, p.noise_std, size=total)
        if p.noise_std > 0
        else np.zeros(total)
    )
    x = np.empty(total)
    prev1 = prev2 = 0.1
    for i in range(total):
        a1 = p.a1_first if i < switch_at else p.a1_second
        val = (
            a1 * prev1 * (1.0 - prev1 * prev1) * np.exp(-prev1 * prev1)
            + p.a2 * prev2
            + eta[i]
        )
        if abs(val) > _DIVERGENCE_LIMIT:
            raise Divergence(f"nonlinear map diverged at step {i}")
        x[i] = val
        prev2, prev1 = prev1, val
    return x[TRANSIENT:]


PRESET_NAMES = ("LS", "LNS", "NLS", "NLNS")


def preset(name: str, n: int = 2048, seed: int = 0) -> np.ndarray:
    """Generate one of the four named benchmark series."""
    if n < 256:
        raise SurrokitError("presets need n >= 256")
    key = name.upper()
    if key == "LS":
        return gen_ar2(Ar2Params(t_e=10, m_t=0, t_mod=250, tau_decay=50,
                                 n=n, seed=seed))
    if key == "LNS":
        return gen_ar2(Ar2Params(t_e=10, m_t=6, t_mod=250, tau_decay=50,
                                 n=n, seed=seed))
    if key == "NLS":
        return gen_nl(NlParams(a1_first=3.4, a1_second=3.4,
                               switch_fraction=1.0, a2=0.8, n=n, seed=seed))
    if key == "NLNS":
        return gen_nl(NlParams(a1_first=3.0, a1_second=3.4,
                               switch_fraction=0.5, a2=0.8, n=n, seed=seed))
    raise SurrokitError(f"unknown preset {name!r}; use one of {PRESET_NAMES}")
