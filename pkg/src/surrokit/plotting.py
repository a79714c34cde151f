"""Figure rendering for sweep results and local-moment diagnostics.

All functions write image files (format inferred from the path suffix) and
never open interactive windows.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .hypothesis import SweepResult, classify


def plot_sweep(result: SweepResult, path) -> None:
    """Three-panel figure: AC(1), the amplitude AMI discriminant and the
    rank-binned lag-1 AMI of the data against the surrogate ensemble
    5th/50th/95th percentile bands as a function of the
    phase-randomization cutoff."""
    fc = result.fc_grid
    fig, axes = plt.subplots(3, 1, figsize=(7, 8), sharex=True)
    panels = [
        ("AC(1)", "ac_data", "ac_p5", "ac_p50", "ac_p95"),
        (f"AMI({result.lag}) eq-width [nats]",
         "ami_data", "ami_p5", "ami_p50", "ami_p95"),
        ("AMI(1) rank [nats]", "amir_data", "amir_p5", "amir_p50", "amir_p95"),
    ]
    for ax, (label, d, p5, p50, p95) in zip(axes, panels):
        data = np.array([getattr(p, d) for p in result.points])
        lo = np.array([getattr(p, p5) for p in result.points])
        mid = np.array([getattr(p, p50) for p in result.points])
        hi = np.array([getattr(p, p95) for p in result.points])
        ax.fill_between(fc, lo, hi, alpha=0.3, label="surrogates 5th-95th pct")
        ax.plot(fc, mid, "C0--", lw=1, label="surrogate median")
        ax.plot(fc, data, "C3-", lw=1.5, label="data")
        rej = np.array([p.reject for p in result.points])
        ax.plot(fc[rej], data[rej], "C3v", ms=6, label="rejected")
        skipped = ~np.array([p.linearity_preserved for p in result.points])
        if skipped.any():
            ax.plot(fc[skipped], data[skipped], "kx", ms=7,
                    label="linearity not preserved")
        ax.set_ylabel(label)
        ax.legend(fontsize=8, loc="best")
    axes[-1].set_xlabel("cutoff bin $f_c$")
    fig.suptitle(f"Cutoff sweep (M={result.m}): {classify(result)}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_local_moment_curves(
    fc_values, mean_curve, variance_curve, path, threshold: float | None = None
) -> None:
    """Normalized-rms local mean/variance difference vs cutoff."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(fc_values, mean_curve, "-", label="local mean")
    ax.plot(fc_values, variance_curve, ":", label="local variance")
    if threshold is not None:
        ax.axhline(threshold, color="gray", lw=0.8, ls="--",
                   label=f"threshold {threshold}")
    ax.set_xlabel("cutoff bin $f_c$")
    ax.set_ylabel("normalized rms difference")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_series_pair(x, surrogate, path, labels=("data", "surrogate")) -> None:
    """Data and one surrogate stacked for visual comparison."""
    fig, axes = plt.subplots(2, 1, figsize=(7, 5), sharex=True, sharey=True)
    axes[0].plot(x, lw=0.6)
    axes[0].set_ylabel(labels[0])
    axes[1].plot(surrogate, lw=0.6, color="C1")
    axes[1].set_ylabel(labels[1])
    axes[1].set_xlabel("sample")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
