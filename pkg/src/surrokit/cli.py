"""Command-line front-end.

Subcommands::

    gen        generate one of the benchmark series
    surrogate  generate a surrogate of an input series
    stats      AC(1)/AMI(1)-style statistics of a series
    test       one-sided rank test at a single surrogate recipe
    sweep      full cutoff sweep with CSV/JSON output and optional figures
    power      Monte Carlo size/power estimation on a benchmark generator

Every run writes its artifacts atomically (temp file + rename) together with
a ``<output>.meta.json`` record of the parameters, seed and version, so any
result can be reproduced exactly. Seeds default to 0 with a notice on stderr;
pass ``--seed`` explicitly for anything that matters.

Exit status: 0 success, 1 invalid parameters/input, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .errors import SurrokitError
from .hypothesis import (
    estimate_power,
    rank_test,
    select_fc_min,
    sweep as run_sweep,
)
from .models import PRESET_NAMES, preset
from .series import (
    add_noise_snr,
    local_moments,
    normalize,
    read_series,
    trim_endpoint_mismatch,
)
from .stats import ami, autocorrelation, default_ami_bins
from .surrogates import METHODS, SurrogateSpec, generate


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad arguments; map that to the validation status
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SurrokitError(message)


def _out_path(path: str) -> str:
    outdir = os.environ.get("SURROKIT_OUTDIR")
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def _atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".surrokit-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_metadata(path: str, args: argparse.Namespace) -> None:
    record = {
        "tool": "surrokit",
        "version": __version__,
        "command": args.command,
        "parameters": {
            k: v for k, v in vars(args).items() if k != "command"
        },
    }
    _atomic_write_text(path + ".meta.json", json.dumps(record, indent=2) + "\n")


def _series_text(x: np.ndarray) -> str:
    return "".join(f"{v:.17g}\n" for v in x)


def _resolve_seed(args) -> int:
    if args.seed is None:
        print("surrokit: no --seed given, defaulting to 0", file=sys.stderr)
        return 0
    return args.seed


def _load_input(args) -> np.ndarray:
    try:
        x = read_series(args.input)
    except FileNotFoundError as exc:
        raise SurrokitError(f"cannot read input: {exc}") from exc
    if getattr(args, "preprocess", False):
        x = trim_endpoint_mismatch(normalize(x))
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="surrokit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_input=True):
        if with_input:
            p.add_argument("-i", "--input", required=True,
                           help="input series (text or single-column CSV)")
        p.add_argument("-o", "--output", required=True, help="output path")
        p.add_argument("--seed", type=int, default=None,
                       help="master seed (defaults to 0 with a notice)")

    p = sub.add_parser("gen", help="generate a benchmark series")
    p.add_argument("--preset", required=True, choices=PRESET_NAMES)
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--snr-db", type=float, default=None,
                   help="optionally add white noise at this SNR")
    add_common(p, with_input=False)

    p = sub.add_parser("surrogate", help="generate one surrogate")
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--fc", type=int, default=0, help="cutoff bin (bpr/aa_bpr)")
    p.add_argument("--sss-amplitude", type=float, default=1.0)
    p.add_argument("--max-iterations", type=int, default=1000)
    add_common(p)

    p = sub.add_parser("stats", help="statistics of a series")
    p.add_argument("--lag", type=int, default=1)
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--window", type=int, default=64)
    p.add_argument("--overlap", type=float, default=0.5)
    add_common(p)
    p.set_defaults(seed=0)

    p = sub.add_parser("test", help="one-sided rank test")
    p.add_argument("--method", default="aa_bpr", choices=METHODS)
    p.add_argument("--fc", type=int, default=0)
    p.add_argument("--m", type=int, default=99)
    p.add_argument("--statistic", default="ami", choices=("ac", "ami"))
    p.add_argument("--lag", type=int, default=None,
                   help="statistic lag (default: 1 for ac, 2 for ami)")
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--max-iterations", type=int, default=1000)
    p.add_argument("--no-preprocess", dest="preprocess", action="store_false",
                   help="skip normalization and end-point trimming")
    p.set_defaults(preprocess=True)
    add_common(p)

    p = sub.add_parser("sweep", help="cutoff sweep (CSV + optional JSON/figure)")
    p.add_argument("--fc-min", type=int, default=None,
                   help="lowest cutoff (default: automatic selection)")
    p.add_argument("--fc-max", type=int, default=None,
                   help="highest cutoff (default: N/2 - 10)")
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--m", type=int, default=99)
    p.add_argument("--statistic", default="ami", choices=("ac", "ami"))
    p.add_argument("--lag", type=int, default=None,
                   help="AMI lag (default: 2); AC is always evaluated at lag 1")
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--method", default="bpr", choices=("bpr", "aa_bpr"))
    p.add_argument("--max-iterations", type=int, default=1000)
    p.add_argument("--json", default=None, help="also write a JSON document")
    p.add_argument("--plot", default=None, help="also render a figure (png/pdf)")
    p.add_argument("--no-preprocess", dest="preprocess", action="store_false")
    p.set_defaults(preprocess=True)
    add_common(p)

    p = sub.add_parser("power", help="Monte Carlo size/power estimation")
    p.add_argument("--preset", required=True, choices=PRESET_NAMES)
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--null-true", action="store_true",
                   help="the generator satisfies the null by construction")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--m", type=int, default=99)
    p.add_argument("--statistic", default="ami", choices=("ac", "ami"))
    p.add_argument("--method", default="iaaft", choices=METHODS)
    p.add_argument("--fc", type=int, default=0)
    add_common(p, with_input=False)
    return parser


def _cmd_gen(args) -> None:
    seed = _resolve_seed(args)
    x = preset(args.preset, args.n, seed)
    if args.snr_db is not None:
        x = add_noise_snr(x, args.snr_db, np.random.SeedSequence([seed, 1]))
    out = _out_path(args.output)
    _atomic_write_text(out, _series_text(x))
    _write_metadata(out, args)


def _cmd_surrogate(args) -> None:
    seed = _resolve_seed(args)
    x = _load_input(args)
    spec = SurrogateSpec(method=args.method, f_c=args.fc,
                         sss_amplitude=args.sss_amplitude,
                         max_iterations=args.max_iterations, seed=seed)
    s = generate(x, spec)
    out = _out_path(args.output)
    _atomic_write_text(out, _series_text(s))
    _write_metadata(out, args)


def _cmd_stats(args) -> None:
    x = _load_input(args)
    lm = local_moments(x, args.window, args.overlap)
    doc = {
        "n": int(x.size),
        "mean": float(x.mean()),
        "variance": float(x.var(ddof=1)),
        "lag": args.lag,
        "ac": autocorrelation(x, args.lag),
        "ami": ami(x, args.lag, args.bins),
        "ami_bins": args.bins or default_ami_bins(x.size),
        "local_moments": {
            "window": args.window,
            "overlap": args.overlap,
            "n_windows": lm.n_windows,
            "mean_of_means": float(lm.means.mean()),
            "std_of_means": float(lm.means.std(ddof=1)) if lm.n_windows > 1 else 0.0,
            "mean_of_variances": float(lm.variances.mean()),
        },
    }
    out = _out_path(args.output)
    _atomic_write_text(out, json.dumps(doc, indent=2) + "\n")
    _write_metadata(out, args)


def _cmd_test(args) -> None:
    seed = _resolve_seed(args)
    x = _load_input(args)
    spec = SurrogateSpec(method=args.method, f_c=args.fc,
                         max_iterations=args.max_iterations, seed=seed)
    v = rank_test(x, spec, m=args.m, statistic=args.statistic,
                  lag=args.lag, bins=args.bins)
    doc = {
        "statistic": v.statistic,
        "lag": v.lag,
        "method": args.method,
        "fc": args.fc,
        "m": args.m,
        "data_value": v.data_value,
        "surrogate_values": [float(s) for s in v.surrogate_values],
        "rank_of_data": v.rank_of_data,
        "alpha": v.alpha,
        "reject": v.reject,
        "linearity_preserved": v.linearity_preserved,
    }
    out = _out_path(args.output)
    _atomic_write_text(out, json.dumps(doc, indent=2) + "\n")
    _write_metadata(out, args)


def _cmd_sweep(args) -> None:
    seed = _resolve_seed(args)
    x = _load_input(args)
    half = x.size // 2
    fc_max = args.fc_max if args.fc_max is not None else half - 10
    if args.fc_min is not None:
        fc_min = args.fc_min
    else:
        fc_min = select_fc_min(x, seed=seed)
        print(f"surrokit: selected fc_min = {fc_min}", file=sys.stderr)
    result = run_sweep(
        x, fc_min, fc_max, grid_size=args.grid, m=args.m,
        statistic=args.statistic, seed=seed, lag=args.lag, bins=args.bins,
        method=args.method, max_iterations=args.max_iterations,
    )
    out = _out_path(args.output)
    rows = "\n".join(
        ",".join(str(v) for v in row) for row in result.csv_rows()
    )
    _atomic_write_text(out, ",".join(result.CSV_HEADER) + "\n" + rows + "\n")
    if args.json:
        _atomic_write_text(_out_path(args.json),
                           json.dumps(result.to_dict(), indent=2) + "\n")
    if args.plot:
        from .plotting import plot_sweep

        plot_sweep(result, _out_path(args.plot))
    _write_metadata(out, args)


def _cmd_power(args) -> None:
    seed = _resolve_seed(args)
    name, n = args.preset, args.n

    def gen(child_seed):
        return preset(name, n, child_seed)

    rates = estimate_power(
        gen, trials=args.trials, seed=seed, null_is_true=args.null_true,
        m=args.m, statistic=args.statistic, method=args.method, f_c=args.fc,
    )
    doc = {
        "preset": name,
        "null_is_true": args.null_true,
        "trials": rates.trials,
        "alpha_hat": rates.alpha_hat,
        "beta_hat": rates.beta_hat,
    }
    out = _out_path(args.output)
    _atomic_write_text(out, json.dumps(doc, indent=2) + "\n")
    _write_metadata(out, args)


_COMMANDS = {
    "gen": _cmd_gen,
    "surrogate": _cmd_surrogate,
    "stats": _cmd_stats,
    "test": _cmd_test,
    "sweep": _cmd_sweep,
    "power": _cmd_power,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SurrokitError as exc:
        print(f"surrokit: error: {exc}", file=sys.stderr)
        return 1
    try:
        _COMMANDS[args.command](args)
    except SurrokitError as exc:
        print(f"surrokit: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - runtime failures exit 2
        print(f"surrokit: runtime error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
