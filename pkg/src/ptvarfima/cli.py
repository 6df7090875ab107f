"""Command-line interface.

Exit codes: 0 success, 1 validation or usage error, 2 failed numerical check,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__, defaults
from .acvf import METHODS, acvf_table, decay_law
from .estimate import (
    InsufficientDataError,
    ZeroVarianceError,
    read_series_csv,
    sample_periodic_acf,
    sample_periodic_acvf,
)
from .figures import write_figures
from .model import ModelError, PtvArfimaModel, load_model
from .simulate import simulate_ensemble, write_path_csv
from .verify import run_checks

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _model(args, default: PtvArfimaModel | None = None) -> PtvArfimaModel:
    if args.model is None:
        if default is None:
            raise UsageError("--model is required")
        return default
    return load_model(args.model)


def _out_file(args, name: str):
    if args.out is None:
        return None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out / name


def cmd_validate(args) -> int:
    model = _model(args)
    print(f"valid model: period {model.period}")
    print("season  d         sigma2    alpha by residue k=0..p-1")
    for i in model.seasons():
        alphas = " ".join(f"{decay_law(model, i, k).alpha:.6g}" for k in range(model.period))
        print(f"{i:<7} {model.d_of(i):<9.6g} {model.sigma2_of(i):<9.6g} {alphas}")
    return EXIT_OK


def cmd_acvf(args) -> int:
    model = _model(args)
    if args.method == "asymptotic" and args.min_lag < 1:
        raise UsageError("method 'asymptotic' is only defined for h >= 1 (use --min-lag 1)")
    table = acvf_table(model, args.max_lag, args.method, args.n_terms, args.acf, args.min_lag)
    dest = _out_file(args, "acvf.csv")
    if dest is None:
        table.write_csv(sys.stdout)
    else:
        with open(dest, "w", newline="") as fh:
            table.write_csv(fh)
    return EXIT_OK


def cmd_figures(args) -> int:
    out = Path(args.out or "figures")
    written, report = write_figures(out, args.max_lag)
    for path in written:
        print(f"wrote {path}")
    for name, ok, note in report.lines():
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({note})" if note else ""))
    return EXIT_OK if report.all_passed else EXIT_CHECK


def cmd_simulate(args) -> int:
    model = _model(args)
    burn_in = args.truncation if args.burn_in is None else args.burn_in
    ens = simulate_ensemble(model, args.n, args.truncation, burn_in, args.replicates, args.seed)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for r, path in enumerate(ens.replicates):
        name = "path.csv" if len(ens) == 1 else f"path_{r:04d}.csv"
        with open(out / name, "w", newline="") as fh:
            write_path_csv(path, fh, include_eps=args.eps)
        files.append(name)
    manifest = {
        "command": "simulate",
        "model": model.to_dict(),
        "n": args.n,
        "truncation": args.truncation,
        "burn_in": burn_in,
        "replicates": args.replicates,
        "noise": "gaussian",
        "master_seed": ens.master_seed,
        "seeds": ens.seeds,
        "files": files,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(files)} path file(s) and manifest.json to {out}")
    return EXIT_OK


def cmd_estimate(args) -> int:
    values, start = read_series_csv(args.input)
    if start is not None:
        start = (start - 1) % args.period + 1
    stats = sample_periodic_acvf(values, args.period, args.max_lag, args.centering, start or 1)
    stats = sample_periodic_acf(stats)
    dest = _out_file(args, "stats.csv")
    if dest is None:
        stats.write_csv(sys.stdout)
    else:
        with open(dest, "w", newline="") as fh:
            stats.write_csv(fh)
    return EXIT_OK


def cmd_verify(args) -> int:
    model = _model(args, defaults.FIG1)
    overrides = {}
    for item in args.tol or []:
        key, _, val = item.partition("=")
        if not val:
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
        if key not in defaults.TOLERANCES:
            raise UsageError(f"unknown tolerance {key!r}; known: {sorted(defaults.TOLERANCES)}")
        overrides[key] = float(val)
    results = run_checks(
        model,
        overrides,
        monte_carlo=not args.theory_only,
        n=args.n,
        truncation=args.truncation,
        replicates=args.replicates,
        seed=args.seed,
        progress=lambda r: print(r.row(), flush=True),
    )
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="model JSON: {period, d, sigma2}")
    common.add_argument("--out", help="output directory")
    common.add_argument("--seed", type=_seed, default=defaults.SEED, help="master seed (u64)")

    parser = _Parser(prog="ptvarfima", description="Periodic fractional (PtvARFIMA) toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check a model document")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("acvf", parents=[common], help="theoretical autocovariance table")
    p.add_argument("--max-lag", type=_nonneg_int, default=defaults.MAX_LAG)
    p.add_argument("--min-lag", type=_nonneg_int, default=0)
    p.add_argument("--method", choices=METHODS, default="exact")
    p.add_argument("--n-terms", type=_positive_int, default=None, help="series method only")
    p.add_argument("--acf", action="store_true", help="fill the rho column")
    p.set_defaults(func=cmd_acvf)

    p = sub.add_parser("figures", parents=[common], help="reproduce the two period-2 figures")
    p.add_argument("--max-lag", type=_nonneg_int, default=defaults.MAX_LAG)
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("simulate", parents=[common], help="simulate sample paths")
    p.add_argument("--n", type=_positive_int, default=defaults.N)
    p.add_argument("--truncation", type=_positive_int, default=defaults.TRUNCATION)
    p.add_argument("--burn-in", type=_nonneg_int, default=None)
    p.add_argument("--replicates", type=_positive_int, default=1)
    p.add_argument("--eps", action="store_true", help="include the generating noise")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", parents=[common], help="periodic sample ACVF/ACF")
    p.add_argument("--input", required=True)
    p.add_argument("--period", type=_positive_int, required=True)
    p.add_argument("--max-lag", type=_nonneg_int, default=10)
    p.add_argument("--centering", choices=("per_season_mean", "zero"), default="per_season_mean")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("verify", parents=[common], help="run the verification checks")
    p.add_argument("--tol", action="append", metavar="NAME=VALUE")
    p.add_argument("--theory-only", action="store_true", help="skip the Monte-Carlo checks")
    p.add_argument("--n", type=_positive_int, default=defaults.N)
    p.add_argument("--truncation", type=_positive_int, default=defaults.TRUNCATION)
    p.add_argument("--replicates", type=_positive_int, default=defaults.REPLICATES)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ptvarfima {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ModelError, InsufficientDataError, ZeroVarianceError, ValueError, KeyError) as exc:
        print(f"ptvarfima {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ptvarfima {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
