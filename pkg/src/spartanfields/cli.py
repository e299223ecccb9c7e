"""Command-line front end.

Subcommands:
  eval      radial tables of covariance, autocorrelation, or spectral density
  scales    correlation-spectrum and integral-range tables over alpha
  simulate  seeded FFT realizations plus empirical statistics
  validate  closed-form versus quadrature check suites (JSON report)

Exit codes: 0 ok, 1 validation failure, 2 permissibility violation,
3 unsupported (family, d, cutoff) combination, 64 usage error.
Default output directory comes from SPARTANFIELDS_OUTDIR (falls back to '.').
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

import numpy as np

from . import gridio
from .covariance import autocorrelation, covariance
from .errors import PermissibilityError, UnsupportedModelError
from .models import BlParams, SsrfParams, params_to_dict, spectral_density
from .scales import (
    UnimodalityError,
    bl_integral_range,
    correlation_spectrum,
    integral_range_numeric,
)
from .simulate import estimate_stats, fresh_seed, simulate_field, spawn_seeds
from .tables import RadialTable, atomic_write_text, write_table
from .validate import run_suites

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PERMISSIBILITY = 2
EXIT_UNSUPPORTED = 3
EXIT_USAGE = 64

log = logging.getLogger("spartanfields")


class _Parser(argparse.ArgumentParser):
    """argparse with the BSD-style usage exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _kc_type(text: str) -> float:
    if text.strip().lower() == "inf":
        return math.inf
    return float(text)


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=("ssrf", "bl"))
    p.add_argument("--eta0", required=True, type=float, help="amplitude coefficient (> 0)")
    p.add_argument("--eta1", required=True, type=float, help="rigidity coefficient (> -2)")
    p.add_argument("--xi", required=True, type=float, help="characteristic length (> 0)")
    p.add_argument("--kc", required=True, type=_kc_type,
                   help="spectral cutoff; 'inf' allowed for family ssrf only")
    p.add_argument("--d", type=int, default=2, help="spatial dimension (default 2)")


def _build_model(args):
    if args.family == "ssrf":
        return SsrfParams(eta0=args.eta0, eta1=args.eta1, xi=args.xi, kc=args.kc, d=args.d)
    return BlParams(eta0=args.eta0, eta1=args.eta1, xi=args.xi, kc=args.kc, d=args.d)


def _outdir(args) -> str:
    out = args.outdir or os.environ.get("SPARTANFIELDS_OUTDIR", ".")
    os.makedirs(out, exist_ok=True)
    return out


def _plot_stem(path: str) -> str:
    return os.path.splitext(path)[0] + ".png"


def cmd_eval(args) -> int:
    model = _build_model(args)
    meta = dict(params_to_dict(model))
    meta["quantity"] = args.quantity
    if args.quantity == "spd":
        kmax = args.kmax if args.kmax is not None else (
            model.kc if math.isfinite(model.kc) else 10.0 / model.xi)
        grid = np.linspace(0.0, kmax, args.n)
        values = np.asarray(spectral_density(grid, model))
        table = RadialTable(grid, values, metadata=meta, abscissa_name="k",
                            value_name="spectral_density")
    else:
        rmax = args.rmax if args.rmax is not None else 5.0 * model.xi
        grid = np.linspace(0.0, rmax, args.n)
        fn = covariance if args.quantity == "cov" else autocorrelation
        values = np.asarray(fn(grid, model))
        table = RadialTable(grid, values, metadata=meta, abscissa_name="r",
                            value_name=args.quantity)
    out = args.out or os.path.join(_outdir(args), f"{args.family}_{args.quantity}.{args.format}")
    write_table(table, out, args.format)
    if args.plot:
        from .plotting import plot_table
        plot_table(table.abscissa, table.values, _plot_stem(out),
                   xlabel=table.abscissa_name, ylabel=table.value_name,
                   title=f"{args.family} {args.quantity}", loglog=(args.quantity == "spd"))
    print(out)
    return EXIT_OK


def cmd_scales(args) -> int:
    model = _build_model(args)
    if args.alpha is not None:
        alphas = [float(a) for a in args.alpha.split(",") if a.strip()]
    else:
        alphas = list(np.linspace(0.0, 1.0, args.alpha_grid))
    if not alphas or any(a < 0 or a > 1 for a in alphas):
        raise ValueError("alpha values must lie in [0, 1]")
    method = "closed_form" if args.method == "closed" else "numeric"
    results = [correlation_spectrum(model, a, method=method) for a in alphas]
    if isinstance(model, BlParams):
        ell_c = bl_integral_range(model)
    else:
        ell_c = integral_range_numeric(model)

    meta = dict(params_to_dict(model))
    meta.update(method=args.method, integral_range=ell_c)
    out = args.out or os.path.join(_outdir(args), f"{args.family}_scales.{args.format}")
    if args.format == "csv":
        lines = [f"# {k}={v}" for k, v in sorted(meta.items())]
        lines.append("alpha,lambda_c,divergent")
        for a, res in zip(alphas, results):
            lines.append(f"{float(a)!r},{float(res.value)!r},{int(res.divergent)}")
        atomic_write_text(out, "\n".join(lines) + "\n")
    else:
        doc = {
            "metadata": meta,
            "alpha": list(alphas),
            "lambda_c": [res.value for res in results],
            "divergent": [bool(res.divergent) for res in results],
        }
        atomic_write_text(out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if args.plot:
        from .plotting import plot_scales
        plot_scales(alphas, [r.value for r in results], _plot_stem(out),
                    title=f"{args.family} correlation spectrum ({args.method})")
    print(out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.n_real < 1:
        raise UsageError("--n-real must be at least 1")
    model = _build_model(args)
    out = _outdir(args)
    master = args.seed if args.seed is not None else fresh_seed()
    log.info("simulate: master seed %d", master)
    seeds = spawn_seeds(master, args.n_real)
    fields = []
    paths = []
    for i, s in enumerate(seeds):
        field = simulate_field(model, args.L, args.spacing, s)
        fields.append(field)
        ext = "sfg" if args.format == "bin" else "csv"
        path = os.path.join(out, f"field_{i:04d}.{ext}")
        if args.format == "bin":
            gridio.write_field(field, path)
        else:
            gridio.write_field_csv(field, path)
        paths.append(path)
        if args.plot:
            from .plotting import plot_field
            plot_field(field.values, field.spacing, _plot_stem(path),
                       title=f"{args.family} seed={s}")

    max_lag = args.max_lag if args.max_lag is not None else 0.25 * args.L * args.spacing
    slope_band = None
    if args.slope_band:
        lo, hi = (float(x) for x in args.slope_band.split(","))
        slope_band = (lo, hi)
    stats = estimate_stats(fields, max_lag=max_lag, slope_band=slope_band)
    stats_doc = {
        "model": params_to_dict(model),
        "L": args.L,
        "spacing": args.spacing,
        "n_real": args.n_real,
        "master_seed": master,
        "seeds": seeds,
        "variance_hat": stats.variance_hat,
        "spd_slope_hat": stats.spd_slope_hat,
        "slope_band": list(stats.slope_band),
        "trusted_max_lag": stats.trusted_max_lag,
        "radial_covariance": {
            "lag": stats.radial_cov_hat.abscissa.tolist(),
            "value": stats.radial_cov_hat.values.tolist(),
        },
        "field_files": paths,
    }
    stats_path = os.path.join(out, "stats.json")
    atomic_write_text(stats_path, json.dumps(stats_doc, indent=2, sort_keys=True) + "\n")
    print(stats_path)
    return EXIT_OK


def cmd_validate(args) -> int:
    overrides = {}
    for item in args.tol or []:
        name, _, value = item.partition("=")
        if not value:
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
        overrides[name] = float(value)
    report = run_suites(args.suite, overrides)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        atomic_write_text(args.out, text)
        print(args.out)
    else:
        sys.stdout.write(text)
    for check in report["checks"]:
        status = "PASS" if check["pass"] else "FAIL"
        print(f"{status} {check['name']}: max_err={check['max_err']:.3e} tol={check['tol']:.1e}",
              file=sys.stderr)
    return EXIT_OK if report["overall"] else EXIT_VALIDATION


class UsageError(Exception):
    pass


def build_parser() -> _Parser:
    parser = _Parser(prog="spartanfields",
                     description="Spartan / Bessel-Lommel covariance toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_eval = sub.add_parser("eval", help="tabulate covariance / autocorrelation / density")
    _add_model_args(p_eval)
    p_eval.add_argument("--quantity", required=True, choices=("cov", "autocorr", "spd"))
    p_eval.add_argument("--rmax", type=float, default=None, help="largest lag (default 5*xi)")
    p_eval.add_argument("--kmax", type=float, default=None,
                        help="largest wavenumber for spd (default kc, or 10/xi)")
    p_eval.add_argument("--n", type=int, default=200, help="number of grid points")
    p_eval.add_argument("--format", choices=("csv", "json"), default="csv")
    p_eval.add_argument("--out", default=None, help="output file (default <outdir>/<auto>)")
    p_eval.add_argument("--outdir", default=None)
    p_eval.add_argument("--plot", action="store_true", help="also render a PNG next to the table")
    p_eval.set_defaults(func=cmd_eval)

    p_scales = sub.add_parser("scales", help="correlation spectrum / integral range tables")
    _add_model_args(p_scales)
    group = p_scales.add_mutually_exclusive_group()
    group.add_argument("--alpha", default=None, help="comma-separated alpha list")
    group.add_argument("--alpha-grid", type=int, default=11,
                       help="number of evenly spaced alphas in [0, 1]")
    p_scales.add_argument("--method", choices=("closed", "numeric"), default="closed")
    p_scales.add_argument("--format", choices=("csv", "json"), default="csv")
    p_scales.add_argument("--out", default=None)
    p_scales.add_argument("--outdir", default=None)
    p_scales.add_argument("--plot", action="store_true")
    p_scales.set_defaults(func=cmd_scales)

    p_sim = sub.add_parser("simulate", help="seeded FFT realizations plus statistics")
    _add_model_args(p_sim)
    p_sim.add_argument("--L", type=int, default=512, help="grid cells per side (power of two)")
    p_sim.add_argument("--spacing", type=float, default=1.0)
    p_sim.add_argument("--n-real", type=int, default=1)
    seed_group = p_sim.add_mutually_exclusive_group()
    seed_group.add_argument("--seed", type=int, default=None)
    seed_group.add_argument("--clock-seed", action="store_true",
                            help="derive a fresh seed (logged and stored in outputs)")
    p_sim.add_argument("--format", choices=("bin", "csv"), default="bin")
    p_sim.add_argument("--max-lag", type=float, default=None,
                       help="largest lag for the covariance estimate (default L*spacing/4)")
    p_sim.add_argument("--slope-band", default=None,
                       help="'lo,hi' wavenumber band for the periodogram slope fit")
    p_sim.add_argument("--out-dir", dest="outdir", default=None)
    p_sim.add_argument("--plot", action="store_true")
    p_sim.set_defaults(func=cmd_simulate)

    p_val = sub.add_parser("validate", help="closed-form vs quadrature check suites")
    p_val.add_argument("--suite", choices=("ssrf", "bl", "scales", "all"), default="all")
    p_val.add_argument("--tol", action="append", default=None, metavar="NAME=VALUE",
                       help="override a check tolerance (repeatable)")
    p_val.add_argument("--out", default=None, help="write the JSON report here")
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("SPARTANFIELDS_LOGLEVEL", "INFO"),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"spartanfields: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PermissibilityError as exc:
        print(f"spartanfields: permissibility error: {exc}", file=sys.stderr)
        return EXIT_PERMISSIBILITY
    except (UnsupportedModelError, UnimodalityError) as exc:
        print(f"spartanfields: unsupported model: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as exc:
        print(f"spartanfields: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
