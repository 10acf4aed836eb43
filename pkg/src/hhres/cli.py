"""Command-line front end: rspe | resonance | resum | verify.

Each subcommand writes delimited data (CSV + JSON, config embedded) into
--out-dir and renders the matching figures unless --no-plots is given.
A JSON file with the same keys as the flags can be supplied via --config;
explicit flags win.  Exit codes: 0 success, 1 numerical check failure,
2 usage or configuration error.  HHRES_THREADS caps the worker threads
used for grid sweeps (default 1, sequential and deterministic).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import report, resummation, series, verify
from .oscillator import SectorError
from .resonance import (DEFAULT_SCHEDULE, AmbiguousEigenvalueError,
                        BranchJumpError, continue_argument, converge_resonance)
from .series import growth_diagnostics, perturbation_series

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters of one subcommand invocation."""

    subcommand: str
    params: dict

    def to_json_obj(self) -> dict:
        return {"subcommand": self.subcommand, "params": self.params}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RunConfig":
        return cls(subcommand=obj["subcommand"], params=dict(obj["params"]))


def parallel_map(fn, items):
    """Order-preserving map honouring the HHRES_THREADS budget."""
    workers = int(os.environ.get("HHRES_THREADS", "1"))
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def _q_value(text: str) -> Fraction:
    if text in ("half", "1/2", "0.5"):
        return Fraction(1, 2)
    if text in ("1", "one"):
        return Fraction(1)
    raise argparse.ArgumentTypeError(f"q must be 'half' or '1', got {text!r}")


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Pre-scan for --config and fold the file into parser defaults."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        parser.error("--config needs a path")
    path = Path(argv[i + 1])
    if not path.exists():
        parser.error(f"config file not found: {path}")
    try:
        loaded = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        parser.error(f"config file {path} is not valid JSON: {exc}")
    params = loaded.get("params", loaded)
    known = {a.dest for a in parser._actions}
    unknown = set(params) - known
    if unknown:
        parser.error(f"config file {path} has unknown keys: {sorted(unknown)}")
    parser.set_defaults(**params)
    return argv[:i] + argv[i + 2:]


def _out_dir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_rspe(args) -> int:
    cfg = RunConfig("rspe", {"orders": args.orders, "precision": args.precision,
                             "out_dir": str(args.out_dir),
                             "plots": not args.no_plots}).to_json_obj()
    out = _out_dir(args)
    ps = perturbation_series(args.orders)
    gs = ps.reindex_to_g()
    report.write_json(out / "coefficients.json", ps.to_json_obj(), cfg)
    floats = series.project_floats(ps.a, args.precision)
    rows = [{"n": n, "a_n": f"{c.numerator}/{c.denominator}",
             "a_n_float64": repr(float(floats[n]))}
            for n, c in enumerate(ps.a)]
    report.write_csv(out / "coefficients.csv", ["n", "a_n", "a_n_float64"],
                     rows, cfg)
    try:
        rep = growth_diagnostics(gs)
        report.write_json(out / "growth.json", {
            "constant_sign": rep.constant_sign, "sign": rep.sign,
            "sigma": list(rep.sigma), "sigma_last": rep.sigma_last,
            "sigma_monotone_tail": rep.sigma_monotone_tail,
            "n_orders": rep.n_orders}, cfg)
        if not args.no_plots:
            report.fig_coefficients([float(c) for c in gs.coeffs], rep.sigma,
                                    out / "coefficients.png")
    except series.UnderLengthError:
        pass  # short runs still get their coefficient tables
    print(f"wrote {out}/coefficients.json (orders = {args.orders})")
    return EXIT_OK


def cmd_resonance(args) -> int:
    params = {"beta": args.beta, "tol": args.tol, "n_max_cap": args.n_max_cap,
              "theta_im": args.theta_im, "track_rho": args.track_rho,
              "track_steps": args.track_steps, "out_dir": str(args.out_dir),
              "plots": not args.no_plots}
    cfg = RunConfig("resonance", params).to_json_obj()
    out = _out_dir(args)
    schedule = tuple(n for n in DEFAULT_SCHEDULE
                     if n <= args.n_max_cap) or (args.n_max_cap,)

    def solve(beta: float):
        return converge_resonance(beta, tol=args.tol, schedule=schedule,
                                  theta_im=args.theta_im)

    try:
        results = parallel_map(solve, args.beta) if args.beta else []
    except SectorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows = []
    for r in results:
        rows.append({"beta": r.beta.real if r.beta.imag == 0 else str(r.beta),
                     "beta_abs": abs(r.beta),
                     "re_E": r.value.real, "im_E": r.value.imag,
                     "n_max": r.n_max, "est_error": r.est_error,
                     "theta_im": r.theta.imag, "converged": r.converged})
    if rows:
        report.write_csv(out / "resonances.csv",
                         list(rows[0].keys()), rows, cfg)
        report.write_json(out / "resonances.json",
                          {"rows": [r.to_json_obj() for r in results]}, cfg)
        if not args.no_plots:
            report.fig_resonances(rows, out / "resonances.png")
        n_bad = sum(not r.converged for r in results)
        if n_bad:
            print(f"warning: {n_bad} rows not converged to tol", file=sys.stderr)
    if args.track_rho is not None:
        try:
            track = continue_argument(args.track_rho, args.track_steps)
        except (BranchJumpError, AmbiguousEigenvalueError) as exc:
            print(f"error: continuation failed: {exc}", file=sys.stderr)
            return EXIT_NUMERICAL
        trows = [{"s": s, "t": t, "re_E": re, "im_E": im}
                 for s, t, re, im in track.rows()]
        report.write_csv(out / "continuation.csv", ["s", "t", "re_E", "im_E"],
                         trows, cfg)
        report.write_json(out / "continuation.json", {
            "rho": track.rho, "n_max": track.n_max,
            "endpoint_mismatch": track.endpoint_mismatch,
            "max_step": track.max_step, "step_bound": track.step_bound}, cfg)
        if not args.no_plots:
            report.fig_continuation(track.rows(), out / "continuation.png")
        print(f"continuation endpoint mismatch {track.endpoint_mismatch:.3e}")
    if rows:
        print(f"wrote {out}/resonances.csv ({len(rows)} rows)")
    return EXIT_OK


def cmd_resum(args) -> int:
    params = {"coeffs": str(args.coeffs), "beta": args.beta, "q": str(args.q),
              "L": args.L, "M": args.M, "out_dir": str(args.out_dir),
              "plots": not args.no_plots}
    cfg = RunConfig("resum", params).to_json_obj()
    out = _out_dir(args)
    path = Path(args.coeffs)
    if not path.exists():
        print(f"error: coefficient file not found: {path}", file=sys.stderr)
        return EXIT_USAGE
    doc = json.loads(path.read_text())
    if args.q == Fraction(1, 2):
        coeffs = [Fraction(s) for s in doc["beta_coeffs"]]
    else:
        coeffs = [Fraction(s) for s in doc["g_coeffs"]]

    def sum_at(beta: float):
        # q = 1 runs in the squared-coupling variable; rows stay in beta
        arg = beta * beta if args.q == 1 else beta
        return resummation.distributional_sum(
            coeffs, arg, q=args.q, L=args.L, M=args.M,
            reduce_on_degeneracy=True)

    rows, failures = [], []
    for beta, res in zip(args.beta, parallel_map(_guarded(sum_at), args.beta)):
        if isinstance(res, Exception):
            failures.append((beta, res))
            print(f"warning: beta = {beta}: {res}", file=sys.stderr)
            continue
        row = res.to_json_obj()
        row["beta"] = beta
        if args.q == Fraction(1, 2):
            # remainder-shape constants: diagnostic fit, not an assertion
            try:
                a_fit, sigma_fit = resummation.remainder_shape_fit(
                    coeffs, beta, res.f)
                row["remainder_fit_A"] = a_fit
                row["remainder_fit_sigma"] = sigma_fit
            except ValueError:
                pass
        rows.append(row)
    if rows:
        fields = ["beta", "f", "re_phi", "im_phi", "abs_d", "err_quad", "err_pade"]
        report.write_csv(out / "resummation.csv", fields,
                         [{k: r[k] for k in fields} for r in rows], cfg)
        report.write_json(out / "resummation.json", {"rows": rows}, cfg)
        if not args.no_plots:
            report.fig_resummation(rows, out / "resummation.png")
    approx, variable, L_used, M_used = resummation.borel_pade_model(
        coeffs, args.q, args.L, args.M, reduce_on_degeneracy=True)
    poles = approx.pole_report()
    report.write_json(out / "poles.json",
                      {"L": L_used, "M": M_used, "variable": variable,
                       "poles": poles}, cfg)
    if not args.no_plots:
        report.fig_borel_poles(poles, out / "borel_poles.png")
    print(f"wrote {out}/resummation.csv ({len(rows)} rows, "
          f"{len(failures)} failures)")
    return EXIT_OK if not failures else EXIT_NUMERICAL


def _guarded(fn):
    def wrapped(x):
        try:
            return fn(x)
        except (resummation.PadeDegeneracyError, resummation.AccuracyError,
                resummation.UnsupportedPoleStructureError,
                resummation.DiscError, ValueError) as exc:
            return exc
    return wrapped


def cmd_verify(args) -> int:
    cfg = RunConfig("verify", {"suite": args.suite,
                               "out_dir": str(args.out_dir)}).to_json_obj()
    out = _out_dir(args)
    rep = verify.run_suite(args.suite)
    print(rep.summary())
    report.write_json(out / "verify_report.json", rep.to_json_obj(), cfg)
    print(f"wrote {out}/verify_report.json")
    return EXIT_OK if rep.all_passed else EXIT_NUMERICAL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhres",
        description="Resonance and distributional resummation toolkit for "
                    "the quantum Henon-Heiles oscillator")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", default="out", help="output directory")
    common.add_argument("--no-plots", action="store_true",
                        help="skip figure rendering")
    common.add_argument("--config", help="JSON file of flag defaults")

    p = sub.add_parser("rspe", parents=[common],
                       help="exact perturbation coefficients")
    p.add_argument("--orders", type=_nonnegative_int, default=series.DEFAULT_ORDERS)
    p.add_argument("--precision", choices=("double", "longdouble"),
                   default="double")
    p.set_defaults(func=cmd_rspe)

    p = sub.add_parser("resonance", parents=[common],
                       help="converged resonance values on a coupling grid")
    p.add_argument("--beta", type=float, action="append", default=[],
                   help="coupling value (repeatable)")
    p.add_argument("--tol", type=_positive_float, default=1e-8)
    p.add_argument("--n-max-cap", type=int, default=60)
    p.add_argument("--theta-im", type=float, default=None)
    p.add_argument("--track-rho", type=_positive_float, default=None,
                   help="also export an argument-continuation track at this |beta|")
    p.add_argument("--track-steps", type=int, default=64)
    p.set_defaults(func=cmd_resonance)

    p = sub.add_parser("resum", parents=[common],
                       help="distributional Borel-Leroy sums from a coefficient file")
    p.add_argument("--coeffs", required=True,
                   help="coefficients.json written by the rspe subcommand")
    p.add_argument("--beta", type=_positive_float, action="append", default=[])
    p.add_argument("--q", type=_q_value, default=Fraction(1, 2),
                   help="'half' (beta series) or '1' (g series)")
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--M", type=int, default=None)
    p.set_defaults(func=cmd_resum)

    p = sub.add_parser("verify", parents=[common],
                       help="run the acceptance suite")
    p.add_argument("--suite", choices=("quick", "full"), default="full")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    # fold --config into the matching subparser's defaults before parsing
    if "--config" in argv and argv and not argv[0].startswith("-"):
        subparser = parser._subparsers._group_actions[0].choices.get(argv[0])
        if subparser is not None:
            argv = [argv[0]] + _apply_config_file(subparser, argv[1:])
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
