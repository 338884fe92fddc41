"""Command line front-end.

Subcommands: ``risk``, ``curve``, ``mc``, ``validate``, ``piemonte``.
Exit codes: 0 success, 1 config error, 2 numerical failure, 3 validation
failure.
"""

import argparse
import csv
import io
import os
import sys
import time
from dataclasses import replace

import numpy as np

from .config import ConfigError, load_config
from .curves import g_curve, is_non_increasing, r1_curve, write_curve_csv
from .piemonte import piemonte_report
from .risk import QuadratureConfig, risk_general
from .simulation import NumericalError, ResourceError, relative_error_study, write_study_csv
from .special import DomainError
from .validation import report_hash, report_lines, run_validation

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_VALIDATION = 3


class _NumericalFailure(Exception):
    pass


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require_config(args):
    if not args.config:
        raise ConfigError(f"{args.command}: --config is required")
    return load_config(args.config, args.command)


def cmd_risk(args):
    cfg = _require_config(args)
    quad = cfg.quad
    if args.tolerance is not None:
        quad = QuadratureConfig(args.tolerance, quad.limit)
    res = risk_general(cfg.region, cfg.model, cfg.marginal, cfg.u_raw, quad)
    print(f"u0     {res.u0:.17g}")
    print(f"r0     {res.r0:.17g}")
    print(f"r1     {res.r1:.17g}")
    print(f"abserr {res.abserr:.3g}")
    if args.out:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("u0", "r0", "r1", "abserr"))
        w.writerow(tuple(format(x, ".17g") for x in (res.u0, res.r0, res.r1, res.abserr)))
        _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_curve(args):
    cfg = _require_config(args)
    quad = cfg.quad
    if args.tolerance is not None:
        quad = QuadratureConfig(args.tolerance, quad.limit)
    points = []
    for fam in cfg.families:
        if cfg.quantity == "G":
            points += g_curve(fam, cfg.axis, cfg.values, cfg.theta, cfg.kappa, cfg.p, cfg.h)
        else:
            points += r1_curve(
                fam, cfg.axis, cfg.values, cfg.theta, cfg.kappa, cfg.p, cfg.lam, cfg.region, quad
            )
    if cfg.quantity == "R1" and cfg.axis == "lambda" and not is_non_increasing(points):
        raise _NumericalFailure("R1 is not non-increasing in lambda; quadrature tolerance too loose?")
    buf = io.StringIO()
    write_curve_csv(points, buf)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_mc(args):
    cfg = _require_config(args)
    mc = replace(cfg.mc, threads=args.threads)
    if args.seed is not None:
        mc = replace(mc, seed=args.seed)
    quad = cfg.quad
    if args.tolerance is not None:
        quad = QuadratureConfig(args.tolerance, quad.limit)
    rows = relative_error_study(
        cfg.families, cfg.ps, cfg.region, cfg.theta, cfg.kappa, cfg.runs, mc, quad
    )
    buf = io.StringIO()
    write_study_csv(rows, buf)
    _emit(buf.getvalue(), args.out)
    if args.out:
        for fam in cfg.families:
            for p in cfg.ps:
                e = np.array([r.rel_error for r in rows if r.family == fam and r.p == p])
                q1, med, q3 = np.percentile(e, [25, 50, 75])
                print(f"{fam:<12s} p={p:<5g} median={med:+.4f} IQR={q3 - q1:.4f}")
    return EXIT_OK


def cmd_validate(args):
    results = run_validation(
        seed=args.seed or 0,
        threads=args.threads,
        tolerance=args.tolerance if args.tolerance is not None else 1e-10,
        corrupt=args.inject_failure,
    )
    lines = report_lines(results)
    text = "\n".join(lines) + f"\nreport sha256 {report_hash(results)}\n"
    _emit(text, args.out)
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} check(s) failed", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_piemonte(args):
    t0 = time.perf_counter()
    quad = QuadratureConfig(args.tolerance) if args.tolerance is not None else None
    rep = piemonte_report(seed=args.seed or 0, threads=args.threads, quad_cfg=quad)
    text = "\n".join(rep.lines()) + f"\nelapsed {time.perf_counter() - t0:.2f} s\n"
    _emit(text, args.out)
    return EXIT_OK


_COMMANDS = {
    "risk": (cmd_risk, "risk measure (R0, R1) of one configuration"),
    "curve": (cmd_curve, "sweep G or R1 along one parameter, CSV output"),
    "mc": (cmd_mc, "M1 Monte Carlo relative error study, CSV output"),
    "validate": (cmd_validate, "run the cross-module oracle suite"),
    "piemonte": (cmd_piemonte, "PM10 case study, quadrature vs Monte Carlo"),
}


def _u64(text):
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--seed", type=_u64, default=None, help="master seed (u64)")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument(
        "--threads", type=_positive_int, default=os.cpu_count() or 1,
        help="worker threads; never changes results (default: all cores)",
    )
    common.add_argument("--tolerance", type=_positive_float, default=None, help="absolute quadrature tolerance")

    parser = argparse.ArgumentParser(prog="spatial-risk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "validate":
            p.add_argument("--inject-failure", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    func = _COMMANDS[args.command][0]
    try:
        return func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (_NumericalFailure, NumericalError, ArithmeticError, ResourceError, DomainError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
