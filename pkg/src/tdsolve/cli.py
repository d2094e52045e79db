"""Command-line front end: ``tdsolve {classify,eval,trace,figures,verify}``.

Exit codes: 0 success, 1 verification failure, 2 invalid input or a time
grid outside the picture's domain.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import DomainError, RegimeError
from .observables import SqueezeState, trace
from .regimes import Params, Picture, classify, tprime_domain
from .verification import SUITES, run

SCHEMA_VERSION = 1
CSV_HEADER = "t,x_exp,p_exp,dx,dp,product"
# TM a=1, omega=2, t_o=1, x_o=p_o=1: <x>(t) and <p>(t) for both b values feed the
# first two figures; the b=1 file also holds the phase-space curve of the third.
FIGURE_SYSTEMS = {"tm_a1_b-0.5": -0.5, "tm_a1_b1": 1.0}


class UsageError(Exception):
    """Invalid input detected after argument parsing (exit code 2)."""


def _add_params(ap: argparse.ArgumentParser, picture_default: str | None = "TM") -> None:
    ap.add_argument("--picture", type=str.upper, choices=[p.value for p in Picture], default=picture_default,
                    help="TQ, TM or TO (case-insensitive)")
    ap.add_argument("--a", type=float, required=True, help="mass exponent a")
    ap.add_argument("--b", type=float, required=True, help="spring exponent b")
    ap.add_argument("--omega", type=float, required=True, help="frequency omega > 0")
    ap.add_argument("--t0", type=float, required=True, help="reference time t_o > 0")


def _params(args) -> tuple[Params, Picture]:
    try:
        p = Params(args.a, args.b, args.omega, args.t0)
        picture = Picture.parse(args.picture)
        classify(p, picture)
    except (RegimeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return p, picture


def _fmt(x: float) -> str:
    return "%.17g" % x


# ---------------------------------------------------------------- classify


def classify_report(p: Params, picture: Picture) -> dict:
    key = classify(p, picture)
    dom = tprime_domain(p)
    report = {
        "schema_version": SCHEMA_VERSION,
        "params": {"a": p.a, "b": p.b, "omega": p.omega, "t0": p.t_o},
        **key.to_dict(),
        "critical_t": p.critical_t,
        "t0_vs_critical_t": {"T_LT": "<", "T_EQ": "=", "T_GT": ">"}.get(
            key.subclass.value if key.subclass else "", None
        ),
        "domain": {
            "t": {"lower": p.t_o, "upper": None, "open_upper": True},
            "tprime_offset": {
                "lower": dom.lower,
                "upper": None if math.isinf(dom.upper) else dom.upper,
                "open_upper": dom.open_upper,
            },
        },
    }
    return report


def cmd_classify(args) -> int:
    p, picture = _params(args)
    report = classify_report(p, picture)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return 0
    print(f"picture     {report['picture']}")
    print(f"key         {report['key']}")
    print(f"label       {report['label']}")
    print(f"case        {report['case']}")
    print(f"class       {report['class']}")
    if report["subclass"]:
        print(f"subclass    {report['subclass']}  (t_o = {_fmt(p.t_o)} "
              f"{report['t0_vs_critical_t']} |1-a|/(2 omega) = {_fmt(p.critical_t)})")
        print(f"sign(1-a)   {report['sign_tag']}")
    if report["special"] and report["row"] != "sho":
        print("special     b = -a (constant frequency in t')")
    print(f"row         {report['row']}")
    off = report["domain"]["tprime_offset"]
    upper = "inf)" if off["upper"] is None else f"{_fmt(off['upper'])})"
    print(f"t domain    [{_fmt(p.t_o)}, inf)")
    print(f"t'-t_o'     [{_fmt(off['lower'])}, {upper}")
    return 0


# ---------------------------------------------------------------- eval


def cmd_eval(args) -> int:
    from .observables import mode_functions
    from .to_functions import to_phi
    from .tm_functions import tm_phi
    from .tq_functions import tq_coeffs

    p, picture = _params(args)
    try:
        fx, fp = mode_functions(picture, p, args.time)
        out = {"picture": picture.value, "time": args.time,
               "f_x": [float(np.real(fx)), float(np.imag(fx))],
               "f_p": [float(np.real(fp)), float(np.imag(fp))]}
        if picture is Picture.TO:
            _, _, f3, f3d, f3dd = to_phi(args.time, p)
            out.update(phi3=float(f3), phi3_dot=float(f3d), phi3_ddot=float(f3dd))
        elif picture is Picture.TM:
            f3, f3d, f3dd = tm_phi(args.time, p)
            out.update(phi3=float(f3), phi3_dot=float(f3d), phi3_ddot=float(f3dd))
        else:
            c3t, c3d, c3x2 = tq_coeffs(args.time, p)
            out.update(C3T=float(c3t), C3D=float(c3d), C3X2=float(c3x2))
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(out, indent=2))
    return 0


# ---------------------------------------------------------------- trace


def _grid(args, p: Params, picture: Picture) -> np.ndarray:
    start = args.t_start
    if start is None:
        start = 0.0 if picture is Picture.TO else p.t_o
    end = start if args.t_end is None else args.t_end
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    if args.points == 1:
        if end != start:
            raise UsageError("--points 1 needs --t-end equal to --t-start (or omitted)")
        return np.array([start])
    if end < start:
        raise UsageError("--t-end must be >= --t-start")
    return np.linspace(start, end, args.points)


def write_trace_csv(points, stream) -> None:
    stream.write(CSV_HEADER + "\n")
    for q in points:
        stream.write(",".join(_fmt(v) for v in (q.t, q.x, q.p, q.dx, q.dp, q.product)) + "\n")


def _state(args) -> SqueezeState:
    try:
        return SqueezeState(args.x0, args.p0, args.r, args.theta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_trace(args) -> int:
    p, picture = _params(args)
    state = _state(args)
    grid = _grid(args, p, picture)
    try:
        points = trace(picture, p, state, grid, workers=args.workers)
    except DomainError as exc:
        raise UsageError(f"time grid outside the {picture.value} domain: {exc}") from None
    if args.output in (None, "-"):
        write_trace_csv(points, sys.stdout)
    else:
        with open(args.output, "w", newline="") as fh:
            write_trace_csv(points, fh)
    return 0


def cmd_figures(args) -> int:
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    state = SqueezeState(1.0, 1.0, args.r, args.theta)
    grid = np.linspace(1.0, 50.0, args.points)
    for name, b in FIGURE_SYSTEMS.items():
        p = Params(1.0, b, 2.0, 1.0)
        with open(out / f"{name}.csv", "w", newline="") as fh:
            write_trace_csv(trace(Picture.TM, p, state, grid), fh)
        print(f"wrote {out / (name + '.csv')}")
    return 0


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    try:
        results = run(seed=args.seed, samples=args.samples, suites=args.suite)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        ok &= res.passed
        print(f"[{status}] {res.name}")
        for regime, metric, resid, tol, passed in res.summary():
            flag = "ok " if passed else "BAD"
            print(f"    {flag} {regime:<36} {metric:<44} {resid:10.3e}  tol {tol:.1e}")
        for c in res.checks:
            if c.note and c.informational:
                print(f"    note: {c.regime} {c.metric}: residual {c.residual:.3e} ({c.note})")
                break
        for c in res.checks:
            if c.note and not c.informational:
                print(f"    note: {c.note}")
    print("all suites passed" if ok else "verification FAILED")
    return 0 if ok else 1


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tdsolve", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="report the regime key and time domains")
    _add_params(c)
    c.add_argument("--json", action="store_true", help="machine-readable output")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("eval", help="evaluate the mode functions at one time")
    _add_params(e)
    e.add_argument("--time", type=float, required=True,
                   help="t for TM/TQ, the offset t'-t_o' for TO")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("trace", help="CSV of <x>, <p>, dx, dp and dx2*dp2 on a grid")
    _add_params(t)
    t.add_argument("--x0", type=float, default=1.0)
    t.add_argument("--p0", type=float, default=1.0)
    t.add_argument("--r", type=float, default=0.0, help="squeeze magnitude")
    t.add_argument("--theta", type=float, default=0.0, help="squeeze phase (radians)")
    t.add_argument("--t-start", type=float, default=None,
                   help="default t0 (TM/TQ) or 0 (TO, where times are t'-t_o' offsets)")
    t.add_argument("--t-end", type=float, default=None)
    t.add_argument("--points", type=int, default=1000)
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--output", "-o", default=None, help="file path; stdout if omitted")
    t.set_defaults(func=cmd_trace)

    f = sub.add_parser("figures", help="write the TM a=1, omega=2, t0=1 traces on [1, 50]")
    f.add_argument("--output-dir", default="figures")
    f.add_argument("--points", type=int, default=5000)
    f.add_argument("--r", type=float, default=0.0)
    f.add_argument("--theta", type=float, default=0.0)
    f.set_defaults(func=cmd_figures)

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--samples", type=int, default=3, help="parameter draws per regime")
    v.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="run only this suite (repeatable)")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tdsolve {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
