"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 computation error, 3 routes disagree
(or a verify suite failed), 4 epsilon unreachable, 5 enumeration cap hit.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor

import jsonschema
import numpy as np

from .closed_form import SmoothFunction2D, closed_form_report
from .errors import (
    CombinatorialBlowup,
    EpsilonUnreachable,
    ExprSyntaxError,
    MeanPeriodicActivation,
    RidgeGapError,
    SingularDirections,
    UnknownActivation,
)
from .expr import evaluate, parse
from .extremal import enumerate_closed_paths, sup_closed_path
from .network import build_network, get_activation
from .paths import path_functional
from .problem import ProblemSpec, load_problem, problem_from_json
from .ridge import best_ridge_linf
from .verify import run_verify

log = logging.getLogger("ridgegap")

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE, EXIT_DISAGREE, EXIT_EPSILON, EXIT_BLOWUP = range(6)
AGREE_TOL = 1e-7

_INPUT_ERRORS = (
    ValueError,
    KeyError,
    jsonschema.ValidationError,
    ExprSyntaxError,
    SingularDirections,
    MeanPeriodicActivation,
    UnknownActivation,
    OSError,
    json.JSONDecodeError,
)


class CommandError(Exception):
    def __init__(self, code, exc, report=None):
        super().__init__(str(exc))
        self.code = code
        self.exc = exc
        self.report = report


def _configure_logging():
    level = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        os.environ.get("RIDGEGAP_LOG", "").lower(), logging.WARNING
    )
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.captureWarnings(True)


def _vector(text):
    return tuple(float(x) for x in text.replace(",", " ").split())


def _ints(text):
    return [int(x) for x in text.replace(",", " ").split()]


def spec_from_args(args) -> ProblemSpec:
    obj = {}
    if args.points:
        obj.update(load_problem(args.points))
    if args.a is not None:
        obj["a"] = list(args.a)
    if args.b is not None:
        obj["b"] = list(args.b)
    if args.box is not None:
        obj.pop("points", None)
        obj["box"] = dict(zip(("c1", "d1", "c2", "d2"), args.box))
    if args.grid is not None:
        obj["grid"] = args.grid
    for flag, key in (
        ("f", "f"),
        ("activation", "activation"),
        ("epsilon", "epsilon"),
        ("tol", "tol"),
        ("max_len", "maxLen"),
        ("quad_order", "quadOrder"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            obj[key] = value
    if "a" not in obj or "b" not in obj:
        raise ValueError("directions --a and --b are required")
    if "points" not in obj and "box" not in obj:
        raise ValueError("give --points FILE or --box c1 d1 c2 d2 --grid M")
    return problem_from_json(obj)


def _fvals(spec: ProblemSpec, domain) -> np.ndarray:
    if spec.fvals is not None:
        f = np.asarray(spec.fvals, dtype=float)
        if f.shape != (len(domain),):
            raise ValueError(f"fvals has {f.size} entries for {len(domain)} points")
        return f
    if spec.f is None:
        raise ValueError("a function is required (--f EXPR)")
    return np.atleast_1d(evaluate(parse(spec.f, spec.dims), domain.points))


def _agree(x, y):
    return abs(x - y) <= AGREE_TOL * max(1.0, abs(y))


def _routes(spec: ProblemSpec, grid=None):
    domain = spec.domain(grid)
    f = _fvals(spec, domain)
    return domain, f, sup_closed_path(domain, f), best_ridge_linf(domain, f)


def _refine_row(args):
    spec, m = args
    _, _, sup, best = _routes(spec, m)
    return m, sup.value, best.error


def cmd_error(spec: ProblemSpec, refine=None, jobs=1, timings=False):
    """Path supremum, best ridge error and (for box domains) the corner formula."""
    report = {
        "command": "error",
        "problem": spec.to_json(),
        "lowerBound": None,
        "bestRidge": None,
        "closedForm": None,
        "network": None,
        "agreement": {"duality": None, "closedForm": None},
    }
    clock = {}
    t0 = time.perf_counter()
    try:
        domain, f, sup, best = _routes(spec)
    except SingularDirections as exc:
        report["errors"] = [{"type": type(exc).__name__, "message": str(exc)}]
        raise CommandError(EXIT_INPUT, exc, report) from exc
    clock["routes"] = time.perf_counter() - t0
    report["lowerBound"] = sup.to_json()
    report["bestRidge"] = best.to_json(domain)
    duality = _agree(sup.value, best.error)
    report["agreement"]["duality"] = duality

    ok = duality
    if spec.box is not None and spec.f is not None:
        t0 = time.perf_counter()
        cf = closed_form_report(SmoothFunction2D.from_text(spec.f), spec.box_spec(), spec.class_grid, spec.quad_order)
        clock["closedForm"] = time.perf_counter() - t0
        report["closedForm"] = cf.to_json()
        if cf.curvature_ok:
            agree = _agree(cf.corner_value, best.error) and _agree(cf.quadrature_value, cf.corner_value)
            report["agreement"]["closedForm"] = agree
            ok = ok and agree

    if refine:
        rows = _refinement(spec, refine, jobs)
        report["refinement"] = [{"m": m, "lowerBound": lo, "bestRidge": br} for m, lo, br in rows]
    if timings:
        report["timings"] = clock
    return report, (EXIT_OK if ok else EXIT_DISAGREE)


def _refinement(spec, grids, jobs):
    if spec.box is None:
        raise ValueError("refinement sweeps need a box domain")
    work = [(spec, m) for m in grids]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_refine_row, work))
    return [_refine_row(w) for w in work]


def cmd_fit_network(spec: ProblemSpec):
    """Best ridge approximation, univariate shift fits and the assembled network."""
    get_activation(spec.activation)  # reject mean-periodic choices before any work
    domain = spec.domain()
    f = _fvals(spec, domain)
    best = best_ridge_linf(domain, f)
    sup = sup_closed_path(domain, f)
    m_values = [m for m in (2, 4, 8, 12, 16, 24, 32, 48, 64, 96, 128) if m <= spec.max_shifts] or [spec.max_shifts]
    report = {
        "command": "fit-network",
        "problem": spec.to_json(),
        "lowerBound": sup.to_json(),
        "bestRidge": best.to_json(domain),
        "closedForm": None,
        "network": None,
        "agreement": {"duality": _agree(sup.value, best.error), "closedForm": None},
    }
    code = EXIT_OK
    try:
        fit = build_network(domain, f, spec.activation, spec.epsilon, m_values=m_values, best=best)
    except EpsilonUnreachable as exc:
        fit = exc.fit
        code = EXIT_EPSILON
        report["errors"] = [{"type": "EpsilonUnreachable", "message": str(exc)}]
    report["network"] = {
        **fit.network.to_json(),
        "networkError": fit.error,
        "gSupError": fit.g_fit.sup_error,
        "hSupError": fit.h_fit.sup_error,
        "shiftsPerDirection": fit.m,
        "epsilon": spec.epsilon,
        "withinBudget": fit.error <= best.error + spec.epsilon + 1e-9,
        "grid": "domain points",
    }
    return report, code


def cmd_enumerate_paths(spec: ProblemSpec, max_len: int, out):
    """One JSON line per closed path, largest |G_p| first."""
    domain = spec.domain()
    f = _fvals(spec, domain)
    partial = False
    try:
        paths = list(enumerate_closed_paths(domain, max_len))
    except CombinatorialBlowup as exc:
        paths = exc.partial
        partial = True
    rows = [(path_functional(cp, f), cp) for cp in paths]
    rows.sort(key=lambda r: (-abs(r[0]), r[1].pts, r[1].first_edge))
    for value, cp in rows:
        out.write(json.dumps({**cp.to_json(), "value": value}) + "\n")
    if partial:
        out.write(json.dumps({"partial": True, "reason": "enumeration cap reached"}) + "\n")
        return EXIT_BLOWUP
    return EXIT_OK


def cmd_verify(seed: int, trials: int):
    if trials < 1:
        raise ValueError("trials must be at least 1")
    summary = run_verify(seed, trials)
    return summary.to_json(), (EXIT_OK if summary.ok else EXIT_DISAGREE)


def _add_problem_flags(p):
    p.add_argument("--f", help="function of x1..xd, e.g. 'x1*x2'")
    p.add_argument("--a", type=_vector, help="first direction, e.g. '1,0'")
    p.add_argument("--b", type=_vector, help="second direction, e.g. '0,1'")
    p.add_argument("--points", metavar="FILE", help="JSON problem file or list of points")
    p.add_argument("--box", nargs=4, type=float, metavar=("C1", "D1", "C2", "D2"))
    p.add_argument("--grid", type=int, metavar="M")
    p.add_argument("--tol", type=float, help="level grouping tolerance")
    p.add_argument("--output", metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ridgegap",
        description="Uniform approximation error of two-weight shallow networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("error", help="path supremum vs best ridge approximation")
    _add_problem_flags(p)
    p.add_argument("--quad-order", type=int)
    p.add_argument("--refine", type=_ints, metavar="M1,M2,...", help="grid sizes for a refinement sweep")
    p.add_argument("--csv", metavar="FILE", help="write (m, lowerBound, bestRidge) rows")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")

    p = sub.add_parser("fit-network", help="construct a network within E + epsilon")
    _add_problem_flags(p)
    p.add_argument("--activation")
    p.add_argument("--epsilon", type=float)

    p = sub.add_parser("enumerate-paths", help="list closed paths with their functional")
    _add_problem_flags(p)
    p.add_argument("--max-len", type=int, default=None)

    p = sub.add_parser("verify", help="run the randomized self-check suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--output", metavar="FILE")
    return parser


def _emit(obj, path):
    text = json.dumps(obj, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error_object(exc):
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return _dispatch(args)
    except CommandError as exc:
        if exc.report is not None:
            _emit(exc.report, getattr(args, "output", None))
        sys.stderr.write(json.dumps(_error_object(exc.exc)) + "\n")
        return exc.code
    except _INPUT_ERRORS as exc:
        sys.stderr.write(json.dumps(_error_object(exc)) + "\n")
        return EXIT_INPUT
    except (RidgeGapError, ArithmeticError) as exc:
        sys.stderr.write(json.dumps(_error_object(exc)) + "\n")
        return EXIT_COMPUTE


def _dispatch(args) -> int:
    if args.command == "verify":
        summary, code = cmd_verify(args.seed, args.trials)
        for name, suite in summary["suites"].items():
            status = "PASS" if suite["failed"] == 0 else "FAIL"
            sys.stderr.write(f"{status} {name}: {suite['passed']} passed, {suite['failed']} failed\n")
        _emit(summary, args.output)
        return code

    spec = spec_from_args(args)
    if args.command == "error":
        report, code = cmd_error(spec, refine=args.refine, jobs=args.jobs, timings=args.timings)
        if args.csv:
            rows = report.get("refinement") or [
                {"m": spec.grid, "lowerBound": report["lowerBound"]["value"], "bestRidge": report["bestRidge"]["error"]}
            ]
            with open(args.csv, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["m", "lowerBound", "bestRidge"])
                for row in rows:
                    w.writerow([row["m"], repr(row["lowerBound"]), repr(row["bestRidge"])])
        _emit(report, args.output)
        return code
    if args.command == "fit-network":
        report, code = cmd_fit_network(spec)
        _emit(report, args.output)
        return code
    if args.command == "enumerate-paths":
        max_len = args.max_len if args.max_len is not None else spec.max_len
        if args.output:
            with open(args.output, "w") as fh:
                return cmd_enumerate_paths(spec, max_len, fh)
        return cmd_enumerate_paths(spec, max_len, sys.stdout)
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
