"""Acceptance criteria 1-8.

Each test records a one-line detail; the terminal summary prints one
PASS/FAIL line per criterion (see ``conftest.py``).
"""

import json
import time

import numpy as np
import pytest

from ridgegap.cli import cmd_error
from ridgegap.closed_form import (
    SmoothFunction2D,
    check_curvature_condition,
    closed_form_report,
    transformed_function,
)
from ridgegap.errors import DomainError
from ridgegap.expr import differentiate, evaluate, parse, to_string
from ridgegap.extremal import enumerate_closed_paths, sup_closed_path
from ridgegap.geometry import BoxDomainSpec, DirectionPair, sample_box
from ridgegap.network import UnivariateFit, assemble_network, build_network
from ridgegap.paths import path_functional
from ridgegap.problem import ProblemSpec
from ridgegap.random_instances import (
    random_expr,
    random_instance,
    random_ridge_pair,
    random_small_instance,
)
from ridgegap.ridge import best_ridge_linf, ridge_values

from oracles import central_difference_check

AXES = DirectionPair([1, 0], [0, 1])
ROT = DirectionPair([1, 1], [1, -1])


def _xy_spec(m):
    return ProblemSpec(a=(1.0, 0.0), b=(0.0, 1.0), box=(0.0, 1.0, 0.0, 1.0), grid=m, f="x1*x2")


@pytest.mark.criterion(1, "duality at desk scale")
def test_criterion_1_duality(record_property):
    rng = np.random.default_rng(1001)
    t0 = time.perf_counter()
    worst, with_path, without = 0.0, 0, 0
    worst_free = 0.0
    for _ in range(200):
        inst = random_instance(rng)
        sup = sup_closed_path(inst.domain, inst.fvals)
        best = best_ridge_linf(inst.domain, inst.fvals)
        if sup.witness is None:
            without += 1
            worst_free = max(worst_free, best.error)
        else:
            with_path += 1
            worst = max(worst, abs(sup.value - best.error))
    elapsed = time.perf_counter() - t0
    record_property(
        "detail",
        f"max gap {worst:.2e} over {with_path} instances, max error {worst_free:.2e} "
        f"over {without} without closed paths, {elapsed:.1f} s",
    )
    assert worst <= 1e-7
    assert worst_free <= 1e-9
    assert with_path > 0 and without > 0
    assert elapsed < 60


@pytest.mark.criterion(2, "path functionals bounded by the LP error")
def test_criterion_2_soundness(record_property):
    rng = np.random.default_rng(1002)
    worst_excess, worst_match, n_paths = -np.inf, 0.0, 0
    for _ in range(50):
        inst = random_small_instance(rng, max_points=10, max_levels=4, max_b_levels=3)
        err = best_ridge_linf(inst.domain, inst.fvals).error
        values = [abs(path_functional(cp, inst.fvals)) for cp in enumerate_closed_paths(inst.domain, 8)]
        n_paths += len(values)
        top = max(values, default=0.0)
        worst_excess = max(worst_excess, top - err)
        worst_match = max(worst_match, abs(top - sup_closed_path(inst.domain, inst.fvals).value))
    record_property(
        "detail",
        f"{n_paths} paths, max |G_p| - LP {worst_excess:.2e}, enumeration vs cycle mean {worst_match:.2e}",
    )
    assert worst_excess <= 1e-8
    assert worst_match <= 1e-9


@pytest.mark.criterion(3, "x1*x2 on the unit square")
def test_criterion_3_worked_example(record_property):
    t0 = time.perf_counter()
    devs = []
    for m in (2, 9, 17, 33):
        rep, code = cmd_error(_xy_spec(m))
        cf = rep["closedForm"]
        devs.append(
            max(
                abs(rep["lowerBound"]["value"] - 0.25),
                abs(rep["bestRidge"]["error"] - 0.25),
                abs(cf["cornerValue"] - 0.25),
            )
        )
        assert code == 0
        assert abs(cf["integral"] - 1.0) <= 1e-8
        assert abs(cf["integral"] - 4 * cf["cornerValue"]) <= 1e-8
        assert "1/4" in cf["note"]
    elapsed = time.perf_counter() - t0
    record_property("detail", f"max deviation from 1/4 {max(devs):.2e}, integral 1.0, {elapsed:.2f} s")
    assert max(devs) <= 1e-9
    assert elapsed < 5


@pytest.mark.criterion(4, "rotated example x1^2 - x2^2")
def test_criterion_4_rotated(record_property):
    t0 = time.perf_counter()
    f = SmoothFunction2D.from_text("x1^2 - x2^2")
    spec = BoxDomainSpec(0, 1, 0, 1, ROT)
    margin = check_curvature_condition(f, ROT, spec).margin
    g = transformed_function(f, ROT)
    y = np.random.default_rng(1004).uniform(-1, 2, (50, 2))
    g_dev = np.abs(g(y[:, 0], y[:, 1]) - y[:, 0] * y[:, 1]).max()
    cf = closed_form_report(f, spec)
    routes = []
    for m in (9, 17):
        dom = sample_box(spec, m)
        fv = f(dom.points)
        routes += [sup_closed_path(dom, fv).value, best_ridge_linf(dom, fv).error]
    routes.append(cf.corner_value)
    spread = max(abs(r - 0.25) for r in routes)
    elapsed = time.perf_counter() - t0
    record_property("detail", f"margin {margin:.12g}, g - y1*y2 {g_dev:.1e}, routes within {spread:.1e}, {elapsed:.2f} s")
    assert margin == pytest.approx(4.0, abs=1e-12)
    assert g_dev <= 1e-12
    assert spread <= 1e-7
    assert elapsed < 5


@pytest.mark.criterion(5, "annihilation of ridge sums and networks")
def test_criterion_5_annihilation(record_property):
    rng = np.random.default_rng(1005)
    worst_ridge = worst_net = 0.0
    for _ in range(100):
        dom = random_instance(rng).domain
        worst_ridge = max(worst_ridge, sup_closed_path(dom, ridge_values(random_ridge_pair(rng, dom), dom)).value)
    for _ in range(100):
        dom = random_instance(rng).domain
        fits = [
            UnivariateFit(rng.normal(size=k), rng.uniform(-2, 2, k), 0.0, "minimax")
            for k in rng.integers(1, 8, size=2)
        ]
        net = assemble_network(*fits, str(rng.choice(["sigmoid", "tanh", "gaussian"])))
        worst_net = max(worst_net, sup_closed_path(dom, net.evaluate(dom.points, dom.dirs)).value)
    record_property("detail", f"max sup over ridge pairs {worst_ridge:.1e}, over networks {worst_net:.1e}")
    assert worst_ridge <= 1e-8
    assert worst_net <= 1e-8


@pytest.mark.criterion(6, "constructive upper bound")
@pytest.mark.parametrize("sigma", ["sigmoid", "tanh", "gaussian"])
def test_criterion_6_network(sigma, record_property):
    t0 = time.perf_counter()
    errs = []
    for m in (9, 17):
        dom = sample_box(BoxDomainSpec(0, 1, 0, 1, AXES), m)
        fit = build_network(dom, dom.points[:, 0] * dom.points[:, 1], sigma, 0.05)
        errs.append(fit.error)
    elapsed = time.perf_counter() - t0
    record_property("detail", f"grid errors {', '.join(f'{e:.4f}' for e in errs)}, {elapsed:.1f} s")
    assert max(errs) <= 0.25 + 0.05
    assert elapsed < 30


@pytest.mark.criterion(7, "parser and differentiator")
def test_criterion_7_expressions(record_property):
    rng = np.random.default_rng(1007)
    tested = skipped = fails = 0
    while tested < 500:
        e = random_expr(rng)
        s = to_string(e)
        assert parse(s, 2) == e and to_string(parse(s, 2)) == s
        derivs = [differentiate(e, 1), differentiate(e, 2)]
        for _ in range(10):
            x = rng.uniform(-2, 2, 2)
            try:
                checks = [central_difference_check(e, x, k + 1, evaluate, d) for k, d in enumerate(derivs)]
            except DomainError:
                checks = [None]
            if all(c is not None for c in checks):
                break
            skipped += 1
        else:
            continue
        tested += 1
        fails += sum(not c[0] for c in checks)
    record_property("detail", f"{tested} expressions, {fails} derivative mismatches, {skipped} near-singular points skipped")
    assert fails == 0


@pytest.mark.criterion(8, "deterministic reports")
def test_criterion_8_determinism(record_property):
    first = json.dumps(cmd_error(_xy_spec(9))[0], indent=2).encode()
    second = json.dumps(cmd_error(_xy_spec(9))[0], indent=2).encode()
    record_property("detail", f"{len(first)} bytes, identical: {first == second}")
    assert first == second
