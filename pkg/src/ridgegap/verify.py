"""Randomized self-check suites behind ``ridgegap verify``.

Each suite draws seeded random problems and checks one identity:

duality       sup over closed paths of |G_p(f)| equals the best ridge error
annihilation  ridge sums and two-weight networks have zero path supremum
sandwich      path supremum <= best ridge error <= error of any network
fubini        quadrature of g_y1y2 over K equals the corner sum
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .closed_form import SmoothFunction2D, _corner_sum, mixed_partial_integral, transformed_function
from .errors import DomainError
from .expr import to_string
from .extremal import sup_closed_path
from .geometry import BoxDomainSpec
from .network import network_error
from .paths import path_functional
from .random_instances import (
    random_directions,
    random_instance,
    random_network,
    random_ridge_pair,
    random_smooth_expr,
)
from .ridge import best_ridge_linf, ridge_values

__all__ = ["SuiteResult", "VerifySummary", "run_verify", "SUITES"]

log = logging.getLogger(__name__)

DUALITY_TOL = 1e-7
WITNESS_TOL = 1e-9
ANNIHILATION_TOL = 1e-8
SANDWICH_TOL = 1e-8
FUBINI_TOL = 1e-8


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failed": self.failed,
            "counterexample": self.counterexample,
        }


@dataclass
class VerifySummary:
    seed: int
    trials: int
    suites: dict[str, SuiteResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(s.failed == 0 for s in self.suites.values())

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "ok": self.ok,
            "suites": {k: v.to_json() for k, v in self.suites.items()},
        }


def _duality_failure(domain, f):
    """Description of what goes wrong on (domain, f), or None."""
    sup = sup_closed_path(domain, f)
    best = best_ridge_linf(domain, f)
    if sup.witness is None:
        if best.error > DUALITY_TOL:
            return f"no closed path but best ridge error {best.error:.3e}"
        return None
    gap = abs(sup.value - best.error)
    if gap > DUALITY_TOL:
        return f"path supremum {sup.value:.12g} != best ridge error {best.error:.12g}"
    g = path_functional(sup.witness, f)
    if abs(abs(g) - sup.value) > WITNESS_TOL or g < 0:
        return f"witness functional {g:.12g} does not reproduce {sup.value:.12g}"
    return None


def _shrink(domain, f, still_fails):
    """Greedily drop points while ``still_fails`` keeps returning a reason."""
    keep = list(range(len(domain)))
    changed = True
    while changed and len(keep) > 1:
        changed = False
        for i in list(keep):
            trial = [k for k in keep if k != i]
            sub = domain.subset(trial)
            if still_fails(sub, f[trial]):
                keep = trial
                changed = True
    sub = domain.subset(keep)
    return sub, f[keep]


def _dump(domain, f, reason):
    return {
        "reason": reason,
        "a": domain.dirs.a.tolist(),
        "b": domain.dirs.b.tolist(),
        "points": domain.points.tolist(),
        "f": np.asarray(f).tolist(),
    }


def suite_duality(rng, trials):
    res = SuiteResult("duality")
    for _ in range(trials):
        inst = random_instance(rng)
        reason = _duality_failure(inst.domain, inst.fvals)
        if reason is None:
            res.passed += 1
            continue
        res.failed += 1
        if res.counterexample is None:
            dom, f = _shrink(inst.domain, inst.fvals, _duality_failure)
            res.counterexample = _dump(dom, f, _duality_failure(dom, f) or reason)
    return res


def suite_annihilation(rng, trials):
    res = SuiteResult("annihilation")
    for _ in range(trials):
        inst = random_instance(rng)
        dom = inst.domain
        cases = [
            ("ridge pair", ridge_values(random_ridge_pair(rng, dom), dom)),
            ("network", random_network(rng).evaluate(dom.points, dom.dirs)),
        ]
        bad = None
        for label, vals in cases:
            sup = sup_closed_path(dom, vals).value
            if sup > ANNIHILATION_TOL:
                bad = (label, vals, sup)
                break
        if bad is None:
            res.passed += 1
        else:
            res.failed += 1
            if res.counterexample is None:
                res.counterexample = _dump(dom, bad[1], f"{bad[0]} has path supremum {bad[2]:.3e}")
    return res


def suite_sandwich(rng, trials):
    res = SuiteResult("sandwich")
    for _ in range(trials):
        inst = random_instance(rng)
        dom, f = inst.domain, inst.fvals
        sup = sup_closed_path(dom, f).value
        best = best_ridge_linf(dom, f).error
        net = random_network(rng, sigma=str(rng.choice(["sigmoid", "tanh", "gaussian"])))
        upper = network_error(net, dom, f)
        if sup - SANDWICH_TOL <= best <= upper + SANDWICH_TOL:
            res.passed += 1
        else:
            res.failed += 1
            if res.counterexample is None:
                res.counterexample = _dump(
                    dom, f, f"sup {sup:.12g}, best {best:.12g}, network {upper:.12g}"
                )
                res.counterexample["network"] = net.to_json()
    return res


def suite_fubini(rng, trials):
    res = SuiteResult("fubini")
    done = 0
    while done < trials:
        e = random_smooth_expr(rng)
        dirs = random_directions(rng)
        c1, c2 = rng.uniform(-1, 1, 2)
        d1, d2 = c1 + rng.uniform(0.2, 1.5), c2 + rng.uniform(0.2, 1.5)
        spec = BoxDomainSpec(c1, d1, c2, d2, dirs)
        try:
            g = transformed_function(SmoothFunction2D.from_expr(e), dirs)
            corner = _corner_sum(g, spec.bounds)
            integral = mixed_partial_integral(g, spec.bounds, n=48)
        except DomainError:
            continue
        if not (np.isfinite(corner) and abs(corner) < 1e6):
            continue
        done += 1
        if abs(integral - corner) <= FUBINI_TOL * max(1.0, abs(corner)):
            res.passed += 1
        else:
            res.failed += 1
            if res.counterexample is None:
                res.counterexample = {
                    "reason": f"integral {integral:.12g} != corner sum {corner:.12g}",
                    "f": to_string(e),
                    "a": dirs.a.tolist(),
                    "b": dirs.b.tolist(),
                    "box": [c1, d1, c2, d2],
                }
    return res


SUITES = {
    "duality": suite_duality,
    "annihilation": suite_annihilation,
    "sandwich": suite_sandwich,
    "fubini": suite_fubini,
}


def run_verify(seed: int, trials: int, suites=None) -> VerifySummary:
    """Run every suite (or the named ones) ``trials`` times from one seed."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    summary = VerifySummary(seed, trials)
    order = list(SUITES)
    for name in suites or order:
        # one independent stream per suite so suites can be run selectively
        rng = np.random.default_rng([seed, order.index(name)])
        summary.suites[name] = SUITES[name](rng, trials)
        log.info("%s: %d passed, %d failed", name, summary.suites[name].passed, summary.suites[name].failed)
    return summary
