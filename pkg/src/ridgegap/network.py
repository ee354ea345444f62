"""Shallow networks with two fixed weights and their explicit construction.

A network ``sum_i c_i sigma(w_i . x - theta_i)`` with every ``w_i`` equal to
``a`` or ``b`` is a sum ``G(a.x) + H(b.x)``. Starting from a best ridge
approximation ``g0(a.x) + h0(b.x)``, each univariate table is fitted by a
combination of shifted activations, and the two fits are concatenated.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    EpsilonUnreachable,
    IllConditioned,
    MeanPeriodicActivation,
    UnknownActivation,
    UnknownMeanPeriodicity,
)
from .geometry import DirectionPair, SampledDomain
from .ridge import BestApprox, best_ridge_linf
from .simplex import chebyshev_fit

__all__ = [
    "Activation",
    "ACTIVATIONS",
    "get_activation",
    "ShallowNetwork",
    "FitConfig",
    "UnivariateFit",
    "NetworkFit",
    "projection_interval",
    "fit_univariate_shifts",
    "assemble_network",
    "network_error",
    "build_network",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Activation:
    name: str
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    # why the shift span is dense: "integrable", "bounded-with-limit" or "unknown"
    reason: str

    def __call__(self, t):
        return self.fn(np.asarray(t, dtype=float))


def _sigmoid(t):
    return 0.5 * (1.0 + np.tanh(0.5 * t))


ACTIVATIONS = {
    "sigmoid": Activation("sigmoid", _sigmoid, "bounded-with-limit"),
    "tanh": Activation("tanh", np.tanh, "bounded-with-limit"),
    "gaussian": Activation("gaussian", lambda t: np.exp(-t * t), "integrable"),
    "relu": Activation("relu", lambda t: np.maximum(t, 0.0), "unknown"),
}

# shifts of these span a finite-dimensional (hence non-dense) space
_MEAN_PERIODIC = {
    "polynomial": "polynomials are mean periodic: shifts of a degree-k polynomial "
    "span only polynomials of degree <= k, which are not dense in C(R)",
    "linear": "t -> t is mean periodic: its shifts span only affine functions",
    "identity": "t -> t is mean periodic: its shifts span only affine functions",
    "sin": "sin is mean periodic: its shifts span the two-dimensional space {sin, cos}",
    "cos": "cos is mean periodic: its shifts span the two-dimensional space {sin, cos}",
    "exp": "exp is mean periodic: all its shifts are multiples of exp",
}


def get_activation(name: str, warn: bool = True) -> Activation:
    """Look up a registered activation.

    Known mean-periodic choices raise :class:`MeanPeriodicActivation`.
    Activations without a density guarantee are returned with an
    :class:`UnknownMeanPeriodicity` warning.
    """
    key = name.lower()
    if key in _MEAN_PERIODIC:
        raise MeanPeriodicActivation(f"activation {name!r} rejected: {_MEAN_PERIODIC[key]}")
    try:
        act = ACTIVATIONS[key]
    except KeyError:
        raise UnknownActivation(f"unknown activation {name!r}; choose from {sorted(ACTIVATIONS)}") from None
    if warn and act.reason == "unknown":
        warnings.warn(
            f"activation {name!r} is not covered by the integrable or "
            "bounded-with-limit criteria; density of its shifts is not guaranteed",
            UnknownMeanPeriodicity,
            stacklevel=2,
        )
    return act


@dataclass(frozen=True)
class ShallowNetwork:
    """Terms ``(c, w, theta)`` with ``w`` either ``"A"`` or ``"B"``."""

    sigma: str
    terms: tuple[tuple[float, str, float], ...] = ()

    def __len__(self):
        return len(self.terms)

    def evaluate(self, x, dirs: DirectionPair) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        act = get_activation(self.sigma, warn=False)
        out = np.zeros(x.shape[0])
        pa, pb = x @ dirs.a, x @ dirs.b
        for c, w, theta in self.terms:
            out += c * act((pa if w == "A" else pb) - theta)
        return out

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma,
            "terms": [{"c": float(c), "w": w, "theta": float(t)} for c, w, t in self.terms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ShallowNetwork":
        return cls(obj["sigma"], tuple((float(t["c"]), t["w"], float(t["theta"])) for t in obj["terms"]))


@dataclass(frozen=True)
class FitConfig:
    m: int
    interval: tuple[float, float]
    theta_range: tuple[float, float] | None = None
    solver: str = "minimax"

    def __post_init__(self):
        lo, hi = self.interval
        if not lo < hi:
            raise ValueError("interval needs lo < hi")
        if self.m < 1:
            raise ValueError("need at least one shift")
        if self.solver not in ("minimax", "least-squares"):
            raise ValueError(f"unknown solver {self.solver!r}")

    def thetas(self) -> np.ndarray:
        lo, hi = self.theta_range if self.theta_range is not None else self.default_theta_range()
        if self.m == 1:
            return np.array([0.5 * (lo + hi)])
        return np.linspace(lo, hi, self.m)

    def default_theta_range(self) -> tuple[float, float]:
        # four interval widths, centred, so transitions can sit past both ends
        lo, hi = self.interval
        mid, width = 0.5 * (lo + hi), hi - lo
        return (mid - 2 * width, mid + 2 * width)


@dataclass(frozen=True)
class UnivariateFit:
    coef: np.ndarray
    thetas: np.ndarray
    sup_error: float
    solver: str

    def __call__(self, t, act: Activation) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return act(t[..., None] - self.thetas) @ self.coef


def projection_interval(domain: SampledDomain, margin: float = 0.0) -> tuple[float, float]:
    """Smallest interval holding every a- and b-projection, widened by ``margin``."""
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    proj = np.concatenate([domain.a_projection(), domain.b_projection()])
    return float(proj.min() - margin), float(proj.max() + margin)


def fit_univariate_shifts(t, target, act: Activation, cfg: FitConfig) -> UnivariateFit:
    """Fit ``target(t_k)`` by ``sum_j c_j sigma(t_k - theta_j)``.

    ``sup_error`` is the largest deviation over the nodes ``t``.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(target, dtype=float)
    lo, hi = cfg.interval
    if t.size and (t.min() < lo - 1e-12 or t.max() > hi + 1e-12):
        raise ValueError("fit nodes must lie inside the configured interval")
    thetas = cfg.thetas()
    design = act(t[:, None] - thetas[None, :])
    solver = cfg.solver
    if solver == "least-squares":
        coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
        if rank < min(design.shape):
            warnings.warn(
                f"least-squares design has rank {rank} < {min(design.shape)}; using minimax",
                IllConditioned,
                stacklevel=2,
            )
            solver = "minimax"
    if solver == "minimax":
        coef = chebyshev_fit(design, y).coef
    err = float(np.abs(y - design @ coef).max()) if t.size else 0.0
    return UnivariateFit(np.asarray(coef, dtype=float), thetas, err, solver)


def assemble_network(g_fit: UnivariateFit | None, h_fit: UnivariateFit | None, sigma: str) -> ShallowNetwork:
    """Concatenate the a-direction and b-direction terms."""
    terms = []
    for tag, fit in (("A", g_fit), ("B", h_fit)):
        if fit is None:
            continue
        terms.extend((float(c), tag, float(th)) for c, th in zip(fit.coef, fit.thetas))
    return ShallowNetwork(sigma, tuple(terms))


def network_error(net: ShallowNetwork, domain: SampledDomain, fvals) -> float:
    """``max |f - net|`` over the domain points."""
    f = np.asarray(fvals, dtype=float)
    if f.size == 0:
        return 0.0
    return float(np.abs(f - net.evaluate(domain.points, domain.dirs)).max())


@dataclass(frozen=True)
class NetworkFit:
    network: ShallowNetwork
    best: BestApprox
    g_fit: UnivariateFit
    h_fit: UnivariateFit
    error: float
    m: int
    reached: bool


def build_network(
    domain: SampledDomain,
    fvals,
    sigma: str,
    epsilon: float,
    m_values=(2, 4, 8, 12, 16, 24, 32, 48, 64),
    margin: float = 0.0,
    solver: str = "minimax",
    best: BestApprox | None = None,
) -> NetworkFit:
    """Network within ``best.error + epsilon`` of ``f`` on the domain.

    Each univariate table gets half the budget. The number of shifts is
    increased through ``m_values`` until both fits are within ``epsilon / 2``;
    if none makes it, :class:`EpsilonUnreachable` is raised with the attempt
    of smallest network error attached as ``exc.fit``.

    The weights are fixed to ``a`` and ``b``, so the activation's slope on the
    projection interval is set by their length. Tight budgets on short
    directions can be out of reach numerically; scaling ``a`` and ``b`` up
    leaves the ridge space unchanged and sharpens the shifts.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    act = get_activation(sigma)
    f = np.asarray(fvals, dtype=float)
    if best is None:
        best = best_ridge_linf(domain, f)
    lo, hi = projection_interval(domain, margin)
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    budget = 0.5 * epsilon

    attempt = None
    for m in m_values:
        cfg = FitConfig(m=m, interval=(lo, hi), solver=solver)
        g_fit = fit_univariate_shifts(domain.a_values, best.v0.g_table, act, cfg)
        h_fit = fit_univariate_shifts(domain.b_values, best.v0.h_table, act, cfg)
        net = assemble_network(g_fit, h_fit, act.name)
        err = network_error(net, domain, f)
        if attempt is None or err < attempt.error:
            attempt = NetworkFit(net, best, g_fit, h_fit, err, m, False)
        log.debug("m=%d: g %.3g, h %.3g, network %.3g", m, g_fit.sup_error, h_fit.sup_error, err)
        if g_fit.sup_error <= budget and h_fit.sup_error <= budget:
            return NetworkFit(net, best, g_fit, h_fit, err, m, True)
    exc = EpsilonUnreachable(
        f"univariate fits did not reach {budget:.3g} with up to {m_values[-1]} shifts "
        f"(g {attempt.g_fit.sup_error:.3g}, h {attempt.h_fit.sup_error:.3g})"
    )
    exc.fit = attempt
    raise exc
