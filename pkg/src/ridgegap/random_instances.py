"""Seeded random problem generators for the self-check suites and tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .expr import BinOp, Call, Const, Expr, Neg, Pow, Var
from .geometry import DirectionPair, SampledDomain, inverse_transform
from .network import ShallowNetwork
from .ridge import RidgePair

__all__ = [
    "Instance",
    "random_directions",
    "random_grid_instance",
    "random_scattered_instance",
    "random_instance",
    "random_small_instance",
    "random_ridge_pair",
    "random_network",
    "random_expr",
    "random_smooth_expr",
]


@dataclass(frozen=True)
class Instance:
    domain: SampledDomain
    fvals: np.ndarray
    kind: str


def random_directions(rng: np.random.Generator) -> DirectionPair:
    """Random planar directions, independent with a comfortable determinant."""
    while True:
        a, b = rng.normal(size=2), rng.normal(size=2)
        if abs(a[0] * b[1] - a[1] * b[0]) > 0.2 * np.linalg.norm(a) * np.linalg.norm(b):
            return DirectionPair(a, b)


def _from_y(rng, y, dirs=None):
    # build points in x-space whose projections are the given y-values
    if dirs is None:
        dirs = DirectionPair([1.0, 0.0], [0.0, 1.0]) if rng.random() < 0.3 else random_directions(rng)
    x = inverse_transform(np.asarray(y, dtype=float), dirs)
    return SampledDomain.from_points(x, dirs)


def random_grid_instance(rng: np.random.Generator, max_side: int = 12) -> Instance:
    """Random sub-grid (rows and columns at random heights, some cells dropped)."""
    m1, m2 = rng.integers(2, max_side + 1, size=2)
    y1 = np.sort(rng.uniform(-1, 1, m1))
    y2 = np.sort(rng.uniform(-1, 1, m2))
    Y = np.array([(u, v) for u in y1 for v in y2])
    keep = rng.random(len(Y)) < rng.uniform(0.5, 1.0)
    keep[rng.integers(len(Y))] = True
    dom = _from_y(rng, Y[keep])
    return Instance(dom, rng.uniform(-1, 1, len(dom)), "grid")


def random_scattered_instance(rng: np.random.Generator, max_points: int = 150) -> Instance:
    """Scattered points whose projections collide on a few shared values."""
    n = int(rng.integers(2, max_points + 1))
    k1 = int(rng.integers(1, max(2, n // 2) + 1))
    k2 = int(rng.integers(1, max(2, n // 2) + 1))
    v1, v2 = rng.uniform(-1, 1, k1), rng.uniform(-1, 1, k2)
    Y = np.unique(np.stack([rng.choice(v1, n), rng.choice(v2, n)], axis=1), axis=0)
    dom = _from_y(rng, Y)
    return Instance(dom, rng.uniform(-1, 1, len(dom)), "scattered")


def random_degenerate_instance(rng: np.random.Generator, max_points: int = 20) -> Instance:
    """Parallel directions in the plane: every a-level is also a b-level."""
    n = int(rng.integers(2, max_points + 1))
    a = rng.normal(size=2)
    dirs = DirectionPair(a, -2.0 * a)
    heights = rng.uniform(-1, 1, int(rng.integers(1, max(2, n // 2) + 1)))
    normal = np.array([-a[1], a[0]])
    along = a / np.dot(a, a)
    pts = np.unique(
        np.stack([h * along + s * normal for h, s in zip(rng.choice(heights, n), rng.uniform(-1, 1, n))]),
        axis=0,
    )
    dom = SampledDomain.from_points(pts, dirs)
    return Instance(dom, rng.uniform(-1, 1, len(dom)), "parallel")


def random_instance(rng: np.random.Generator) -> Instance:
    u = rng.random()
    if u < 0.45:
        return random_grid_instance(rng)
    if u < 0.9:
        return random_scattered_instance(rng)
    return random_degenerate_instance(rng)


def random_small_instance(
    rng: np.random.Generator, max_points: int = 10, max_levels: int = 4, max_b_levels: int | None = None
) -> Instance:
    """At most ``max_points`` points on at most ``max_levels`` a-levels.

    A closed path without repeated points alternates between a-levels, so it
    has at most ``2 * max_levels`` points; with ``max_levels = 4`` every
    extremal closed path has length <= 8.
    """
    # at least two levels each way whenever the caps allow a closed path
    k1 = int(rng.integers(min(2, max_levels), max_levels + 1))
    k2 = int(rng.integers(min(2, max_b_levels or max_points), (max_b_levels or max_points) + 1))
    v1, v2 = rng.uniform(-1, 1, k1), rng.uniform(-1, 1, k2)
    # distinct cells of the k1 x k2 level grid
    cells = rng.choice(k1 * k2, int(rng.integers(min(2, k1 * k2), min(max_points, k1 * k2) + 1)), replace=False)
    Y = np.stack([v1[cells // k2], v2[cells % k2]], axis=1)
    dom = _from_y(rng, Y)
    return Instance(dom, rng.uniform(-1, 1, len(dom)), "small")


def random_ridge_pair(rng: np.random.Generator, domain: SampledDomain) -> RidgePair:
    return RidgePair(rng.uniform(-1, 1, domain.n_a_levels), rng.uniform(-1, 1, domain.n_b_levels))


def random_network(rng: np.random.Generator, sigma: str = "sigmoid", max_terms: int = 12) -> ShallowNetwork:
    r = int(rng.integers(0, max_terms + 1))
    return ShallowNetwork(
        sigma,
        tuple(
            (float(rng.normal()), "A" if rng.random() < 0.5 else "B", float(rng.uniform(-2, 2)))
            for _ in range(r)
        ),
    )


_FUNCS = ("sin", "cos", "exp", "log", "tanh", "abs", "sqrt")


def random_expr(rng: np.random.Generator, depth: int = 4, dim: int = 2) -> Expr:
    """Random AST in parser normal form (no ``Neg`` directly over a constant)."""
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.6:
            return Var(int(rng.integers(1, dim + 1)))
        return Const(float(np.round(rng.uniform(-3, 3), 3)))
    kind = rng.choice(["bin", "bin", "pow", "call", "neg"])
    if kind == "bin":
        op = str(rng.choice(["+", "-", "*", "/"]))
        return BinOp(op, random_expr(rng, depth - 1, dim), random_expr(rng, depth - 1, dim))
    if kind == "pow":
        return Pow(random_expr(rng, depth - 1, dim), int(rng.integers(0, 4)))
    if kind == "call":
        return Call(str(rng.choice(_FUNCS)), random_expr(rng, depth - 1, dim))
    arg = random_expr(rng, depth - 1, dim)
    return Const(-arg.value) if isinstance(arg, Const) else Neg(arg)


def random_smooth_expr(rng: np.random.Generator, depth: int = 3) -> Expr:
    """Random everywhere-smooth planar expression of moderate size."""
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.7:
            return Var(int(rng.integers(1, 3)))
        return Const(float(np.round(rng.uniform(-2, 2), 2)))
    kind = rng.choice(["+", "-", "*", "pow", "call"])
    if kind == "pow":
        return Pow(random_smooth_expr(rng, depth - 1), int(rng.integers(1, 4)))
    if kind == "call":
        return Call(str(rng.choice(["sin", "cos", "tanh", "exp"])), random_smooth_expr(rng, depth - 1))
    return BinOp(str(kind), random_smooth_expr(rng, depth - 1), random_smooth_expr(rng, depth - 1))
