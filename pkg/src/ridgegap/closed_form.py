"""Closed-form error for smooth functions on a parallelogram domain.

For a planar box domain ``Q = {c1 <= a.x <= d1, c2 <= b.x <= d2}`` the
substitution ``y1 = a.x, y2 = b.x`` turns ``f`` into ``g(y1, y2)`` on the
rectangle ``K = [c1, d1] x [c2, d2]`` and closed paths into closed bolts.
When ``g_y1y2 >= 0`` on ``K`` the best uniform approximation of ``g`` by
``g1(y1) + g2(y2)`` has error

    (g(d1, d2) - g(d1, c2) - g(c1, d2) + g(c1, c2)) / 4,

a quarter of the integral of ``g_y1y2`` over ``K``.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .errors import CurvatureViolated
from .expr import Expr, differentiate, evaluate, parse
from .geometry import BoxDomainSpec, DirectionPair, _check_independent, inverse_transform, sample_box

__all__ = [
    "SmoothFunction2D",
    "TransformedFunction",
    "CurvatureCheck",
    "ClosedFormReport",
    "CORNER_NOTE",
    "check_curvature_condition",
    "transformed_function",
    "corner_formula_error",
    "mixed_partial_integral",
    "closed_form_report",
]

CORNER_NOTE = (
    "error = (1/4) * [g(d1,d2) - g(d1,c2) - g(c1,d2) + g(c1,c2)] "
    "= (1/4) * integral of g_y1y2 over K; the unscaled integral equals the "
    "corner sum and is 4 times the uniform error (for g = y1*y2 on [0,1]^2 "
    "the integral is 1 while the error is 1/4)."
)


@dataclass(frozen=True)
class SmoothFunction2D:
    """``f(x1, x2)`` with its symbolic second partials."""

    expr: Expr
    d11: Expr
    d12: Expr
    d22: Expr

    @classmethod
    def from_expr(cls, e: Expr) -> "SmoothFunction2D":
        d1, d2 = differentiate(e, 1), differentiate(e, 2)
        return cls(e, differentiate(d1, 1), differentiate(d1, 2), differentiate(d2, 2))

    @classmethod
    def from_text(cls, src: str) -> "SmoothFunction2D":
        return cls.from_expr(parse(src, 2))

    def __call__(self, x):
        return evaluate(self.expr, x)

    def hessian(self, x):
        return evaluate(self.d11, x), evaluate(self.d12, x), evaluate(self.d22, x)


@dataclass(frozen=True)
class CurvatureCheck:
    ok: bool
    margin: float
    worst_point: tuple[float, float]

    def __bool__(self):
        return self.ok


def check_curvature_condition(
    f: SmoothFunction2D, dirs: DirectionPair, spec: BoxDomainSpec, m: int = 65
) -> CurvatureCheck:
    """Sample ``f_12 (a1 b2 + a2 b1) - f_11 a2 b2 - f_22 a1 b1 >= 0`` on ``Q``.

    The check is on an ``m x m`` grid only; ``margin`` is the smallest value
    seen and ``ok`` means ``margin >= -1e-9``.
    """
    _check_independent(dirs)
    grid = sample_box(BoxDomainSpec(spec.c1, spec.d1, spec.c2, spec.d2, dirs), m)
    (a1, a2), (b1, b2) = dirs.a, dirs.b
    f11, f12, f22 = f.hessian(grid.points)
    expr = f12 * (a1 * b2 + a2 * b1) - f11 * a2 * b2 - f22 * a1 * b1
    k = int(np.argmin(expr))
    margin = float(expr[k])
    return CurvatureCheck(margin >= -1e-9, margin, tuple(grid.points[k].tolist()))


class TransformedFunction:
    """``g(y) = f(x(y))`` where ``x(y)`` inverts ``y1 = a.x, y2 = b.x``."""

    def __init__(self, f: SmoothFunction2D, dirs: DirectionPair):
        det = _check_independent(dirs)
        self.f = f
        self.dirs = dirs
        (a1, a2), (b1, b2) = dirs.a, dirs.b
        # columns are dx/dy1 and dx/dy2
        self._jac = np.array([[b2, -a2], [-b1, a1]]) / det

    def _x(self, y1, y2):
        y = np.stack(np.broadcast_arrays(np.asarray(y1, float), np.asarray(y2, float)), axis=-1)
        return inverse_transform(y.reshape(-1, 2), self.dirs).reshape(y.shape)

    def __call__(self, y1, y2):
        out = evaluate(self.f.expr, self._x(y1, y2))
        return float(out) if np.ndim(out) == 0 else out

    def mixed_partial(self, y1, y2):
        """``d2g / dy1 dy2`` by the chain rule."""
        f11, f12, f22 = self.f.hessian(self._x(y1, y2))
        (m11, m12), (m21, m22) = self._jac
        out = f11 * m11 * m12 + f12 * (m11 * m22 + m21 * m12) + f22 * m21 * m22
        return float(out) if np.ndim(out) == 0 else out


def transformed_function(f: SmoothFunction2D, dirs: DirectionPair) -> TransformedFunction:
    return TransformedFunction(f, dirs)


def _corner_sum(g, bounds) -> float:
    c1, d1, c2, d2 = bounds
    return float(g(d1, d2) - g(d1, c2) - g(c1, d2) + g(c1, c2))


def corner_formula_error(g, bounds, curvature_ok: bool | None = None, m: int = 33) -> float:
    """Uniform error of ``g`` from ``g1(y1) + g2(y2)`` on ``K`` via its corners.

    Only certified when ``g_y1y2 >= 0`` on ``K``. If ``curvature_ok`` is not
    given and ``g`` has a ``mixed_partial`` method, the sign is sampled on an
    ``m x m`` grid; a violation issues :class:`CurvatureViolated` but the
    value is still returned.
    """
    c1, d1, c2, d2 = bounds
    if curvature_ok is None and hasattr(g, "mixed_partial"):
        Y1, Y2 = np.meshgrid(np.linspace(c1, d1, m), np.linspace(c2, d2, m), indexing="ij")
        curvature_ok = bool(np.min(g.mixed_partial(Y1, Y2)) >= -1e-9)
    if curvature_ok is False:
        warnings.warn(
            "g_y1y2 changes sign on K; the corner value is not a certified error",
            CurvatureViolated,
            stacklevel=2,
        )
    return 0.25 * _corner_sum(g, bounds)


def mixed_partial_integral(g, bounds, n: int = 32) -> float:
    """Integral of ``g_y1y2`` over ``K`` by an ``n x n`` Gauss-Legendre rule.

    ``g`` is either an object with ``mixed_partial`` or a callable returning
    the mixed partial itself.
    """
    if n < 2:
        raise ValueError("quadrature order must be at least 2")
    c1, d1, c2, d2 = bounds
    t, wt = np.polynomial.legendre.leggauss(n)
    y1 = 0.5 * (d1 - c1) * t + 0.5 * (d1 + c1)
    y2 = 0.5 * (d2 - c2) * t + 0.5 * (d2 + c2)
    Y1, Y2 = np.meshgrid(y1, y2, indexing="ij")
    integrand = g.mixed_partial if hasattr(g, "mixed_partial") else g
    vals = np.asarray(integrand(Y1, Y2), dtype=float) * np.ones_like(Y1)
    scale = 0.25 * (d1 - c1) * (d2 - c2)
    return float(scale * (wt @ vals @ wt))


@dataclass(frozen=True)
class ClosedFormReport:
    in_class: bool
    class_margin: float
    curvature_ok: bool
    curvature_margin: float
    corner_value: float
    integral: float
    quadrature_value: float
    error_estimate: float | None
    note: str = CORNER_NOTE

    def to_json(self) -> dict:
        return {
            "inClass": self.in_class,
            "classMargin": self.class_margin,
            "curvatureOk": self.curvature_ok,
            "curvatureMargin": self.curvature_margin,
            "cornerValue": self.corner_value,
            "integral": self.integral,
            "quadratureValue": self.quadrature_value,
            "errorEstimate": self.error_estimate,
            "note": self.note,
        }

    def as_dict(self) -> dict:
        return asdict(self)


def closed_form_report(
    f: SmoothFunction2D, spec: BoxDomainSpec, m: int = 65, n: int = 32
) -> ClosedFormReport:
    """Class check, curvature check, corner value and quadrature in one go.

    ``quadrature_value`` is a quarter of the integral so it is directly
    comparable to ``corner_value``; ``integral`` keeps the raw number.
    """
    dirs = spec.dirs
    cls = check_curvature_condition(f, dirs, spec, m)
    g = transformed_function(f, dirs)
    c1, d1, c2, d2 = spec.bounds
    Y1, Y2 = np.meshgrid(np.linspace(c1, d1, m), np.linspace(c2, d2, m), indexing="ij")
    curv_margin = float(np.min(g.mixed_partial(Y1, Y2)))
    curv_ok = curv_margin >= -1e-9
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CurvatureViolated)
        corner = corner_formula_error(g, spec.bounds, curvature_ok=curv_ok)
    integral = mixed_partial_integral(g, spec.bounds, n)
    return ClosedFormReport(
        in_class=cls.ok,
        class_margin=cls.margin,
        curvature_ok=curv_ok,
        curvature_margin=curv_margin,
        corner_value=corner,
        integral=integral,
        quadrature_value=0.25 * integral,
        error_estimate=corner if curv_ok else None,
    )
