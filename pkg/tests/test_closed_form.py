import math
import warnings

import numpy as np
import pytest

from ridgegap.closed_form import (
    SmoothFunction2D,
    check_curvature_condition,
    closed_form_report,
    corner_formula_error,
    mixed_partial_integral,
    transformed_function,
)
from ridgegap.errors import CurvatureViolated, SingularDirections
from ridgegap.extremal import sup_closed_path
from ridgegap.geometry import BoxDomainSpec, DirectionPair, sample_box
from ridgegap.ridge import best_ridge_linf

ROT = DirectionPair([1, 1], [1, -1])


class TestCurvatureCondition:
    def test_xy_axes(self, axes):
        chk = check_curvature_condition(SmoothFunction2D.from_text("x1*x2"), axes, BoxDomainSpec(0, 1, 0, 1, axes))
        assert chk.ok and chk.margin == pytest.approx(1.0)

    def test_rotated_margin(self):
        f = SmoothFunction2D.from_text("x1^2 - x2^2")
        chk = check_curvature_condition(f, ROT, BoxDomainSpec(0, 1, 0, 1, ROT))
        assert chk.margin == pytest.approx(4.0)

    def test_violated(self, axes):
        chk = check_curvature_condition(SmoothFunction2D.from_text("-x1*x2"), axes, BoxDomainSpec(0, 1, 0, 1, axes))
        assert not chk


class TestTransformed:
    def test_rotated_is_product(self, rng):
        g = transformed_function(SmoothFunction2D.from_text("x1^2 - x2^2"), ROT)
        y = rng.uniform(-2, 2, (10, 2))
        np.testing.assert_allclose(g(y[:, 0], y[:, 1]), y[:, 0] * y[:, 1], atol=1e-12)
        np.testing.assert_allclose(g.mixed_partial(y[:, 0], y[:, 1]), 1.0, atol=1e-12)

    def test_mixed_partial_finite_difference(self, rng):
        dirs = DirectionPair([2.0, 0.5], [-0.3, 1.0])
        g = transformed_function(SmoothFunction2D.from_text("sin(x1)*exp(x2) + x1^3*x2"), dirs)
        h = 1e-4
        for y1, y2 in rng.uniform(-1, 1, (5, 2)):
            fd = (g(y1 + h, y2 + h) - g(y1 + h, y2 - h) - g(y1 - h, y2 + h) + g(y1 - h, y2 - h)) / (4 * h * h)
            assert g.mixed_partial(y1, y2) == pytest.approx(fd, rel=1e-5, abs=1e-6)

    def test_singular(self):
        with pytest.raises(SingularDirections):
            transformed_function(SmoothFunction2D.from_text("x1"), DirectionPair([1, 1], [2, 2]))


class TestCornerAndIntegral:
    def test_corner_of_product(self):
        # corners of [0,2]x[0,3]: 6/4
        assert corner_formula_error(lambda y1, y2: y1 * y2, (0, 2, 0, 3)) == pytest.approx(1.5)

    def test_corner_matches_lp_on_corners(self, axes):
        dom = sample_box(BoxDomainSpec(0, 2, 0, 3, axes), 2)
        f = dom.points[:, 0] * dom.points[:, 1]
        assert best_ridge_linf(dom, f).error == pytest.approx(1.5)

    def test_integral_of_cosine(self):
        # d2/dy1dy2 [sin(y1) y2] = cos(y1); integral over the unit square is sin(1)
        val = mixed_partial_integral(lambda y1, y2: np.cos(y1), (0, 1, 0, 1))
        assert val == pytest.approx(math.sin(1.0), abs=1e-14)

    def test_integral_through_function(self, axes):
        g = transformed_function(SmoothFunction2D.from_text("-cos(x1)*x2"), axes)
        assert mixed_partial_integral(g, (0, 1, 0, 1)) == pytest.approx(1 - math.cos(1.0), abs=1e-14)
        g = transformed_function(SmoothFunction2D.from_text("sin(x1)*x2"), axes)
        assert mixed_partial_integral(g, (0, 1, 0, 1)) == pytest.approx(math.sin(1.0), abs=1e-14)

    def test_integral_equals_corner_sum(self, rng):
        g = transformed_function(SmoothFunction2D.from_text("exp(x1)*sin(x2) + x1^2*x2^3"), DirectionPair([1, 0.3], [0.2, 1]))
        bounds = (-0.5, 0.8, 0.1, 1.3)
        assert mixed_partial_integral(g, bounds, n=40) == pytest.approx(4 * corner_formula_error(g, bounds, curvature_ok=True), abs=1e-10)

    def test_curvature_warning(self, axes):
        g = transformed_function(SmoothFunction2D.from_text("-x1*x2"), axes)
        with pytest.warns(CurvatureViolated):
            corner_formula_error(g, (0, 1, 0, 1))

    def test_bad_order(self):
        with pytest.raises(ValueError):
            mixed_partial_integral(lambda a, b: a, (0, 1, 0, 1), n=1)


class TestReport:
    def test_worked_example(self, axes):
        rep = closed_form_report(SmoothFunction2D.from_text("x1*x2"), BoxDomainSpec(0, 1, 0, 1, axes))
        assert rep.in_class and rep.curvature_ok
        assert rep.corner_value == pytest.approx(0.25, abs=1e-12)
        assert rep.integral == pytest.approx(1.0, abs=1e-12)
        assert rep.quadrature_value == pytest.approx(0.25, abs=1e-12)
        assert "1/4" in rep.note
        out = rep.to_json()
        assert out["errorEstimate"] == rep.corner_value

    def test_no_estimate_without_curvature(self, axes):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            rep = closed_form_report(SmoothFunction2D.from_text("-x1*x2"), BoxDomainSpec(0, 1, 0, 1, axes))
        assert rep.error_estimate is None

    def test_three_routes_on_smooth_function(self, axes):
        spec = BoxDomainSpec(0, 1, 0, 1, axes)
        f = SmoothFunction2D.from_text("exp(x1*x2)")
        rep = closed_form_report(f, spec)
        dom = sample_box(spec, 9)
        fv = f(dom.points)
        # the extremal corners are on the grid, so the grid error is exact
        assert sup_closed_path(dom, fv).value == pytest.approx(rep.corner_value, abs=1e-12)
        assert best_ridge_linf(dom, fv).error == pytest.approx(rep.corner_value, abs=1e-10)
