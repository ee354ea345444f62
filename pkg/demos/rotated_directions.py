"""
Rotated directions
==================

With ``a = (1, 1)`` and ``b = (1, -1)`` the function ``x1^2 - x2^2`` becomes
``y1*y2`` in the coordinates ``y1 = a.x``, ``y2 = b.x``, so its error on the
parallelogram ``0 <= y1, y2 <= 1`` is again 1/4.
"""

import numpy as np

from ridgegap import (
    BoxDomainSpec,
    DirectionPair,
    SmoothFunction2D,
    best_ridge_linf,
    check_curvature_condition,
    closed_form_report,
    sample_box,
    sup_closed_path,
    transformed_function,
)

dirs = DirectionPair([1.0, 1.0], [1.0, -1.0])
box = BoxDomainSpec(0.0, 1.0, 0.0, 1.0, dirs)
f = SmoothFunction2D.from_text("x1^2 - x2^2")

# the class condition holds with a constant margin
print("class margin:", check_curvature_condition(f, dirs, box).margin)

# g(y) = y1*y2 at a few random points
g = transformed_function(f, dirs)
y = np.random.default_rng(0).uniform(0, 1, (3, 2))
print(np.c_[g(y[:, 0], y[:, 1]), y[:, 0] * y[:, 1]])

dom = sample_box(box, 9)
fv = f(dom.points)
print("path supremum   ", sup_closed_path(dom, fv).value)
print("best ridge error", best_ridge_linf(dom, fv).error)
print("corner formula  ", closed_form_report(f, box).corner_value)
