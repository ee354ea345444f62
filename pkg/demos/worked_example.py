"""
The product x1*x2 on the unit square
====================================

How far is ``f(x) = x1*x2`` from every function ``g(x1) + h(x2)``? Three
independent routes give the same answer, 1/4.
"""

import numpy as np

from ridgegap import (
    BoxDomainSpec,
    DirectionPair,
    SmoothFunction2D,
    best_ridge_linf,
    closed_form_report,
    sample_box,
    sup_closed_path,
)

dirs = DirectionPair([1.0, 0.0], [0.0, 1.0])
box = BoxDomainSpec(0.0, 1.0, 0.0, 1.0, dirs)

###############################################################################
# Route 1 and 2 on a grid: the best alternating mean over closed paths, and
# the best ridge approximation found by linear programming.

for m in (2, 5, 9, 17):
    dom = sample_box(box, m)
    f = dom.points[:, 0] * dom.points[:, 1]
    sup = sup_closed_path(dom, f)
    best = best_ridge_linf(dom, f)
    print(f"m={m:2d}  path supremum {sup.value:.12f}  best ridge error {best.error:.12f}")

###############################################################################
# The witness is the rectangle through the four corners.

dom = sample_box(box, 9)
f = dom.points[:, 0] * dom.points[:, 1]
witness = sup_closed_path(dom, f).witness
print("witness corners:", dom.points[list(witness.pts)].tolist())

###############################################################################
# Route 3: the corner formula. The mixed partial integrates to 1, four times
# the error, which is why the report carries a normalisation note.

rep = closed_form_report(SmoothFunction2D.from_text("x1*x2"), box)
print("corner value", rep.corner_value, "integral", rep.integral)
print(rep.note)

###############################################################################
# The residual of the best approximation peaks at +-1/4 on the corners.

best = best_ridge_linf(dom, f)
print("residual on corners:", np.round(best.residual[list(witness.pts)], 12))
