"""
Closed paths on a small grid
============================

Closed paths are the certificates of the error. On a 3 x 3 grid we list
them for a random function and compare the largest alternating mean with
the exact maximum-mean-cycle value.
"""

import numpy as np

from ridgegap import best_ridge_linf, enumerate_closed_paths, extremal_paths_of_residual, path_functional
from ridgegap import BoxDomainSpec, DirectionPair, sample_box, sup_closed_path

rng = np.random.default_rng(3)
dom = sample_box(BoxDomainSpec(0.0, 1.0, 0.0, 1.0, DirectionPair([1, 0], [0, 1])), 3)
f = rng.uniform(-1, 1, len(dom))

paths = list(enumerate_closed_paths(dom, 6))
values = sorted(((abs(path_functional(cp, f)), cp) for cp in paths), key=lambda r: -r[0])
print(f"{len(paths)} closed paths up to length 6")
for v, cp in values[:5]:
    print(f"  {v:.6f}  {cp.first_edge} {cp.pts}")

sup = sup_closed_path(dom, f)
best = best_ridge_linf(dom, f)
print("maximum mean cycle", sup.value, "witness", sup.witness.pts)
print("best ridge error  ", best.error)

# the residual alternates between -E and +E along an extremal path
for ep in extremal_paths_of_residual(dom, f, best):
    print("extremal path", ep.path.pts, "closed" if ep.closed else "open",
          np.round(best.residual[list(ep.path.pts)], 6))
