"""
Building a network from the best ridge approximation
====================================================

Each table of the best approximation ``g0(a.x) + h0(b.x)`` is fitted by
shifted activations. The resulting network is within ``E + epsilon`` of
``f`` on the grid, where ``E`` is the best ridge error.
"""

import numpy as np

from ridgegap import BoxDomainSpec, DirectionPair, SampledDomain, build_network, get_activation, sample_box
from ridgegap.errors import EpsilonUnreachable, MeanPeriodicActivation

dom = sample_box(BoxDomainSpec(0.0, 1.0, 0.0, 1.0, DirectionPair([1, 0], [0, 1])), 17)
f = dom.points[:, 0] * dom.points[:, 1]

for sigma in ("sigmoid", "tanh", "gaussian"):
    fit = build_network(dom, f, sigma, epsilon=0.05)
    print(f"{sigma:8s} shifts/direction {fit.m:2d}  terms {len(fit.network):3d}  "
          f"network error {fit.error:.4f}  (E = {fit.best.error:.4f})")

###############################################################################
# A tighter budget needs more shifts. With ``a = e1`` every sigmoid has unit
# slope across an interval of length one, so the shifts are nearly
# dependent and small budgets are out of reach.

for eps in (0.1, 0.05, 0.01):
    try:
        fit = build_network(dom, f, "sigmoid", epsilon=eps)
        print(f"epsilon {eps:<6} shifts {fit.m:3d}  error {fit.error:.5f}")
    except EpsilonUnreachable as exc:
        print(f"epsilon {eps:<6} unreachable, best error {exc.fit.error:.5f}")

###############################################################################
# Scaling the directions does not change the ridge space g(a.x) + h(b.x) but
# makes the fixed-weight sigmoids steeper on the same points.

scaled = SampledDomain.from_points(dom.points, DirectionPair([8.0, 0.0], [0.0, 8.0]))
for eps in (0.01, 0.001):
    fit = build_network(scaled, f, "sigmoid", epsilon=eps)
    print(f"a = 8 e1, epsilon {eps:<6} shifts {fit.m:3d}  error {fit.error:.5f}")

###############################################################################
# Polynomial activations cannot work: their shifts span a finite-dimensional
# space.

try:
    get_activation("polynomial")
except MeanPeriodicActivation as exc:
    print(exc)

# exact interpolation with overlapping shifts is paid for in coefficient size
print("largest |coefficient|:", np.abs([c for c, _, _ in fit.network.terms]).max())
