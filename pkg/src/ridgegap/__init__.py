"""Uniform approximation error of shallow networks with two fixed weights.

On a finite domain the error of networks ``sum c_i sigma(w_i . x - theta_i)``
with every ``w_i`` in ``{a, b}`` equals the largest alternating mean
``|G_p(f)|`` over closed paths. This package computes that supremum exactly
(maximum cycle mean), checks it against the best ridge approximation
``g(a.x) + h(b.x)`` (linear programming) and a corner formula, and builds
explicit networks that come within any epsilon of it.
"""

from .closed_form import (
    ClosedFormReport,
    SmoothFunction2D,
    check_curvature_condition,
    closed_form_report,
    corner_formula_error,
    mixed_partial_integral,
    transformed_function,
)
from .errors import *  # noqa: F401,F403
from .expr import differentiate, evaluate, parse, to_string
from .extremal import (
    SupResult,
    build_alternation_graph,
    enumerate_closed_paths,
    max_mean_cycle,
    sup_closed_path,
)
from .geometry import (
    BoxDomainSpec,
    DirectionPair,
    SampledDomain,
    forward_transform,
    inverse_transform,
    quantize_levels,
    sample_box,
)
from .network import (
    ACTIVATIONS,
    FitConfig,
    ShallowNetwork,
    assemble_network,
    build_network,
    fit_univariate_shifts,
    get_activation,
    network_error,
    projection_interval,
)
from .paths import ClosedPath, Path, path_functional, rotate_closed_path, validate_path
from .ridge import BestApprox, RidgePair, best_ridge_linf, evaluate_ridge, extremal_paths_of_residual

__version__ = "0.1.0"
