"""Independent reference computations used only by the tests."""

import numpy as np
from scipy.optimize import linprog


def linprog_ridge_error(domain, f):
    """Best uniform ridge error via HiGHS: min t s.t. |f - g[a] - h[b]| <= t."""
    n, na, nb = len(domain), domain.n_a_levels, domain.n_b_levels
    M = np.zeros((n, na + nb))
    M[np.arange(n), domain.a_level] = 1.0
    M[np.arange(n), na + domain.b_level] = 1.0
    ones = np.ones((n, 1))
    A = np.block([[M, -ones], [-M, -ones]])
    rhs = np.concatenate([f, -f])
    c = np.zeros(na + nb + 1)
    c[-1] = 1.0
    bounds = [(None, None)] * (na + nb) + [(0, None)]
    res = linprog(c, A_ub=A, b_ub=rhs, bounds=bounds, method="highs")
    assert res.status == 0
    return res.fun


def linprog_chebyshev(B, y):
    K, p = B.shape
    ones = np.ones((K, 1))
    A = np.block([[B, -ones], [-B, -ones]])
    c = np.zeros(p + 1)
    c[-1] = 1.0
    res = linprog(c, A_ub=A, b_ub=np.concatenate([y, -y]), bounds=[(None, None)] * p + [(0, None)], method="highs")
    assert res.status == 0
    return res.fun


def central_difference_check(e, x, var, evaluate, derivative, h=1e-5):
    """Compare a symbolic derivative with a central difference at ``x``.

    Returns ``None`` when the point is too close to a singularity for a
    step of ``h`` (the step-doubling estimate of the truncation error
    exceeds a tenth of the tolerance), else ``(ok, value, fd)``.
    """
    def fd(step):
        xp, xm = x.copy(), x.copy()
        xp[var - 1] += step
        xm[var - 1] -= step
        return (float(evaluate(e, xp)) - float(evaluate(e, xm))) / (2 * step)

    v = float(evaluate(derivative, x))
    d1, d2 = fd(h), fd(2 * h)
    tol = max(1e-6, 1e-6 * abs(v))
    if not (np.isfinite(v) and np.isfinite(d1) and np.isfinite(d2)) or abs(d2 - d1) / 3 > 0.1 * tol:
        return None
    return abs(v - d1) <= tol, v, d1
