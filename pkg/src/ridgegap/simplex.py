"""Dense-tableau simplex with Bland's rule, and the uniform-norm fit built on it."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import qr

from .errors import SolverStall

__all__ = ["LPResult", "simplex_max", "ChebyshevFit", "chebyshev_fit", "independent_columns"]

log = logging.getLogger(__name__)

PIVOT_TOL = 1e-9
# relative pivot below which a design column counts as dependent
PRUNE_RCOND = 1e-10


@dataclass(frozen=True)
class LPResult:
    x: np.ndarray
    value: float
    duals: np.ndarray
    iterations: int


def simplex_max(c, A, b, tol: float = PIVOT_TOL, max_iter: int | None = None) -> LPResult:
    """Maximize ``c @ x`` subject to ``A @ x <= b``, ``x >= 0``.

    Requires ``b >= 0`` so the slack basis is feasible from the start. The
    entering column is the lowest-index one with positive reduced profit and
    ties in the ratio test go to the lowest-index basic variable (Bland),
    which rules out cycling. ``duals`` are the shadow prices of the rows.
    """
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    if np.any(b < 0):
        raise ValueError("simplex_max needs a nonnegative right-hand side")
    if max_iter is None:
        max_iter = 50 * (m + n) + 1000

    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :n] = -c
    basis = np.arange(n, n + m)

    it = 0
    while True:
        profit = T[m, :-1]
        entering = np.flatnonzero(profit < -tol)
        if entering.size == 0:
            break
        if it >= max_iter:
            raise SolverStall(f"simplex did not converge in {max_iter} pivots")
        j = entering[0]
        col = T[:m, j]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            raise ValueError("LP is unbounded")
        ratios = T[rows, -1] / col[rows]
        rmin = ratios.min()
        tied = rows[ratios <= rmin + tol * max(1.0, abs(rmin))]
        r = tied[np.argmin(basis[tied])]

        T[r] /= T[r, j]
        factor = T[:, j].copy()
        factor[r] = 0.0
        # the update is confined to the pivot column's rows and pivot row's columns
        rows_nz = np.flatnonzero(factor)
        cols_nz = np.flatnonzero(T[r])
        T[np.ix_(rows_nz, cols_nz)] -= np.outer(factor[rows_nz], T[r, cols_nz])
        basis[r] = j
        it += 1

    x = np.zeros(n + m)
    x[basis] = T[:m, -1]
    return LPResult(x=x[:n], value=float(T[m, -1]), duals=T[m, n:n + m].copy(), iterations=it)


@dataclass(frozen=True)
class ChebyshevFit:
    coef: np.ndarray
    error: float
    residual: np.ndarray
    iterations: int


def independent_columns(B, rcond: float = PRUNE_RCOND) -> np.ndarray:
    """Indices (ascending) of a numerically independent subset of columns.

    Columns are normalised and ranked by QR with column pivoting; a column is
    kept while its pivot exceeds ``rcond`` times the largest one.
    """
    B = np.asarray(B, dtype=float)
    norms = np.linalg.norm(B, axis=0)
    live = np.flatnonzero(norms > 0)
    if live.size == 0:
        return live
    R, piv = qr(B[:, live] / norms[live], mode="r", pivoting=True)
    d = np.abs(np.diag(R))
    rank = int(np.sum(d > rcond * d[0]))
    return np.sort(live[piv[:rank]])


def chebyshev_fit(
    B, y, tol: float = PIVOT_TOL, max_iter: int | None = None, rcond: float | None = PRUNE_RCOND
) -> ChebyshevFit:
    """Minimize ``max_k |y_k - (B @ coef)_k|`` over free coefficients.

    With ``T = max|y|`` and ``s = T - t`` the problem becomes

        maximize s
        s.t.  -B c + s <= T - y
               B c + s <= T + y

    whose right-hand side is nonnegative, so no phase one is needed. ``c`` is
    split into positive and negative parts.

    Nearly dependent columns make the tableau drift, so unless ``rcond`` is
    None only the columns from :func:`independent_columns` enter the LP
    (normalised); the others get coefficient 0. The result is never worse
    than the zero fit.
    """
    B = np.asarray(B, dtype=float)
    y = np.asarray(y, dtype=float)
    K, p = B.shape
    if y.shape != (K,):
        raise ValueError("y must have one entry per row of B")
    if K == 0:
        return ChebyshevFit(np.zeros(p), 0.0, np.zeros(0), 0)
    top = float(np.abs(y).max())
    coef = np.zeros(p)
    if rcond is None:
        cols, scale = np.arange(p), np.ones(p)
    else:
        cols = independent_columns(B, rcond)
        scale = np.linalg.norm(B[:, cols], axis=0)
    if cols.size == 0:
        return ChebyshevFit(coef, top, y.copy(), 0)
    Bk = B[:, cols] / scale
    p_k = cols.size
    ones = np.ones((K, 1))
    A = np.block([[-Bk, Bk, ones], [Bk, -Bk, ones]])
    rhs = np.concatenate([top - y, top + y])
    # roundoff can leave -0.0-ish entries
    rhs = np.maximum(rhs, 0.0)
    obj = np.zeros(2 * p_k + 1)
    obj[-1] = 1.0
    res = simplex_max(obj, A, rhs, tol=tol, max_iter=max_iter)
    coef[cols] = (res.x[:p_k] - res.x[p_k:2 * p_k]) / scale
    residual = y - B @ coef
    err = float(np.abs(residual).max())
    if err > top:
        log.warning("minimax fit drifted to %.3g, above the zero fit %.3g", err, top)
        coef[:] = 0.0
        residual, err = y.copy(), top
    return ChebyshevFit(coef, err, residual, res.iterations)
