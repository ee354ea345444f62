"""Best uniform approximation by sums ``g(a.x) + h(b.x)`` on a finite domain.

On a finite domain a ridge sum is just a pair of tables, one value per
a-level and one per b-level, so the best approximation is the linear program

    minimize t  s.t.  -t <= f_i - g[aLevel(i)] - h[bLevel(i)] <= t.

Points that are alone on one of their levels can always be matched exactly,
so they are peeled off first and the LP only sees the remaining core.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import MissingLevel, NoCycle
from .extremal import build_alternation_graph, cycle_to_closed_path, max_mean_cycle
from .geometry import SampledDomain
from .paths import ClosedPath, Path, other_edge, path_functional, rotate_closed_path
from .simplex import chebyshev_fit

__all__ = [
    "RidgePair",
    "BestApprox",
    "ExtremalPath",
    "evaluate_ridge",
    "ridge_values",
    "best_ridge_linf",
    "extremal_paths_of_residual",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RidgePair:
    """Tabulated ``g`` on a-levels and ``h`` on b-levels."""

    g_table: np.ndarray
    h_table: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "g_table", np.asarray(self.g_table, dtype=float))
        object.__setattr__(self, "h_table", np.asarray(self.h_table, dtype=float))

    def shifted(self, c: float) -> "RidgePair":
        """Same function with the constant moved between the two tables."""
        return RidgePair(self.g_table + c, self.h_table - c)


def evaluate_ridge(v: RidgePair, domain: SampledDomain, point: int) -> float:
    al, bl = int(domain.a_level[point]), int(domain.b_level[point])
    if al >= v.g_table.size:
        raise MissingLevel(f"g table has no entry for a-level {al}")
    if bl >= v.h_table.size:
        raise MissingLevel(f"h table has no entry for b-level {bl}")
    return float(v.g_table[al] + v.h_table[bl])


def ridge_values(v: RidgePair, domain: SampledDomain) -> np.ndarray:
    """:func:`evaluate_ridge` at every point."""
    if v.g_table.size < domain.n_a_levels or v.h_table.size < domain.n_b_levels:
        raise MissingLevel("ridge tables do not cover every level of the domain")
    return v.g_table[domain.a_level] + v.h_table[domain.b_level]


@dataclass(frozen=True)
class BestApprox:
    v0: RidgePair
    error: float
    residual: np.ndarray
    core_size: int = 0
    iterations: int = 0

    def to_json(self, domain: SampledDomain | None = None) -> dict:
        out = {
            "error": self.error,
            "gTable": {str(i): float(x) for i, x in enumerate(self.v0.g_table)},
            "hTable": {str(i): float(x) for i, x in enumerate(self.v0.h_table)},
        }
        if domain is not None:
            out["aLevelValues"] = {str(i): float(x) for i, x in enumerate(domain.a_values)}
            out["bLevelValues"] = {str(i): float(x) for i, x in enumerate(domain.b_values)}
        return out


def _peel(a_level, b_level, n_a, n_b):
    """Repeatedly drop points that are alone on their a- or b-level.

    Returns the removal order (point, which level was free) and a mask of
    the points that survive.
    """
    alive = np.ones(a_level.size, dtype=bool)
    ca = np.bincount(a_level, minlength=n_a)
    cb = np.bincount(b_level, minlength=n_b)
    removed = []
    queue = [i for i in range(a_level.size) if ca[a_level[i]] == 1 or cb[b_level[i]] == 1]
    while queue:
        i = queue.pop()
        if not alive[i]:
            continue
        alive[i] = False
        free = "A" if ca[a_level[i]] == 1 else "B"
        removed.append((i, free))
        ca[a_level[i]] -= 1
        cb[b_level[i]] -= 1
        # neighbours that just became singletons
        if ca[a_level[i]] == 1:
            queue.extend(np.flatnonzero(alive & (a_level == a_level[i])).tolist())
        if cb[b_level[i]] == 1:
            queue.extend(np.flatnonzero(alive & (b_level == b_level[i])).tolist())
    return removed, alive


def best_ridge_linf(domain: SampledDomain, fvals, max_iter: int | None = None) -> BestApprox:
    """Best uniform approximation of ``f`` from ``R(a, b)`` on the domain.

    The gauge (a constant moved from ``g`` to ``h``) is fixed by pinning the
    first a-level of every connected block of coupled levels to 0.
    """
    f = np.asarray(fvals, dtype=float)
    n = len(domain)
    if n == 0:
        raise ValueError("domain is empty")
    if f.shape != (n,):
        raise ValueError(f"expected {n} function values, got {f.shape}")
    na, nb = domain.n_a_levels, domain.n_b_levels
    al, bl = domain.a_level, domain.b_level

    removed, core = _peel(al, bl, na, nb)
    g = np.full(na, np.nan)
    h = np.full(nb, np.nan)
    iterations = 0
    core_idx = np.flatnonzero(core)

    if core_idx.size:
        ca, cb = np.unique(al[core_idx]), np.unique(bl[core_idx])
        # bipartite level graph: a-levels 0..na-1, b-levels na..na+nb-1
        adj = coo_matrix(
            (np.ones(core_idx.size), (al[core_idx], na + bl[core_idx])),
            shape=(na + nb, na + nb),
        )
        _, comp = connected_components(adj, directed=False)
        pinned = set()
        seen = set()
        for lv in ca:
            if comp[lv] not in seen:
                seen.add(comp[lv])
                pinned.add(int(lv))
        free_a = [int(lv) for lv in ca if int(lv) not in pinned]
        free_b = [int(lv) for lv in cb]
        col_a = {lv: k for k, lv in enumerate(free_a)}
        col_b = {lv: len(free_a) + k for k, lv in enumerate(free_b)}
        Bm = np.zeros((core_idx.size, len(free_a) + len(free_b)))
        for r, i in enumerate(core_idx):
            if int(al[i]) in col_a:
                Bm[r, col_a[int(al[i])]] = 1.0
            Bm[r, col_b[int(bl[i])]] = 1.0
        fit = chebyshev_fit(Bm, f[core_idx], max_iter=max_iter)
        iterations = fit.iterations
        for lv in pinned:
            g[lv] = 0.0
        for lv, k in col_a.items():
            g[lv] = fit.coef[k]
        for lv, k in col_b.items():
            h[lv] = fit.coef[k]

    for i, free in reversed(removed):
        if free == "A":
            if np.isnan(h[bl[i]]):
                h[bl[i]] = 0.0
            g[al[i]] = f[i] - h[bl[i]]
        else:
            if np.isnan(g[al[i]]):
                g[al[i]] = 0.0
            h[bl[i]] = f[i] - g[al[i]]

    v0 = RidgePair(g, h)
    residual = f - ridge_values(v0, domain)
    error = float(np.abs(residual).max())
    return BestApprox(v0, error, residual, int(core_idx.size), iterations)


@dataclass(frozen=True)
class ExtremalPath:
    path: Path
    closed: bool


def _orient_negative_first(cp: ClosedPath, residual) -> ClosedPath:
    if residual[cp.pts[0]] > 0:
        cp = rotate_closed_path(cp, 1)
    # smallest starting point among same-sign rotations
    options = [rotate_closed_path(cp, s) for s in range(0, len(cp.pts), 2)]
    return min(options, key=lambda r: r.pts)


def extremal_paths_of_residual(
    domain: SampledDomain, fvals, approx: BestApprox, tol: float = 1e-6
) -> list[ExtremalPath]:
    """Paths on which ``f - v0`` takes the values ``-E, +E, -E, ...``.

    A closed extremal path is searched for first; if there is one it is
    returned alone (oriented so the first residual is negative). Otherwise
    maximal open alternating paths are grown greedily from every extremal
    point and returned with ``closed=False``.
    """
    E = approx.error
    if E <= 0.0:
        return []
    r = np.asarray(approx.residual, dtype=float)
    ext = np.abs(r) >= (1.0 - tol) * E
    sign = np.sign(r)

    graph = build_alternation_graph(domain, r)
    pu, pv = graph.src // 2, graph.dst // 2
    keep = ext[pu] & ext[pv] & (sign[pu] == -sign[pv])
    if keep.any():
        sub = type(graph)(graph.n_points, graph.src[keep], graph.dst[keep], graph.weight[keep], graph.kind[keep])
        try:
            _, cycle = max_mean_cycle(sub)
        except NoCycle:
            pass
        else:
            cp = _orient_negative_first(cycle_to_closed_path(cycle), r)
            if abs(abs(path_functional(cp, r)) - E) <= tol * E:
                return [ExtremalPath(cp, True)]

    members = {}
    for kind, levels in (("A", domain.a_level), ("B", domain.b_level)):
        groups: dict[int, list[int]] = {}
        for i in np.flatnonzero(ext):
            groups.setdefault(int(levels[i]), []).append(int(i))
        members[kind] = (levels, groups)

    found: list[ExtremalPath] = []
    seen = set()
    for seed in np.flatnonzero(ext):
        for first in ("A", "B"):
            pts = [int(seed)]
            kind = first
            while True:
                levels, groups = members[kind]
                u = pts[-1]
                nxt = [v for v in groups.get(int(levels[u]), []) if v not in pts and sign[v] == -sign[u]]
                if not nxt:
                    break
                pts.append(min(nxt))
                kind = other_edge(kind)
            if len(pts) < 2:
                continue
            key = (tuple(pts), first)
            if key in seen:
                continue
            seen.add(key)
            found.append(ExtremalPath(Path(tuple(pts), first), False))
    if not found:
        log.info("no alternating extremal path: the residual peaks have no level partners")
    return found
