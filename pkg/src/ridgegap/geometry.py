"""Directions, sampled domains and the 2-D change of variables.

A :class:`SampledDomain` is a finite point set together with the level
structure induced by two directions ``a`` and ``b``: two points share an
a-level when their projections onto ``a`` agree (up to a grouping
tolerance), and likewise for ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DuplicatePoints, SingularDirections

__all__ = [
    "DirectionPair",
    "SampledDomain",
    "BoxDomainSpec",
    "quantize_levels",
    "forward_transform",
    "inverse_transform",
    "sample_box",
]


@dataclass(frozen=True)
class DirectionPair:
    """Two fixed nonzero weight vectors. They may be parallel or equal."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).reshape(-1)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if a.size == 0 or a.shape != b.shape:
            raise ValueError("directions must be nonempty vectors of equal length")
        if not (np.any(a != 0) and np.any(b != 0)):
            raise ValueError("directions must be nonzero")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return self.a.size

    def determinant(self) -> float:
        if self.dim != 2:
            raise ValueError("determinant is only defined for d = 2")
        return float(self.a[0] * self.b[1] - self.a[1] * self.b[0])

    def is_independent(self) -> bool:
        if self.dim != 2:
            return bool(np.linalg.matrix_rank(np.vstack([self.a, self.b])) == 2)
        scale = max(np.linalg.norm(self.a), np.linalg.norm(self.b)) ** 2
        return abs(self.determinant()) > 1e-12 * scale


def quantize_levels(projections, tol: float) -> np.ndarray:
    """Group real values into levels by single-linkage on sorted gaps.

    A new level starts whenever the gap to the previous sorted value exceeds
    ``tol``. Level ids are assigned in increasing order of value.

    >>> quantize_levels([1.0, 1.0, 2.0], 1e-9).tolist()
    [0, 0, 1]
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    x = np.asarray(projections, dtype=float).reshape(-1)
    if x.size == 0:
        return np.zeros(0, dtype=np.intp)
    order = np.argsort(x, kind="stable")
    gaps = np.diff(x[order])
    ids_sorted = np.concatenate([[0], np.cumsum(gaps > tol)])
    out = np.empty(x.size, dtype=np.intp)
    out[order] = ids_sorted
    return out


def _level_values(proj: np.ndarray, level: np.ndarray) -> np.ndarray:
    n_levels = int(level.max()) + 1 if level.size else 0
    sums = np.bincount(level, weights=proj, minlength=n_levels)
    counts = np.bincount(level, minlength=n_levels)
    return sums / np.maximum(counts, 1)


@dataclass(frozen=True)
class SampledDomain:
    """Finite stand-in for a compact set ``Q`` with its level structure.

    Use :meth:`from_points` to build one from raw coordinates; the
    constructor itself trusts the supplied level maps.
    """

    points: np.ndarray
    dirs: DirectionPair
    tol: float
    a_level: np.ndarray
    b_level: np.ndarray
    a_values: np.ndarray = field(repr=False)
    b_values: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("points", "a_level", "b_level", "a_values", "b_values"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        n = self.points.shape[0]
        if self.a_level.shape != (n,) or self.b_level.shape != (n,):
            raise ValueError("level maps must be total over the points")

    @classmethod
    def from_points(cls, points, dirs: DirectionPair, tol: float | None = None):
        """Build a domain, grouping projections with :func:`quantize_levels`.

        ``tol`` defaults to ``1e-9`` times the spread of each projection.
        """
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, dirs.dim)
        if pts.shape[1] != dirs.dim:
            raise ValueError(f"points have dimension {pts.shape[1]}, directions {dirs.dim}")
        if len({tuple(p) for p in pts.tolist()}) != len(pts):
            raise DuplicatePoints("domain points must be pairwise distinct")
        pa, pb = pts @ dirs.a, pts @ dirs.b

        def auto_tol(p):
            return 1e-9 * float(np.ptp(p)) if p.size else 0.0

        ta = auto_tol(pa) if tol is None else tol
        tb = auto_tol(pb) if tol is None else tol
        al, bl = quantize_levels(pa, ta), quantize_levels(pb, tb)
        return cls(
            points=pts,
            dirs=dirs,
            tol=float(max(ta, tb)),
            a_level=al,
            b_level=bl,
            a_values=_level_values(pa, al),
            b_values=_level_values(pb, bl),
        )

    def __len__(self):
        return self.points.shape[0]

    @property
    def n_a_levels(self) -> int:
        return self.a_values.size

    @property
    def n_b_levels(self) -> int:
        return self.b_values.size

    def a_projection(self) -> np.ndarray:
        return self.points @ self.dirs.a

    def b_projection(self) -> np.ndarray:
        return self.points @ self.dirs.b

    def subset(self, keep) -> "SampledDomain":
        """Domain restricted to the points at indices ``keep`` (levels regrouped)."""
        keep = np.asarray(keep, dtype=np.intp)
        al = _relabel(self.a_level[keep])
        bl = _relabel(self.b_level[keep])
        pts = self.points[keep]
        return SampledDomain(
            points=pts,
            dirs=self.dirs,
            tol=self.tol,
            a_level=al,
            b_level=bl,
            a_values=_level_values(pts @ self.dirs.a, al),
            b_values=_level_values(pts @ self.dirs.b, bl),
        )


def _relabel(levels: np.ndarray) -> np.ndarray:
    # keep the original ordering of level ids, close the gaps
    _, inv = np.unique(levels, return_inverse=True)
    return inv.astype(np.intp)


@dataclass(frozen=True)
class BoxDomainSpec:
    """``Q = {x : c1 <= a.x <= d1, c2 <= b.x <= d2}`` in the plane."""

    c1: float
    d1: float
    c2: float
    d2: float
    dirs: DirectionPair

    def __post_init__(self):
        if not (self.c1 < self.d1 and self.c2 < self.d2):
            raise ValueError("box bounds need c1 < d1 and c2 < d2")
        if self.dirs.dim != 2:
            raise ValueError("box domains are planar")

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return (self.c1, self.d1, self.c2, self.d2)


def forward_transform(x, dirs: DirectionPair) -> tuple[float, float]:
    """``(a.x, b.x)`` for a planar point."""
    x = np.asarray(x, dtype=float)
    if dirs.dim != 2 or x.shape[-1] != 2:
        raise ValueError("forward_transform needs d = 2")
    return float(x @ dirs.a), float(x @ dirs.b)


def _check_independent(dirs: DirectionPair) -> float:
    if dirs.dim != 2:
        raise ValueError("the change of variables needs d = 2")
    det = dirs.determinant()
    scale = max(np.linalg.norm(dirs.a), np.linalg.norm(dirs.b)) ** 2
    if abs(det) <= 1e-12 * scale:
        raise SingularDirections(
            f"a={dirs.a.tolist()} and b={dirs.b.tolist()} are linearly dependent"
        )
    return det


def inverse_transform(y, dirs: DirectionPair):
    """Solve ``a.x = y1, b.x = y2`` for ``x``.

    Accepts a single pair or an ``(n, 2)`` array of pairs.
    """
    det = _check_independent(dirs)
    (a1, a2), (b1, b2) = dirs.a, dirs.b
    y = np.asarray(y, dtype=float)
    y1, y2 = y[..., 0], y[..., 1]
    x1 = (y1 * b2 - y2 * a2) / det
    x2 = (y2 * a1 - y1 * b1) / det
    if y.ndim == 1:
        return float(x1), float(x2)
    return np.stack([x1, x2], axis=-1)


def sample_box(spec: BoxDomainSpec, m: int) -> SampledDomain:
    """Uniform ``m x m`` grid over ``K`` pulled back into x-space.

    Row ``i`` of the grid is a-level ``i`` and column ``j`` is b-level ``j``;
    point index is ``i * m + j``.
    """
    if m < 2:
        raise ValueError("grid size m must be at least 2")
    _check_independent(spec.dirs)
    y1 = np.linspace(spec.c1, spec.d1, m)
    y2 = np.linspace(spec.c2, spec.d2, m)
    Y1, Y2 = np.meshgrid(y1, y2, indexing="ij")
    ys = np.stack([Y1.ravel(), Y2.ravel()], axis=1)
    pts = inverse_transform(ys, spec.dirs)
    rows, cols = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    return SampledDomain(
        points=pts,
        dirs=spec.dirs,
        tol=0.0,
        a_level=rows.ravel().astype(np.intp),
        b_level=cols.ravel().astype(np.intp),
        a_values=y1,
        b_values=y2,
    )
