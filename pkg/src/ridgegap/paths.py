"""Paths and closed paths with respect to two directions.

Consecutive points of a path alternately share an a-level (an ``"A"`` edge)
and a b-level (a ``"B"`` edge). A closed path has even length and stays a
path when its first point is appended at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import IndexOutOfRange, InvalidPath
from .geometry import SampledDomain

__all__ = [
    "Path",
    "ClosedPath",
    "PathCheck",
    "other_edge",
    "edge_type",
    "validate_path",
    "path_functional",
    "rotate_closed_path",
    "reverse_closed_path",
    "canonical_closed_path",
]

EDGE_TYPES = ("A", "B")


def other_edge(kind: str) -> str:
    return "B" if kind == "A" else "A"


def edge_type(first_edge: str, k: int) -> str:
    """Type of edge ``k`` (between ``pts[k]`` and ``pts[k+1]``)."""
    return first_edge if k % 2 == 0 else other_edge(first_edge)


@dataclass(frozen=True)
class Path:
    pts: tuple[int, ...]
    first_edge: str = "A"

    def __post_init__(self):
        object.__setattr__(self, "pts", tuple(int(p) for p in self.pts))
        if self.first_edge not in EDGE_TYPES:
            raise ValueError(f"first_edge must be 'A' or 'B', got {self.first_edge!r}")

    def __len__(self):
        return len(self.pts)

    def to_json(self) -> dict:
        return {"pts": list(self.pts), "firstEdge": self.first_edge}

    @classmethod
    def from_json(cls, obj: dict):
        return cls(tuple(obj["pts"]), obj["firstEdge"])


@dataclass(frozen=True)
class ClosedPath(Path):
    """Closed path; the wraparound edge has the type opposite to ``first_edge``."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.pts) < 2 or len(self.pts) % 2:
            raise ValueError("a closed path has even length >= 2")


class PathCheck(NamedTuple):
    """Result of :func:`validate_path`; truthy iff the candidate is valid."""

    ok: bool
    reason: str | None = None
    edge: int | None = None

    def __bool__(self):
        return self.ok


def validate_path(
    candidate: Sequence[int],
    first_edge: str,
    domain: SampledDomain,
    closed: bool = False,
) -> PathCheck:
    pts = [int(p) for p in candidate]
    if not pts:
        raise ValueError("candidate path is empty")
    n = len(domain)
    for p in pts:
        if not 0 <= p < n:
            raise IndexOutOfRange(f"point index {p} outside 0..{n - 1}")
    if first_edge not in EDGE_TYPES:
        return PathCheck(False, f"unknown edge type {first_edge!r}")
    if len(pts) < 2:
        return PathCheck(False, "a path needs at least two points")
    if closed and len(pts) % 2:
        return PathCheck(False, f"closed path has odd length {len(pts)}")
    seq = pts + [pts[0]] if closed else pts
    for k in range(len(seq) - 1):
        u, v = seq[k], seq[k + 1]
        kind = edge_type(first_edge, k)
        if u == v:
            return PathCheck(False, f"edge {k}: repeated point {u}", k)
        levels = domain.a_level if kind == "A" else domain.b_level
        if levels[u] != levels[v]:
            return PathCheck(
                False,
                f"edge {k} ({kind}): points {u} and {v} lie on different "
                f"{kind.lower()}-levels {levels[u]} != {levels[v]}",
                k,
            )
    return PathCheck(True)


def path_functional(cp: ClosedPath, fvals) -> float:
    """Alternating mean ``(1/2n) sum (-1)^(k+1) f(p_k)`` over a closed path."""
    f = np.asarray(fvals, dtype=float)
    vals = f[list(cp.pts)]
    return float((vals[0::2].sum() - vals[1::2].sum()) / len(cp.pts))


def rotate_closed_path(cp: ClosedPath, shift: int) -> ClosedPath:
    """Cyclic rotation; odd shifts flip the sign of the functional."""
    n = len(cp.pts)
    s = shift % n
    pts = cp.pts[s:] + cp.pts[:s]
    return ClosedPath(pts, edge_type(cp.first_edge, s))


def reverse_closed_path(cp: ClosedPath) -> ClosedPath:
    """Traverse the cycle backwards starting from the last point.

    The reversed path starts with the same edge type; its functional is the
    negative of the original's.
    """
    return ClosedPath(tuple(reversed(cp.pts)), cp.first_edge)


def canonical_closed_path(cp: ClosedPath) -> ClosedPath:
    """Smallest representative under rotation and reversal."""
    best = None
    for base in (cp, reverse_closed_path(cp)):
        for s in range(len(base.pts)):
            r = rotate_closed_path(base, s)
            key = (r.pts, r.first_edge)
            if best is None or key < best:
                best = key
    return ClosedPath(*best)


def require_valid(cp: Path, domain: SampledDomain, closed: bool) -> None:
    check = validate_path(cp.pts, cp.first_edge, domain, closed=closed)
    if not check:
        raise InvalidPath(check.reason)
