"""Supremum of ``|G_p(f)|`` over closed paths of a finite domain.

Closed paths are the directed cycles of an *alternation graph* whose states
are ``(point, tag)`` pairs, ``tag`` recording the kind of edge used to
arrive at the point. A-edges go from ``(u, B)`` to ``(v, A)`` when ``u != v``
share an a-level, and B-edges from ``(u, A)`` to ``(v, B)`` when they share a
b-level. With weight ``(f(u) - f(v)) / 2`` on A-edges and
``(f(v) - f(u)) / 2`` on B-edges the mean weight of a cycle is exactly the
path functional of the closed path that starts with its A-edge, so the
supremum is a maximum cycle mean.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CombinatorialBlowup, NoCycle
from .geometry import SampledDomain
from .paths import ClosedPath, canonical_closed_path, path_functional, rotate_closed_path

__all__ = [
    "AlternationGraph",
    "SupResult",
    "build_alternation_graph",
    "max_mean_cycle",
    "cycle_to_closed_path",
    "sup_closed_path",
    "enumerate_closed_paths",
    "ENUMERATION_CAP",
    "brute_force_sup",
]

log = logging.getLogger(__name__)

ENUMERATION_CAP = 10**6

# state id = 2 * point + tag
TAG_A, TAG_B = 0, 1


@dataclass(frozen=True)
class AlternationGraph:
    n_points: int
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray
    kind: np.ndarray  # 0 for A-edges, 1 for B-edges

    @property
    def n_nodes(self) -> int:
        return 2 * self.n_points

    @property
    def n_edges(self) -> int:
        return self.src.size

    @staticmethod
    def state(point: int, tag: int) -> int:
        return 2 * point + tag


def _level_pairs(levels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All ordered pairs (u, v), u != v, on a common level."""
    us, vs = [], []
    order = np.argsort(levels, kind="stable")
    bounds = np.flatnonzero(np.diff(levels[order])) + 1
    for members in np.split(order, bounds):
        if members.size < 2:
            continue
        u, v = np.meshgrid(members, members, indexing="ij")
        mask = u != v
        us.append(u[mask])
        vs.append(v[mask])
    if not us:
        empty = np.zeros(0, dtype=np.intp)
        return empty, empty
    return np.concatenate(us), np.concatenate(vs)


def build_alternation_graph(domain: SampledDomain, fvals) -> AlternationGraph:
    f = np.asarray(fvals, dtype=float)
    if f.shape != (len(domain),):
        raise ValueError(f"expected {len(domain)} function values, got {f.shape}")
    ua, va = _level_pairs(domain.a_level)
    ub, vb = _level_pairs(domain.b_level)
    src = np.concatenate([2 * ua + TAG_B, 2 * ub + TAG_A])
    dst = np.concatenate([2 * va + TAG_A, 2 * vb + TAG_B])
    weight = np.concatenate([(f[ua] - f[va]) / 2, (f[vb] - f[ub]) / 2])
    kind = np.concatenate([np.zeros(ua.size, np.int8), np.ones(ub.size, np.int8)])
    return AlternationGraph(len(domain), src.astype(np.intp), dst.astype(np.intp), weight, kind)


def _walk_cycles(nodes: list[int], edges: list[int]):
    """Split a walk (node list, edge list) into its simple cycles."""
    stack_nodes: list[int] = []
    stack_edges: list[int] = []
    pos: dict[int, int] = {}
    for i, v in enumerate(nodes):
        if v in pos:
            j = pos[v]
            yield stack_nodes[j:], stack_edges[j:]
            for w in stack_nodes[j + 1:]:
                del pos[w]
            del stack_nodes[j + 1:]
            del stack_edges[j:]
        else:
            pos[v] = len(stack_nodes)
            stack_nodes.append(v)
        if i < len(edges):
            stack_edges.append(edges[i])


def _karp_component(src, dst, w, n):
    """Maximum cycle mean of one strongly connected component.

    ``src``/``dst`` are local node ids in ``0..n-1``, sorted by ``dst``, and
    every node has at least one incoming edge. Returns ``(lam, mean, nodes)``:
    the DP optimum, and a simple cycle (local ids, edge order) of mean ``mean``
    taken from the optimal walks, which equals ``lam`` up to rounding.
    """
    starts = np.flatnonzero(np.r_[True, dst[1:] != dst[:-1]])
    heads = dst[starts]
    ends = np.r_[starts[1:], dst.size]
    seg_start = np.empty(n, dtype=np.intp)
    seg_end = np.empty(n, dtype=np.intp)
    seg_start[heads], seg_end[heads] = starts, ends
    D = np.full((n + 1, n), -np.inf)
    D[0] = 0.0
    for k in range(1, n + 1):
        D[k][heads] = np.maximum.reduceat(D[k - 1][src] + w, starts)

    def parent(k, v):
        # smallest edge id into v attaining D[k][v]
        lo, hi = seg_start[v], seg_end[v]
        return int(lo + np.argmax(D[k - 1][src[lo:hi]] + w[lo:hi]))

    Dn = D[n]
    with np.errstate(invalid="ignore"):
        ratios = (Dn[None, :] - D[:n]) / (n - np.arange(n))[:, None]
    ratios[~np.isfinite(D[:n])] = np.inf
    per_node = ratios.min(axis=0)
    per_node[~np.isfinite(Dn)] = -np.inf
    lam = float(per_node.max())

    # recover the walk of length n ending at each candidate node, best first
    best_cycle, best_mean = None, -np.inf
    for v in np.argsort(-per_node, kind="stable"):
        if per_node[v] < lam - 1e-9 * max(1.0, abs(lam)):
            break
        nodes = [int(v)]
        edges = []
        cur = int(v)
        for k in range(n, 0, -1):
            e = parent(k, cur)
            edges.append(e)
            cur = int(src[e])
            nodes.append(cur)
        nodes.reverse()
        edges.reverse()
        for cyc_nodes, cyc_edges in _walk_cycles(nodes, edges):
            mean = float(w[cyc_edges].sum() / len(cyc_edges))
            if mean > best_mean + 1e-15:
                best_mean, best_cycle = mean, cyc_nodes
        if best_mean >= lam - 1e-12 * max(1.0, abs(lam)):
            break
    return lam, best_mean, best_cycle


def max_mean_cycle(graph: AlternationGraph) -> tuple[float, list[int]]:
    """Maximum mean weight over directed cycles, with a simple witness cycle.

    Runs the walk-length dynamic program separately on every strongly
    connected component. Raises :class:`NoCycle` on acyclic graphs.
    """
    n = graph.n_nodes
    if graph.n_edges == 0:
        raise NoCycle("alternation graph has no edges")
    adj = csr_matrix((np.ones(graph.n_edges), (graph.src, graph.dst)), shape=(n, n))
    n_comp, labels = connected_components(adj, directed=True, connection="strong")
    inside = labels[graph.src] == labels[graph.dst]
    sizes = np.bincount(labels, minlength=n_comp)

    best = None
    for c in np.unique(labels[graph.src[inside]]):
        if sizes[c] < 2:
            continue
        members = np.flatnonzero(labels == c)
        local = np.full(n, -1, dtype=np.intp)
        local[members] = np.arange(members.size)
        sel = np.flatnonzero(inside & (labels[graph.src] == c))
        s, d, w = local[graph.src[sel]], local[graph.dst[sel]], graph.weight[sel]
        order = np.lexsort((s, d))
        s, d, w = s[order], d[order], w[order]
        lam, mean, cyc = _karp_component(s, d, w, members.size)
        if abs(mean - lam) > 1e-9 * max(1.0, abs(lam)):
            log.warning("witness cycle mean %.3g differs from DP optimum %.3g", mean, lam)
        cyc = [int(members[i]) for i in cyc]
        key = (lam, -min(cyc))
        if best is None or key > best[0]:
            best = (key, mean, cyc)
    if best is None:
        raise NoCycle("alternation graph is acyclic")
    return best[1], best[2]


def cycle_to_closed_path(cycle: list[int]) -> ClosedPath:
    """Closed path for a state cycle, starting at a state that leaves by an A-edge."""
    start = next(i for i, s in enumerate(cycle) if s % 2 == TAG_B)
    states = cycle[start:] + cycle[:start]
    return ClosedPath(tuple(s // 2 for s in states), "A")


@dataclass(frozen=True)
class SupResult:
    value: float
    witness: ClosedPath | None
    method: str

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "method": self.method,
        }


def _canonical_same_sign(cp: ClosedPath) -> ClosedPath:
    # even rotations keep the functional's sign
    options = [rotate_closed_path(cp, s) for s in range(0, len(cp.pts), 2)]
    return min(options, key=lambda r: r.pts)


def sup_closed_path(domain: SampledDomain, fvals) -> SupResult:
    """``sup_p |G_p(f)|`` over all closed paths of the domain, exactly.

    The sup over the empty family is 0 (no witness).
    """
    f = np.asarray(fvals, dtype=float)
    graph = build_alternation_graph(domain, f)
    try:
        mean, cycle = max_mean_cycle(graph)
    except NoCycle:
        return SupResult(0.0, None, "exact-mean-cycle")
    if mean <= 0.0:
        return SupResult(0.0, None, "exact-mean-cycle")
    witness = _canonical_same_sign(cycle_to_closed_path(cycle))
    value = path_functional(witness, f)
    return SupResult(max(value, 0.0), witness, "exact-mean-cycle")


def _enumerate_raw(domain: SampledDomain, max_len: int) -> Iterator[ClosedPath]:
    n = len(domain)
    members = {}
    for kind, levels in (("A", domain.a_level), ("B", domain.b_level)):
        groups: dict[int, list[int]] = {}
        for i, lv in enumerate(levels.tolist()):
            groups.setdefault(lv, []).append(i)
        members[kind] = [groups[lv] for lv in levels.tolist()]

    def neighbours(u, kind, floor):
        return [v for v in members[kind][u] if v != u and v >= floor]

    # the canonical representative starts at the path's smallest point
    for start in range(n):
        for first in ("A", "B"):
            stack = [(start, [start], first)]
            while stack:
                u, seq, kind = stack.pop()
                length = len(seq)
                nxt_kind = "B" if kind == "A" else "A"
                if length % 2 == 0:
                    # closing edge has the type opposite to ``first``
                    if kind != first and start in members[kind][u] and u != start:
                        yield ClosedPath(tuple(seq), first)
                if length >= max_len:
                    continue
                for v in reversed(neighbours(u, kind, start)):
                    stack.append((v, seq + [v], nxt_kind))


def enumerate_closed_paths(
    domain: SampledDomain, max_len: int, cap: int = ENUMERATION_CAP
) -> Iterator[ClosedPath]:
    """Every closed path of length <= ``max_len``, one per rotation/reversal class.

    Brute force; meant as an oracle for small domains. Raises
    :class:`CombinatorialBlowup` once more than ``cap`` closed walks were visited.
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    seen = 0
    emitted: list[ClosedPath] = []
    for cp in _enumerate_raw(domain, max_len):
        seen += 1
        if seen > cap:
            raise CombinatorialBlowup(
                f"more than {cap} closed walks up to length {max_len}", emitted
            )
        if canonical_closed_path(cp) == cp:
            emitted.append(cp)
            yield cp


def brute_force_sup(domain: SampledDomain, fvals, max_len: int) -> float:
    """Largest ``|G_p(f)|`` over enumerated closed paths (0 if none)."""
    f = np.asarray(fvals, dtype=float)
    return max(
        itertools.chain([0.0], (abs(path_functional(cp, f)) for cp in enumerate_closed_paths(domain, max_len)))
    )
