"""Non-overlapping paths in the distance graph of E.

Paths are ordered tuples of pairwise distinct points, so each undirected
path of length >= 1 is counted once per orientation, exactly as chains are.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from ._num import leq, ln2_const
from .chains import chain_type, main_term
from .errors import ScaleGuardError
from .field import FieldParams, PointSet, index_point, norm
from .graph import WORK_LIMIT, check_budget, distance_table
from .spectral import convolve_with_sphere


@dataclass(frozen=True, eq=False)
class PathProfile:
    ts: tuple
    g: np.ndarray  # paths beginning at each point index
    total: int

    @property
    def k(self) -> int:
        return len(self.ts)


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple
    ts: tuple

    def is_valid(self) -> bool:
        """Re-check distinctness and every edge length from coordinates."""
        v = self.vertices
        if len(v) != len(self.ts) + 1 or len(set(v)) != len(v):
            return False
        return all(norm(a - b) == t for a, b, t in zip(v, v[1:], self.ts))


def _search_estimate(table, ts) -> float:
    """Upper estimate of DFS work: every vertex times the tree below it."""
    deg = float(table.max_degree(ts))
    return table.n * sum(deg ** j for j in range(1, len(ts) + 1))


def nonoverlap_count(E: PointSet, ts, limit=WORK_LIMIT) -> PathProfile:
    ts = chain_type(ts, E.params.q)
    g = np.zeros(E.params.size, dtype=np.int64)
    if len(E) == 0:
        return PathProfile(ts, g, 0)
    table = distance_table(E)
    check_budget(_search_estimate(table, ts), limit, "path count")
    local = kernels.count_paths(table.nbr, table.off, np.array(ts, dtype=np.int32))
    g[table.vertices] = local
    return PathProfile(ts, g, int(local.sum()))


def extract_path(E: PointSet, ts, limit=WORK_LIMIT):
    """First non-overlapping path of type ``ts`` in ascending index order, or ``None``."""
    ts = chain_type(ts, E.params.q)
    if len(E) == 0:
        return None
    table = distance_table(E)
    check_budget(_search_estimate(table, ts), limit, "path search")
    found = kernels.first_path(table.nbr, table.off, np.array(ts, dtype=np.int32))
    if found is None:
        return None
    pts = tuple(index_point(int(table.vertices[v]), E.params) for v in found)
    return PathWitness(pts, ts)


@dataclass(frozen=True)
class PathRecurrenceReport:
    n: int
    next_count: int
    count: int
    weighted_edges: int
    rhs: int
    holds: bool


def verify_path_recurrence(E: PointSet, n: int, limit=WORK_LIMIT) -> PathRecurrenceReport:
    """``G_{n+1} >= -n G_n + sum_{x,y} g_n(x) E(y) S(x-y)`` for unit distances."""
    nxt = nonoverlap_count(E, (1,) * (n + 1), limit)
    if n == 0:
        g = E.indicator()
        cur = len(E)
    else:
        prof = nonoverlap_count(E, (1,) * n, limit)
        g, cur = prof.g, prof.total
    h = convolve_with_sphere(E.indicator(), 1, E.params)
    weighted = int(np.dot(g, h))
    rhs = -n * cur + weighted
    return PathRecurrenceReport(n, nxt.total, cur, weighted, rhs, nxt.total >= rhs)


def corollary_threshold(k: int, params: FieldParams) -> float:
    """``(4k / ln 2) q^((d+1)/2)``."""
    return 2 * ln2_const(k) * params.q ** ((params.d + 1) / 2)


@dataclass(frozen=True)
class CorollaryReport:
    ts: tuple
    size: int
    count: int
    bound: float
    threshold: float
    hypothesis_met: bool
    holds: bool

    @property
    def vacuous(self) -> bool:
        return not self.hypothesis_met

    @property
    def positive(self) -> bool:
        return self.count > 0

    @property
    def violated(self) -> bool:
        return self.hypothesis_met and not (self.holds and self.positive)


def verify_corollary_bound(E: PointSet, k: int = None, ts=None, limit=WORK_LIMIT) -> CorollaryReport:
    """Lower bound on ``G_k`` under ``|E| >= (4k / ln 2) q^((d+1)/2)``.

    The default type is all ones; pass ``ts`` for another type of the same length.
    """
    if ts is None:
        ts = (1,) * k
    ts = chain_type(ts, E.params.q)
    k = len(ts)
    q = E.params.q
    size = len(E)
    thr = corollary_threshold(k, E.params)
    count = nonoverlap_count(E, ts, limit).total if size else 0
    bound = float(main_term(size, k, q)) - thr * size ** k / q ** k
    return CorollaryReport(ts, size, count, bound, thr, size >= thr, leq(bound, count))


def observed_max_length(E: PointSet, t: int = 1, k_cap: int = 6, limit=WORK_LIMIT):
    """Longest non-overlapping constant-``t`` path found, searching k = 1..k_cap.

    Returns ``(length, exhausted)``; ``exhausted`` is False when the search
    stopped at the cap or at the work guard rather than at a missing path.
    """
    best = 0
    for k in range(1, k_cap + 1):
        try:
            w = extract_path(E, (t,) * k, limit)
        except ScaleGuardError:
            return best, False
        if w is None:
            return best, True
        best = k
    return best, False


def witness_points(w: PathWitness) -> list:
    return [list(p.coords) for p in w.vertices]

