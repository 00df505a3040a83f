"""Degrees, degree tails, and k-stars in the distance graph of E.

A k-star of type ``t`` is a tuple ``(x, x^1, ..., x^k)`` of points of E with
``||x - x^i|| = t_i`` and pairwise distinct leaves ``x^i``.  The center
differs from every leaf automatically because ``t_i != 0``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._num import leq
from .chains import chain_type
from .errors import ScaleGuardError
from .field import PointSet, coordinates
from .graph import WORK_LIMIT, check_budget, distance_table
from .spectral import convolve_with_sphere


@dataclass(frozen=True, eq=False)
class DegreeProfile:
    """``h[j]`` holds ``h_j(x) = #{y in E : ||x - y|| = j}`` for x in E (ascending index)."""

    size: int
    vertices: np.ndarray
    h: dict = field(repr=False)

    def tail(self, j: int, n: int) -> int:
        """``H_n = #{x in E : h_j(x) >= n}``."""
        return int(np.count_nonzero(self.h[j] >= n))

    def tails(self, j: int) -> np.ndarray:
        """``[H_0, H_1, ..., H_{max+1}]`` for distance ``j``, via one sort."""
        hs = np.sort(self.h[j])
        top = int(hs[-1]) if hs.size else 0
        n = np.arange(top + 2)
        return hs.size - np.searchsorted(hs, n, side="left")

    def degree_sum(self, j: int) -> int:
        return int(self.h[j].sum())


def degree_profile(E: PointSet) -> DegreeProfile:
    e = E.indicator()
    h = {}
    for j in range(1, E.params.q):
        h[j] = convolve_with_sphere(e, j, E.params)[E.indices]
    return DegreeProfile(len(E), E.indices, h)


@dataclass(frozen=True)
class TailReport:
    j: int
    n: int
    tail: int
    bound: float
    holds: bool


def tail_bound(size: int, n: int, params) -> float:
    q, d = params.q, params.d
    return size - 10.0 * q ** ((d + 1) / 2) - 2.0 * q * n


def verify_tail_bound(E: PointSet, n: int, j: int = 1, profile: DegreeProfile = None) -> TailReport:
    """``H_n >= |E| - 10 q^((d+1)/2) - 2qn`` for the degree at distance ``j``."""
    profile = profile or degree_profile(E)
    hn = profile.tail(j, n)
    bound = tail_bound(len(E), n, E.params)
    return TailReport(j, n, hn, bound, leq(bound, hn))


@dataclass(frozen=True)
class StarSpec:
    """A star type grouped by distance: ``groups = ((j, multiplicity), ...)``."""

    groups: tuple

    @classmethod
    def from_types(cls, ts, q: int) -> "StarSpec":
        ts = chain_type(ts, q)
        return cls(tuple(sorted(Counter(ts).items())))

    @property
    def k(self) -> int:
        return sum(m for _, m in self.groups)

    @property
    def ts(self) -> tuple:
        return tuple(j for j, m in self.groups for _ in range(m))


def _falling(n: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= n - i
    return max(out, 0)


def star_count_exact(E: PointSet, ts, limit=WORK_LIMIT) -> int:
    """Enumerate ordered distinct leaf tuples around every center."""
    spec = StarSpec.from_types(ts, E.params.q)
    if len(E) == 0:
        return 0
    table = distance_table(E)
    work = sum(
        float(np.prod([float(table.degree(j)[x]) ** m for j, m in spec.groups]))
        for x in range(table.n)
    )
    check_budget(work, limit, "star enumeration")
    per_center = kernels.count_stars(table.nbr, table.off, np.array(spec.ts, dtype=np.int32))
    return int(per_center.sum())


def star_count_formula(E: PointSet, ts, profile: DegreeProfile = None) -> int:
    """``sum_x prod_j h_j(x) (h_j(x) - 1) ... (h_j(x) - m_j + 1)``."""
    spec = StarSpec.from_types(ts, E.params.q)
    profile = profile or degree_profile(E)
    total = 0
    for i in range(len(E)):
        term = 1
        for j, m in spec.groups:
            term *= _falling(int(profile.h[j][i]), m)
        total += term
    return total


def star_count_multiset(E: PointSet, ts, profile: DegreeProfile = None) -> int:
    """Leaf tuples without the distinctness condition, ``sum_x prod_j h_j(x)^m_j``."""
    spec = StarSpec.from_types(ts, E.params.q)
    profile = profile or degree_profile(E)
    return sum(
        int(np.prod([int(profile.h[j][i]) ** m for j, m in spec.groups], dtype=object))
        for i in range(len(E))
    )


def star_count_bruteforce(E: PointSet, ts, limit=WORK_LIMIT) -> int:
    """Test oracle: every (k+1)-tuple of E, distances from coordinates."""
    ts = chain_type(ts, E.params.q)
    k = len(ts)
    check_budget(float(len(E)) ** (k + 1), limit, "star brute force")
    pts = [tuple(int(c) for c in row) for row in coordinates(E.params)[E.indices]]
    q = E.params.q

    def dist(a, b):
        return sum((u - v) ** 2 for u, v in zip(a, b)) % q

    total = 0
    for x in pts:
        for leaves in itertools.product(pts, repeat=k):
            if len(set(leaves)) == k and all(dist(x, y) == t for y, t in zip(leaves, ts)):
                total += 1
    return total


def pigeonhole_certificate(E: PointSet, spec: StarSpec, profile: DegreeProfile = None):
    """First center (point index) with ``h_j(x) >= m_j`` for every group, or ``None``."""
    profile = profile or degree_profile(E)
    ok = np.ones(len(E), dtype=bool)
    for j, m in spec.groups:
        ok &= profile.h[j] >= m
    hit = np.flatnonzero(ok)
    return int(profile.vertices[hit[0]]) if hit.size else None


@dataclass(frozen=True)
class StarReport:
    ts: tuple
    size: int
    count: int          # -1 when only the certificate was evaluated
    method: str         # "exact" or "certificate"
    positive: bool
    threshold_1: float  # 12 q^((d+1)/2)
    limit_1: float      # |E| / (12 q^((d+1)/2))
    applies_1: bool
    threshold_2: float  # 12 q^((d+3)/2)
    limit_2: float      # |E| / (12 q)
    applies_2: bool
    second_moment: int
    second_moment_estimate: float

    @property
    def k(self) -> int:
        return len(self.ts)

    @property
    def holds_1(self) -> bool:
        return self.positive or not self.applies_1

    @property
    def holds_2(self) -> bool:
        return self.positive or not self.applies_2

    @property
    def vacuous(self) -> bool:
        return not (self.applies_1 or self.applies_2)

    @property
    def violated(self) -> bool:
        return not (self.holds_1 and self.holds_2)


def verify_star_theorem(E: PointSet, ts, limit=WORK_LIMIT) -> StarReport:
    spec = StarSpec.from_types(ts, E.params.q)
    ts = chain_type(ts, E.params.q)
    q, d = E.params.q, E.params.d
    size = len(E)
    k = len(ts)
    profile = degree_profile(E)
    try:
        count = star_count_exact(E, ts, limit)
        method = "exact"
        positive = count > 0
    except ScaleGuardError:
        count = -1
        method = "certificate"
        positive = pigeonhole_certificate(E, spec, profile) is not None
    thr1 = 12.0 * q ** ((d + 1) / 2)
    thr2 = 12.0 * q ** ((d + 3) / 2)
    h1 = profile.h.get(1, np.zeros(0, dtype=np.int64))
    moment = int(np.dot(h1, h1))
    moment_est = (size ** 3 + 6.0 * q ** ((d + 1) / 2) * size ** 2) / q ** 2
    lim1 = size / thr1
    lim2 = size / (12.0 * q)
    return StarReport(
        ts=ts, size=size, count=count, method=method, positive=positive,
        threshold_1=thr1, limit_1=lim1, applies_1=size > thr1 and k < lim1,
        threshold_2=thr2, limit_2=lim2, applies_2=size > thr2 and k < lim2,
        second_moment=moment, second_moment_estimate=moment_est,
    )
