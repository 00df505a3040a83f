"""Pairwise-distance tables for the distance graph of a set E.

Vertices of E get local ids ``0..|E|-1`` in ascending point-index order.
Distances are evaluated from coordinates, independently of the sphere
tables used by the convolution code.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ScaleGuardError
from .field import PointSet, coordinates

#: Largest |E| for which the dense |E| x |E| tables are built.
MAX_TABLE_VERTICES = 4096
#: Default work budget for exhaustive enumerations.
WORK_LIMIT = 10 ** 8


@dataclass(frozen=True, eq=False)
class DistanceTable:
    vertices: np.ndarray  # local id -> point index
    dist: np.ndarray      # (n, n) int32, ||x - y||
    nbr: np.ndarray       # (n, n) int32, each row sorted by (distance, id)
    off: np.ndarray       # (n, q + 1) int32, block starts per distance

    @property
    def n(self) -> int:
        return int(self.vertices.size)

    def degree(self, t: int) -> np.ndarray:
        """Number of same-set neighbors at distance ``t``, per local id."""
        return self.off[:, t + 1] - self.off[:, t]

    def max_degree(self, ts) -> int:
        if self.n == 0:
            return 0
        return max(int(self.degree(t).max()) for t in set(ts))

    def neighbors(self, v: int, t: int) -> np.ndarray:
        return self.nbr[v, self.off[v, t]:self.off[v, t + 1]]


def pairwise_norms(coords: np.ndarray, q: int) -> np.ndarray:
    n = coords.shape[0]
    out = np.empty((n, n), dtype=np.int32)
    for start in range(0, n, 256):
        diff = coords[start:start + 256, None, :] - coords[None, :, :]
        out[start:start + 256] = (diff * diff).sum(axis=2) % q
    return out


@lru_cache(maxsize=16)
def distance_table(E: PointSet) -> DistanceTable:
    n = len(E)
    if n > MAX_TABLE_VERTICES:
        raise ScaleGuardError(f"|E| = {n} exceeds the dense-table limit {MAX_TABLE_VERTICES}")
    q = E.params.q
    dist = pairwise_norms(coordinates(E.params)[E.indices], q)
    nbr = np.ascontiguousarray(np.argsort(dist, axis=1, kind="stable"), dtype=np.int32)
    off = np.zeros((n, q + 1), dtype=np.int32)
    for t in range(q):
        off[:, t + 1] = off[:, t] + (dist == t).sum(axis=1)
    for a in (dist, nbr, off):
        a.setflags(write=False)
    return DistanceTable(E.indices, dist, nbr, off)


def check_budget(estimate, limit, what: str):
    if estimate > limit:
        raise ScaleGuardError(f"{what}: estimated work {estimate:.3g} exceeds the limit {limit:.3g}")
