"""Arithmetic in F_q and the point set F_q^d.

Points are addressed by a little-endian mixed-radix index,
``index = sum(coords[i] * q**i)``, so every function on F_q^d is a dense
array of length ``q**d``.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in range(3, math.isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldParams:
    """Modulus ``q`` (an odd prime) and dimension ``d``."""

    q: int
    d: int

    def __post_init__(self):
        if not isinstance(self.q, int) or not isinstance(self.d, int):
            raise TypeError("q and d must be integers")
        if self.q < 3 or not is_prime(self.q):
            raise ValueError(f"q must be an odd prime, got {self.q}")
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.q ** self.d > sys.maxsize:
            raise ValueError(f"q**d = {self.q}**{self.d} exceeds the index range")

    @property
    def size(self) -> int:
        """Number of points, ``q**d``."""
        return self.q ** self.d

    def __str__(self):
        return f"F_{self.q}^{self.d}"


@dataclass(frozen=True)
class Point:
    coords: tuple
    params: FieldParams

    def __post_init__(self):
        if len(self.coords) != self.params.d:
            raise ValueError(f"expected {self.params.d} coordinates, got {len(self.coords)}")
        q = self.params.q
        object.__setattr__(self, "coords", tuple(int(c) % q for c in self.coords))

    def __sub__(self, other: "Point") -> "Point":
        return Point(tuple(a - b for a, b in zip(self.coords, other.coords)), self.params)

    def __add__(self, other: "Point") -> "Point":
        return Point(tuple(a + b for a, b in zip(self.coords, other.coords)), self.params)

    def __neg__(self) -> "Point":
        return Point(tuple(-a for a in self.coords), self.params)


def norm(x: Point) -> int:
    """Quadratic form ``x_1^2 + ... + x_d^2`` reduced mod q."""
    return sum(c * c for c in x.coords) % x.params.q


def dot(x: Point, y: Point) -> int:
    return sum(a * b for a, b in zip(x.coords, y.coords)) % x.params.q


def character(a: int, q: int) -> complex:
    """Additive character ``e^{2 pi i a / q}``."""
    theta = 2.0 * math.pi * (a % q) / q
    return complex(math.cos(theta), math.sin(theta))


@lru_cache(maxsize=64)
def character_table(q: int) -> np.ndarray:
    """``table[a] = character(a, q)`` for ``a`` in ``range(q)``; read-only."""
    table = np.array([character(a, q) for a in range(q)], dtype=np.complex128)
    table.setflags(write=False)
    return table


def point_index(x: Point) -> int:
    q = x.params.q
    idx = 0
    for c in reversed(x.coords):
        idx = idx * q + c
    return idx


def index_point(i: int, params: FieldParams) -> Point:
    if not 0 <= i < params.size:
        raise IndexError(f"index {i} out of range for {params}")
    coords = []
    for _ in range(params.d):
        i, c = divmod(i, params.q)
        coords.append(c)
    return Point(tuple(coords), params)


@lru_cache(maxsize=32)
def coordinates(params: FieldParams) -> np.ndarray:
    """``(q**d, d)`` array whose row ``i`` is the coordinate vector of index ``i``."""
    idx = np.arange(params.size, dtype=np.int64)
    out = np.empty((params.size, params.d), dtype=np.int64)
    for axis in range(params.d):
        out[:, axis] = idx % params.q
        idx //= params.q
    out.setflags(write=False)
    return out


@lru_cache(maxsize=32)
def norm_table(params: FieldParams) -> np.ndarray:
    """``norm`` evaluated at every index."""
    x = coordinates(params)
    out = (x * x).sum(axis=1) % params.q
    out.setflags(write=False)
    return out


def indices_of(coords: np.ndarray, params: FieldParams) -> np.ndarray:
    """Vectorized ``point_index`` for an ``(n, d)`` coordinate array."""
    coords = np.asarray(coords, dtype=np.int64) % params.q
    weights = params.q ** np.arange(params.d, dtype=np.int64)
    return coords @ weights


def cube(values: np.ndarray, params: FieldParams) -> np.ndarray:
    """View a length ``q**d`` array as a ``(q,)*d`` array indexed by coordinates."""
    return np.reshape(values, (params.q,) * params.d, order="F")


def flat(values: np.ndarray) -> np.ndarray:
    """Inverse of :func:`cube`."""
    return np.reshape(values, -1, order="F")


class PointSet:
    """A subset of F_q^d stored as a boolean mask over point indices."""

    def __init__(self, params: FieldParams, mask):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (params.size,):
            raise ValueError(f"mask must have shape ({params.size},), got {mask.shape}")
        self.params = params
        self.mask = mask.copy()
        self.mask.setflags(write=False)
        self.indices = np.flatnonzero(self.mask)
        self.indices.setflags(write=False)

    @classmethod
    def from_indices(cls, params: FieldParams, indices) -> "PointSet":
        mask = np.zeros(params.size, dtype=bool)
        idx = np.asarray(list(indices), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= params.size):
            raise IndexError("point index out of range")
        mask[idx] = True
        return cls(params, mask)

    @classmethod
    def from_points(cls, params: FieldParams, points) -> "PointSet":
        pts = [p.coords if isinstance(p, Point) else tuple(p) for p in points]
        if any(len(p) != params.d for p in pts):
            raise ValueError(f"every point needs {params.d} coordinates")
        if not pts:
            return cls.empty(params)
        return cls.from_indices(params, indices_of(np.array(pts), params))

    @classmethod
    def full(cls, params: FieldParams) -> "PointSet":
        return cls(params, np.ones(params.size, dtype=bool))

    @classmethod
    def empty(cls, params: FieldParams) -> "PointSet":
        return cls(params, np.zeros(params.size, dtype=bool))

    def __len__(self):
        return int(self.indices.size)

    def __contains__(self, x) -> bool:
        i = point_index(x) if isinstance(x, Point) else int(x)
        return bool(self.mask[i])

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash((self.params, self.mask.tobytes()))

    def __repr__(self):
        return f"PointSet({self.params}, |E|={len(self)})"

    def points(self) -> list:
        return [index_point(int(i), self.params) for i in self.indices]

    def with_index(self, i: int) -> "PointSet":
        mask = self.mask.copy()
        mask[i] = True
        return PointSet(self.params, mask)

    def indicator(self, dtype=np.int64) -> np.ndarray:
        return self.mask.astype(dtype)
