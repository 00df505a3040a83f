"""Seeded generators for the sets E and the fixed acceptance corpus.

Randomness comes from SplitMix64 (Steele, Lea & Flood), a 64-bit generator
whose whole definition is the three constants below, so an EnsembleSpec
produces the same set on every platform and NumPy version.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .field import FieldParams, PointSet, coordinates, norm_table

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

KINDS = ("random_density", "random_size", "subspace", "sphere_union", "product", "full", "explicit")
CORPUS_VERSION = "standard-v1"


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next()
            if r < limit:
                return r % n

    def uniform(self) -> float:
        """Uniform float in ``[0, 1)`` with 53 random bits."""
        return (self.next() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    seed: int = 0
    size: int = None
    density: float = None
    codim: int = 1
    ts: tuple = ()
    factor_size: int = None
    points: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "ts", tuple(int(t) for t in self.ts))
        object.__setattr__(self, "points", tuple(tuple(int(c) for c in p) for p in self.points))

    def to_dict(self) -> dict:
        """Only the fields that differ from their defaults, plus ``kind`` and ``seed``."""
        base = EnsembleSpec(self.kind)
        out = {"kind": self.kind, "seed": self.seed}
        for key, value in asdict(self).items():
            if key not in out and value != getattr(base, key):
                out[key] = [list(p) for p in value] if key == "points" else (
                    list(value) if isinstance(value, tuple) else value)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "EnsembleSpec":
        known = {"kind", "seed", "size", "density", "codim", "ts", "factor_size", "points"}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown ensemble fields: {sorted(extra)}")
        data = dict(data)
        for key in ("ts", "points"):
            if key in data:
                data[key] = tuple(tuple(p) if key == "points" else p for p in data[key])
        return cls(**data)

    def describe(self) -> str:
        parts = [self.kind]
        for key, value in self.to_dict().items():
            if key not in ("kind", "points"):
                parts.append(f"{key}={value}")
        if self.points:
            parts.append(f"points={len(self.points)}")
        return " ".join(str(p) for p in parts)


def generate(spec: EnsembleSpec, params: FieldParams) -> PointSet:
    n = params.size
    kind = spec.kind
    if kind == "full":
        return PointSet.full(params)
    if kind == "random_size":
        if spec.size is None or not 0 <= spec.size <= n:
            raise ValueError(f"random_size needs 0 <= size <= {n}, got {spec.size}")
        order = SplitMix64(spec.seed).shuffle(list(range(n)))
        return PointSet.from_indices(params, order[:spec.size])
    if kind == "random_density":
        if spec.density is None or not 0.0 <= spec.density <= 1.0:
            raise ValueError(f"random_density needs 0 <= density <= 1, got {spec.density}")
        rng = SplitMix64(spec.seed)
        return PointSet(params, [rng.uniform() < spec.density for _ in range(n)])
    if kind == "subspace":
        if not 0 <= spec.codim <= params.d:
            raise ValueError(f"subspace needs 0 <= codim <= {params.d}, got {spec.codim}")
        x = coordinates(params)
        mask = np.all(x[:, params.d - spec.codim:] == 0, axis=1)
        return PointSet(params, mask)
    if kind == "sphere_union":
        if not spec.ts:
            raise ValueError("sphere_union needs at least one radius in ts")
        norms = norm_table(params)
        return PointSet(params, np.isin(norms, [t % params.q for t in spec.ts]))
    if kind == "product":
        a = spec.factor_size if spec.factor_size is not None else (params.q + 1) // 2
        if not 0 <= a <= params.q:
            raise ValueError(f"product needs 0 <= factor_size <= {params.q}, got {a}")
        factor = sorted(SplitMix64(spec.seed).shuffle(list(range(params.q)))[:a])
        mask = np.all(np.isin(coordinates(params), factor), axis=1)
        return PointSet(params, mask)
    if kind == "explicit":
        for p in spec.points:
            if len(p) != params.d or any(not 0 <= c < params.q for c in p):
                raise ValueError(f"explicit point {p} is not a reduced vector in {params}")
        return PointSet.from_points(params, spec.points)
    raise AssertionError(kind)


def random_function(params: FieldParams, seed: int, high: int = None) -> np.ndarray:
    """Seeded nonnegative function: integers in ``[0, high)`` or, if ``high`` is None, reals in ``[0, 1)``."""
    rng = SplitMix64(seed)
    if high is None:
        return np.array([rng.uniform() for _ in range(params.size)], dtype=np.float64)
    return np.array([rng.below(high) for _ in range(params.size)], dtype=np.int64)


@dataclass(frozen=True)
class CorpusEntry:
    key: str
    params: FieldParams
    spec: EnsembleSpec
    conditional: bool = False

    def build(self) -> PointSet:
        return generate(self.spec, self.params)


def _seed(q, d, tag) -> int:
    return (q * 1_000_003 + d * 10_007 + tag) & _MASK


def corpus(name: str = "standard") -> list:
    """The versioned acceptance corpus.

    Exhaustive-bound sets cover q in {3,5,7,11,13} and d in {2,3}; the
    conditional sets live in d in {4,5,6} over F_3 where the size
    hypotheses can actually be met.
    """
    if name != "standard":
        raise ValueError(f"unknown corpus {name!r}")
    out = []
    for q in (3, 5, 7, 11, 13):
        for d in (2, 3):
            p = FieldParams(q, d)
            n = p.size
            specs = [
                EnsembleSpec("full"),
                EnsembleSpec("random_size", seed=_seed(q, d, 1), size=max(1, n // 4)),
                EnsembleSpec("random_density", seed=_seed(q, d, 2), density=0.5),
                EnsembleSpec("subspace", codim=1),
                EnsembleSpec("sphere_union", ts=(1,)),
                EnsembleSpec("product", seed=_seed(q, d, 3)),
            ]
            out.extend(CorpusEntry(_key(p, s), p, s) for s in specs)
    conditional = [
        (FieldParams(3, 4), EnsembleSpec("random_size", seed=_seed(3, 4, 1), size=60)),
        (FieldParams(3, 4), EnsembleSpec("random_size", seed=_seed(3, 4, 2), size=50)),
        (FieldParams(3, 4), EnsembleSpec("full")),
        (FieldParams(3, 4), EnsembleSpec("subspace", codim=1)),
        (FieldParams(3, 5), EnsembleSpec("random_size", seed=_seed(3, 5, 1), size=200)),
        (FieldParams(3, 5), EnsembleSpec("full")),
        (FieldParams(3, 6), EnsembleSpec("random_size", seed=_seed(3, 6, 1), size=600)),
        (FieldParams(3, 6), EnsembleSpec("full")),
    ]
    out.extend(CorpusEntry(_key(p, s), p, s, conditional=True) for p, s in conditional)
    return out


def _key(params: FieldParams, spec: EnsembleSpec) -> str:
    tag = spec.kind
    if spec.kind == "random_size":
        tag += f"-{spec.size}"
    elif spec.kind == "random_density":
        tag += f"-{spec.density}"
    elif spec.kind == "subspace":
        tag += f"-codim{spec.codim}"
    elif spec.kind == "sphere_union":
        tag += "-" + "+".join(str(t) for t in spec.ts)
    return f"q{params.q:02d}-d{params.d}-{tag}"


def hypothesis_sizes(params: FieldParams, k: int) -> dict:
    """Size thresholds of the conditional statements at ``(q, d, k)``."""
    q, d = params.q, params.d
    return {
        "chains": 2 * k / math.log(2) * q ** ((d + 1) / 2),
        "paths": 4 * k / math.log(2) * q ** ((d + 1) / 2),
        "stars_1": 12 * q ** ((d + 1) / 2),
        "stars_2": 12 * q ** ((d + 3) / 2),
    }
