"""Fourier analysis on F_q^d, spheres, and the bilinear distance form.

The transform is normalized as ``fhat(m) = q^-d sum_x chi(-m.x) f(x)`` with
inversion ``f(x) = sum_m fhat(m) chi(m.x)``.  Convolution is unnormalized,
``(f*g)(x) = sum_y f(y) g(x-y)``, so the transform of ``f*g`` is
``q^d * fhat * ghat``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import faults
from ._num import leq
from .errors import DegenerateDistanceError
from .field import FieldParams, PointSet, character_table, coordinates, cube, flat, norm_table

_DIRECT_BLOCK = 256


def _axis_matrix(q: int, sign: int) -> np.ndarray:
    m = np.arange(q)
    return character_table(q)[(sign * np.outer(m, m)) % q]


def dft(f, params: FieldParams) -> np.ndarray:
    """Fast transform: one length-q character pass per axis, O(d q^(d+1))."""
    q, d = params.q, params.d
    w = _axis_matrix(q, -1) / q
    a = cube(np.asarray(f, dtype=np.complex128), params)
    for axis in range(d):
        a = np.moveaxis(np.tensordot(w, a, axes=([1], [axis])), 0, axis)
    return flat(a)


def inverse_dft(spectrum, params: FieldParams) -> np.ndarray:
    q, d = params.q, params.d
    w = _axis_matrix(q, 1)
    a = cube(np.asarray(spectrum, dtype=np.complex128), params)
    for axis in range(d):
        a = np.moveaxis(np.tensordot(w, a, axes=([1], [axis])), 0, axis)
    return flat(a)


def dft_direct(f, params: FieldParams) -> np.ndarray:
    """O(q^2d) evaluation straight from the definition.

    ``f`` may carry a trailing batch axis, shape ``(q**d, B)``.
    """
    q = params.q
    x = coordinates(params)
    table = character_table(q)
    f = np.asarray(f, dtype=np.complex128)
    out = np.empty(f.shape, dtype=np.complex128)
    for start in range(0, params.size, _DIRECT_BLOCK):
        rows = x[start:start + _DIRECT_BLOCK]
        phase = (-(rows @ x.T)) % q
        out[start:start + _DIRECT_BLOCK] = table[phase] @ f
    return out / params.size


def plancherel_defect(f, params: FieldParams) -> float:
    f = np.asarray(f, dtype=np.float64)
    fhat = dft(f, params)
    lhs = float(np.sum(np.abs(fhat) ** 2))
    rhs = float(np.sum(f * f)) / params.size
    return abs(lhs - rhs)


def sphere_mask(t: int, params: FieldParams) -> np.ndarray:
    """Boolean membership of ``S_t = {x : ||x|| = t}`` over all indices."""
    norms = norm_table(params)
    mask = norms == (t % params.q)
    if faults.active("sphere-off-by-one"):
        extra = np.flatnonzero(norms == (t + 1) % params.q)
        if extra.size:
            mask = mask.copy()
            mask[extra[0]] = True
    return mask


@dataclass(frozen=True)
class SphereSet:
    t: int
    params: FieldParams
    mask: np.ndarray

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.mask))

    @property
    def degenerate(self) -> bool:
        return self.t % self.params.q == 0

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def as_pointset(self) -> PointSet:
        return PointSet(self.params, self.mask)


def sphere(t: int, params: FieldParams) -> SphereSet:
    t = t % params.q
    return SphereSet(t, params, sphere_mask(t, params))


def require_nonzero(*ts, q=None):
    for t in ts:
        if (t % q if q else t) == 0:
            raise DegenerateDistanceError("distance t = 0 is excluded (every estimate needs t != 0)")


@dataclass(frozen=True)
class SphereDecayReport:
    t: int
    sphere_size: int
    max_nontrivial: float
    argmax: int
    zero_frequency: float
    bound: float
    holds: bool

    @property
    def ratio(self) -> float:
        """Observed maximum as a fraction of the stated bound."""
        return self.max_nontrivial / self.bound


def sphere_decay_report(t: int, params: FieldParams) -> SphereDecayReport:
    require_nonzero(t, q=params.q)
    s = sphere(t, params)
    shat = np.abs(dft(s.mask.astype(np.float64), params))
    zero = float(shat[0])
    shat[0] = -1.0
    m = int(np.argmax(shat))
    peak = float(shat[m]) if params.size > 1 else 0.0
    bound = 2.0 * params.q ** (-(params.d + 1) / 2)
    return SphereDecayReport(s.t, s.size, peak, m, zero, bound, leq(peak, bound))


def _shift_sum(f, offsets, weights, params: FieldParams):
    """``sum_s w_s * f(x - s)`` over the given offset indices."""
    fc = cube(np.asarray(f), params)
    coords = coordinates(params)
    acc = np.zeros_like(fc)
    axes = tuple(range(params.d))
    for s, w in zip(offsets, weights):
        shifted = np.roll(fc, tuple(int(c) for c in coords[s]), axis=axes)
        acc += shifted if w == 1 else w * shifted
    return flat(acc)


def convolve(f, g, params: FieldParams):
    """Direct convolution; integer inputs give exact integer outputs."""
    f = np.asarray(f)
    g = np.asarray(g)
    if np.count_nonzero(f) <= np.count_nonzero(g):
        f, g = g, f
    support = np.flatnonzero(g)
    return _shift_sum(f, support, g[support], params)


def convolve_with_sphere(f, t: int, params: FieldParams):
    """``(f * S_t)(x)``: the sum of ``f`` over the sphere of radius ``t`` centred at ``x``."""
    offsets = sphere(t, params).indices
    return _shift_sum(f, offsets, np.ones(offsets.size, dtype=np.int64), params)


def convolve_spectral(f, g, params: FieldParams) -> np.ndarray:
    prod = params.size * dft(f, params) * dft(g, params)
    return inverse_dft(prod, params).real


@dataclass(frozen=True)
class BilinearReport:
    t: int
    total: float
    main_term: float
    remainder: float
    stated_bound: float
    holds: bool


def _l1_l2(f):
    f = np.asarray(f)
    if f.dtype.kind in "iub" or f.dtype == object:
        l1 = int(sum(int(v) for v in f.ravel()))
        sq = int(sum(int(v) * int(v) for v in f.ravel()))
        return l1, math.sqrt(sq)
    return float(f.sum()), math.sqrt(float((f * f).sum()))


def bilinear_distance_form(f, g, t: int, params: FieldParams) -> BilinearReport:
    """``sum_{x,y} f(x) g(y) S_t(x-y)`` split into main term and remainder."""
    require_nonzero(t, q=params.q)
    f = np.asarray(f)
    g = np.asarray(g)
    if (f < 0).any() or (g < 0).any():
        raise ValueError("f and g must be nonnegative")
    gs = convolve_with_sphere(g, t, params)
    if f.dtype.kind in "iub" and gs.dtype.kind in "iub":
        total = int(np.dot(f.astype(object), gs.astype(object)))
    else:
        total = float(np.dot(f.astype(np.float64), gs.astype(np.float64)))
    f1, f2 = _l1_l2(f)
    g1, g2 = _l1_l2(g)
    size = sphere(t, params).size
    main = size / params.size * f1 * g1
    remainder = total - main
    bound = 2.0 * params.q ** ((params.d - 1) / 2) * f2 * g2
    return BilinearReport(t % params.q, total, main, remainder, bound, leq(abs(remainder), bound))


def bilinear_bruteforce(f, g, t: int, params: FieldParams):
    """Exhaustive double sum over the supports, distances from coordinates."""
    f = np.asarray(f)
    g = np.asarray(g)
    x = coordinates(params)
    fs = np.flatnonzero(f)
    gs = np.flatnonzero(g)
    exact = f.dtype.kind in "iub" and g.dtype.kind in "iub"
    fw = f[fs].astype(np.int64 if exact else np.float64)
    gw = g[gs].astype(np.int64 if exact else np.float64)
    total = 0
    for start in range(0, fs.size, _DIRECT_BLOCK):
        rows = fs[start:start + _DIRECT_BLOCK]
        diff = x[rows][:, None, :] - x[gs][None, :, :]
        hit = (diff * diff).sum(axis=2) % params.q == t % params.q
        part = fw[start:start + _DIRECT_BLOCK] @ (hit @ gw if exact else hit.astype(np.float64) @ gw)
        total += int(part) if exact else float(part)
    return total
