"""Chain counts ``C_k(t)`` and the inequalities they satisfy.

A chain of type ``t = (t_1, ..., t_k)`` is an ordered tuple
``(x^1, ..., x^{k+1})`` of points of E with ``||x^i - x^{i+1}|| = t_i``;
vertices may repeat.  The counts come from the profile recursion
``f_0 = E``, ``f_i = (f_{i-1} * S_{t_i}) E`` with ``C_k = ||f_k||_1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from ._num import leq, ln2_const
from .field import PointSet
from .graph import WORK_LIMIT, check_budget, distance_table
from .spectral import convolve_with_sphere, require_nonzero, sphere

_INT64_SAFE = 2 ** 62


def chain_type(ts, q: int) -> tuple:
    """Normalize a distance sequence to residues, rejecting zeros."""
    ts = tuple(int(t) % q for t in ts)
    if not ts:
        raise ValueError("a chain type needs at least one distance")
    require_nonzero(*ts)
    return ts


def _profile_dtype(E: PointSet, ts):
    bound = len(E)
    for t in ts:
        bound *= sphere(t, E.params).size
    return np.int64 if bound < _INT64_SAFE else object


def chain_profiles(E: PointSet, ts) -> list:
    """``[f_0, f_1, ..., f_k]``; exact integers (object dtype if int64 could overflow)."""
    ts = chain_type(ts, E.params.q)
    dtype = _profile_dtype(E, ts)
    e = E.indicator(dtype)
    profiles = [e]
    for t in ts:
        profiles.append(convolve_with_sphere(profiles[-1], t, E.params) * e)
    return profiles


def _total(f) -> int:
    return int(sum(int(v) for v in f)) if f.dtype == object else int(f.sum())


def chain_count_dp(E: PointSet, ts):
    """Return ``(C_k, f_k)``."""
    fk = chain_profiles(E, ts)[-1]
    return _total(fk), fk


def chain_count_oracle(E: PointSet, ts, limit=WORK_LIMIT) -> int:
    """Exhaustive count over (k+1)-tuples of E.

    Tuples are enumerated depth-first and abandoned at the first distance
    that fails, so the result is the full tuple count; the work guard is
    applied to the unpruned size ``|E|^(k+1)``.
    """
    ts = chain_type(ts, E.params.q)
    check_budget(float(len(E)) ** (len(ts) + 1), limit, "chain oracle")
    if len(E) == 0:
        return 0
    table = distance_table(E)
    return int(kernels.count_chains(table.nbr, table.off, np.array(ts, dtype=np.int32)))


def unit_chain_counts(E: PointSet, n: int) -> list:
    """``[C_0, C_1, ..., C_n]`` for the all-ones type, with ``C_0 = |E|``."""
    if n == 0:
        return [len(E)]
    return [_total(f) for f in chain_profiles(E, (1,) * n)]


def main_term(size: int, k: int, q: int) -> Fraction:
    return Fraction(size ** (k + 1), q ** k)


def chain_bound_constant(k: int, params) -> float:
    """``(2k / ln 2) q^((d+1)/2)``: both the size threshold and the bound's prefactor."""
    return ln2_const(k) * params.q ** ((params.d + 1) / 2)


@dataclass(frozen=True)
class ChainCountReport:
    ts: tuple
    size: int
    count: int
    main_term: float
    discrepancy: float
    stated_bound: float
    hypothesis_met: bool
    holds: bool

    @property
    def k(self) -> int:
        return len(self.ts)

    @property
    def positive(self) -> bool:
        return self.count > 0

    @property
    def violated(self) -> bool:
        return self.hypothesis_met and not (self.holds and self.positive)


def verify_main_theorem(E: PointSet, ts) -> ChainCountReport:
    ts = chain_type(ts, E.params.q)
    k = len(ts)
    q = E.params.q
    c, _ = chain_count_dp(E, ts)
    main = main_term(len(E), k, q)
    disc = Fraction(c) - main
    const = chain_bound_constant(k, E.params)
    bound = const * len(E) ** k / q ** k
    return ChainCountReport(
        ts=ts,
        size=len(E),
        count=c,
        main_term=float(main),
        discrepancy=float(disc),
        stated_bound=bound,
        hypothesis_met=len(E) > const,
        holds=leq(abs(disc), bound),
    )


@dataclass(frozen=True)
class RecurrenceReport:
    k: int
    odd_remainder: float
    odd_bound: float
    odd_holds: bool
    even_remainder: float
    even_bound: float
    even_holds: bool

    @property
    def holds(self) -> bool:
        return self.odd_holds and self.even_holds


def verify_recurrences(E: PointSet, max_k: int) -> list:
    """Check both remainder bounds of the odd/even chain recursions for k = 1..max_k."""
    if max_k < 1:
        return []
    q, d = E.params.q, E.params.d
    c = unit_chain_counts(E, 2 * max_k + 1)
    scale = 2.0 * q ** ((d - 1) / 2)
    out = []
    for k in range(1, max_k + 1):
        r_odd = Fraction(c[2 * k + 1]) - Fraction(c[k] ** 2, q)
        r_even = Fraction(c[2 * k]) - Fraction(c[k] * c[k - 1], q)
        odd_bound = scale * c[2 * k]
        even_bound = scale * math.sqrt(c[2 * k]) * math.sqrt(c[2 * k - 2])
        out.append(RecurrenceReport(
            k,
            float(r_odd), odd_bound, leq(abs(r_odd), odd_bound),
            float(r_even), even_bound, leq(abs(r_even), even_bound),
        ))
    return out


def l2_identity(E: PointSet, k: int):
    """``(||f_k||_2^2, C_{2k})`` for the all-ones type; the two must agree."""
    profiles = chain_profiles(E, (1,) * (2 * k)) if k else [E.indicator()]
    fk = profiles[k]
    sq = int(sum(int(v) * int(v) for v in fk)) if fk.dtype == object else int(np.dot(fk, fk))
    return sq, _total(profiles[2 * k]) if k else len(E)


@dataclass(frozen=True)
class UpperBoundReport:
    n: int
    count: int
    bound: float
    holds: bool

    @property
    def margin(self) -> float:
        return self.bound - self.count


def verify_upper_bound(E: PointSet, n: int) -> UpperBoundReport:
    """``C_n <= |E| X^n`` with ``X = (|E| + 2 q^((d+1)/2)) / q``."""
    q, d = E.params.q, E.params.d
    c = unit_chain_counts(E, n)[-1]
    x = (len(E) + 2.0 * q ** ((d + 1) / 2)) / q
    bound = len(E) * x ** n
    return UpperBoundReport(n, c, bound, leq(c, bound))


@dataclass(frozen=True)
class LowerBoundReport:
    n: int
    count: int
    bound: float
    hypothesis_met: bool
    holds: bool

    @property
    def vacuous(self) -> bool:
        return not self.hypothesis_met

    @property
    def violated(self) -> bool:
        return self.hypothesis_met and not self.holds


def verify_lower_bound(E: PointSet, n: int) -> LowerBoundReport:
    q = E.params.q
    c = unit_chain_counts(E, n)[-1]
    const = chain_bound_constant(n, E.params)
    size = len(E)
    bound = float(main_term(size, n, q)) - const * size ** n / q ** n
    return LowerBoundReport(n, c, bound, size > const, leq(bound, c))
