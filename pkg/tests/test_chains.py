import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ffdist import chains, spectral
from ffdist.ensembles import EnsembleSpec, generate
from ffdist.errors import DegenerateDistanceError, ScaleGuardError
from ffdist.field import FieldParams, PointSet, norm


def brute_chains(E, ts):
    pts = E.points()
    return sum(
        1 for tup in itertools.product(pts, repeat=len(ts) + 1)
        if all(norm(a - b) == t for a, b, t in zip(tup, tup[1:], ts))
    )


def test_chain_type_normalizes_and_rejects_zero():
    assert chains.chain_type([4, 1, 7], 3) == (1, 1, 1)
    with pytest.raises(DegenerateDistanceError):
        chains.chain_type([1, 3], 3)
    with pytest.raises(ValueError):
        chains.chain_type([], 3)


def test_full_plane_values(full32, backend):
    assert chains.chain_count_dp(full32, (1,))[0] == 36
    assert chains.chain_count_dp(full32, (1, 1, 1))[0] == 576
    assert chains.chain_count_oracle(full32, (1, 1, 1)) == 576
    assert chains.unit_chain_counts(full32, 4) == [9 * 4 ** k for k in range(5)]


def test_profiles_follow_the_recursion(full32):
    profiles = chains.chain_profiles(full32, (1, 2))
    assert [int(f.sum()) for f in profiles] == [9, 36, 144]
    assert np.array_equal(profiles[0], full32.indicator())


def test_random_set_frozen(random10, backend):
    counts = [chains.chain_count_dp(random10, (1,) * k)[0] for k in range(1, 5)]
    assert counts == [16, 34, 68, 160]
    assert chains.chain_count_dp(random10, (1, 2, 3))[0] == 33
    assert chains.chain_count_oracle(random10, (1, 2, 3)) == 33


def test_sphere_pairs_at_unit_distance(backend):
    p = FieldParams(3, 2)
    S1 = spectral.sphere(1, p).as_pointset()
    assert chains.chain_count_oracle(S1, (1,)) == brute_chains(S1, (1,))
    assert chains.chain_count_dp(S1, (1,))[0] == brute_chains(S1, (1,))


def test_degenerate_sets(backend):
    p = FieldParams(3, 2)
    one = PointSet.from_indices(p, [4])
    empty = PointSet.empty(p)
    for E in (one, empty):
        assert chains.chain_count_dp(E, (1, 2))[0] == 0
        assert chains.chain_count_oracle(E, (1, 2)) == 0


def test_oracle_scale_guard():
    E = PointSet.full(FieldParams(3, 4))
    with pytest.raises(ScaleGuardError):
        chains.chain_count_oracle(E, (1, 1, 1, 1, 1))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(0, 2 ** 32), st.integers(1, 25),
       st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_dp_equals_oracle(q, seed, n, raw):
    p = FieldParams(q, 2)
    E = generate(EnsembleSpec("random_size", seed=seed, size=min(n, p.size)), p)
    ts = tuple(t % q or 1 for t in raw)
    c, fk = chains.chain_count_dp(E, ts)
    assert c == chains.chain_count_oracle(E, ts) == int(fk.sum())
    # a chain read backwards is a chain of the reversed type
    assert c == chains.chain_count_dp(E, ts[::-1])[0]


def test_adding_points_never_decreases_counts():
    p = FieldParams(5, 2)
    order = generate(EnsembleSpec("random_size", seed=9, size=25), p).indices.tolist()
    prev = [0, 0, 0]
    for n in range(1, 26, 3):
        E = PointSet.from_indices(p, order[:n])
        now = [chains.chain_count_dp(E, ts)[0] for ts in ((1,), (1, 2), (2, 1, 3))]
        assert all(a >= b for a, b in zip(now, prev))
        prev = now


@pytest.mark.parametrize("k", [1, 2, 3])
def test_l2_identity(random10, full32, k):
    for E in (random10, full32):
        sq, c2k = chains.l2_identity(E, k)
        assert sq == c2k


def test_main_theorem_on_the_plane(full32):
    rep = chains.verify_main_theorem(full32, (1,))
    assert rep.main_term == 27
    assert rep.discrepancy == 9
    assert rep.stated_bound == pytest.approx(2 / math.log(2) * 3 ** 1.5 * 9 / 3, rel=1e-12)
    assert rep.stated_bound == pytest.approx(44.97, abs=0.01)
    assert not rep.hypothesis_met and rep.holds and not rep.violated


def test_main_theorem_hypothesis_met():
    p = FieldParams(3, 4)
    E = generate(EnsembleSpec("random_size", seed=5, size=60), p)
    rep = chains.verify_main_theorem(E, (1,))
    assert rep.hypothesis_met
    assert rep.holds and rep.positive and not rep.violated
    assert chains.chain_bound_constant(1, p) == pytest.approx(44.98, abs=0.01)


def test_main_theorem_empty():
    rep = chains.verify_main_theorem(PointSet.empty(FieldParams(3, 2)), (1, 1))
    assert rep.count == 0 and rep.main_term == 0 and rep.discrepancy == 0
    assert rep.holds and not rep.hypothesis_met


def test_recurrences_on_the_plane(full32):
    (r,) = chains.verify_recurrences(full32, 1)
    assert r.odd_remainder == 144
    assert r.odd_bound == pytest.approx(2 * math.sqrt(3) * 144)
    assert r.even_remainder == 36
    assert r.even_bound == pytest.approx(2 * math.sqrt(3) * 36)
    assert r.holds


def test_recurrences_single_point():
    E = PointSet.from_indices(FieldParams(3, 2), [0])
    assert all(r.holds and r.odd_remainder == 0 for r in chains.verify_recurrences(E, 2))


def test_upper_bound():
    full = PointSet.full(FieldParams(3, 2))
    rep = chains.verify_upper_bound(full, 1)
    assert rep.count == 36
    assert rep.bound == pytest.approx(9 * (9 + 2 * 3 ** 1.5) / 3)
    assert rep.holds
    assert chains.verify_upper_bound(PointSet.empty(FieldParams(3, 2)), 1).holds
    E = generate(EnsembleSpec("random_size", seed=1, size=12), FieldParams(5, 2))
    assert all(chains.verify_upper_bound(E, n).holds for n in range(1, 5))


def test_lower_bound():
    p = FieldParams(3, 4)
    full = chains.verify_lower_bound(PointSet.full(p), 1)
    assert full.hypothesis_met and full.holds and not full.vacuous
    E = generate(EnsembleSpec("random_size", seed=2, size=60), p)
    rep = chains.verify_lower_bound(E, 1)
    assert rep.count >= 60 ** 2 / 3 - 2 / math.log(2) * 3 ** 2.5 * 60 / 3
    small = chains.verify_lower_bound(PointSet.full(FieldParams(3, 2)), 1)
    assert small.vacuous and not small.violated
