import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ffdist import chains, stars
from ffdist.ensembles import EnsembleSpec, generate
from ffdist.field import FieldParams, PointSet


def test_degree_profile_full_plane(full32):
    prof = stars.degree_profile(full32)
    assert prof.h[1].tolist() == [4] * 9
    assert prof.tail(1, 4) == 9 and prof.tail(1, 5) == 0
    assert prof.tails(1).tolist() == [9, 9, 9, 9, 9, 0]


def test_degree_profile_single_point():
    prof = stars.degree_profile(PointSet.from_indices(FieldParams(5, 2), [3]))
    assert all(prof.tail(j, 1) == 0 for j in range(1, 5))


def test_degree_profile_random(random10):
    prof = stars.degree_profile(random10)
    assert prof.tails(1).tolist() == [10, 10, 4, 1, 1, 0]
    for j in range(1, 5):
        assert prof.degree_sum(j) == chains.chain_count_dp(random10, (j,))[0]
        tails = prof.tails(j)
        assert tails[0] == 10 and np.all(np.diff(tails) <= 0)


def test_tail_bound():
    full = PointSet.full(FieldParams(3, 2))
    rep = stars.verify_tail_bound(full, 4)
    assert rep.tail == 9
    assert rep.bound == pytest.approx(9 - 10 * 3 ** 1.5 - 24)
    assert rep.holds
    E = generate(EnsembleSpec("random_size", seed=6, size=150), FieldParams(7, 3))
    prof = stars.degree_profile(E)
    assert all(stars.verify_tail_bound(E, n, j, prof).holds for j in range(1, 7) for n in range(11))


def test_star_spec_groups():
    spec = stars.StarSpec.from_types((2, 1, 2, 4), 3)
    assert spec.k == 4
    assert spec.groups == ((1, 2), (2, 2))
    assert sorted(spec.ts) == [1, 1, 2, 2]


def test_full_plane_nu2(full32, backend):
    assert stars.star_count_exact(full32, (1, 1)) == 108
    assert stars.star_count_bruteforce(full32, (1, 1)) == 108
    assert stars.star_count_formula(full32, (1, 1)) == 108
    assert stars.star_count_multiset(full32, (1, 1)) == 144


def test_random_set_frozen(random10, backend):
    assert stars.star_count_exact(random10, (1, 2)) == 25
    assert stars.star_count_exact(random10, (2, 1)) == 25


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 16), st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_exact_matches_bruteforce_and_is_symmetric(seed, n, ts):
    E = generate(EnsembleSpec("random_size", seed=seed, size=n), FieldParams(5, 2))
    nu = stars.star_count_exact(E, ts)
    assert nu == stars.star_count_bruteforce(E, ts) == stars.star_count_formula(E, ts)
    assert nu <= stars.star_count_multiset(E, ts)
    for perm in set(itertools.permutations(ts)):
        assert stars.star_count_exact(E, perm) == nu


def test_single_point_has_no_stars(backend):
    E = PointSet.from_indices(FieldParams(3, 2), [2])
    assert stars.star_count_exact(E, (1,)) == 0
    assert stars.star_count_exact(E, (1, 2)) == 0


def test_star_theorem_vacuous_small():
    rep = stars.verify_star_theorem(PointSet.full(FieldParams(3, 4)), (1,))
    assert rep.threshold_1 == pytest.approx(12 * 3 ** 2.5)
    assert not rep.applies_1 and not rep.applies_2 and rep.vacuous


def test_star_theorem_statement_one():
    rep = stars.verify_star_theorem(PointSet.full(FieldParams(3, 6)), (1,))
    assert rep.applies_1 and rep.holds_1 and rep.positive
    assert not rep.violated
    assert rep.count > 0
