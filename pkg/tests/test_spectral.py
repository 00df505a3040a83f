import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ffdist import faults, spectral
from ffdist.ensembles import random_function
from ffdist.errors import DegenerateDistanceError
from ffdist.field import FieldParams, character, coordinates, norm_table

SMALL = [(3, 1), (3, 2), (5, 2), (3, 3), (7, 2)]


def legendre(a, q):
    a %= q
    if a == 0:
        return 0
    return 1 if pow(a, (q - 1) // 2, q) == 1 else -1


def test_dft_of_delta():
    p = FieldParams(3, 2)
    f = np.zeros(9)
    f[0] = 1
    assert np.allclose(spectral.dft(f, p), 1 / 9)


def test_dft_matches_definition_pointwise():
    p = FieldParams(5, 2)
    f = random_function(p, seed=11)
    x = coordinates(p)
    fhat = spectral.dft(f, p)
    for m in (0, 3, 17, 24):
        ref = sum(character(-int(x[m] @ x[i]), 5) * f[i] for i in range(p.size)) / p.size
        assert abs(fhat[m] - ref) < 1e-12


@pytest.mark.parametrize("q,d", SMALL)
def test_fast_equals_direct_and_inverts(q, d):
    p = FieldParams(q, d)
    f = random_function(p, seed=q * 10 + d)
    fhat = spectral.dft(f, p)
    assert np.max(np.abs(fhat - spectral.dft_direct(f, p))) < 1e-12
    assert np.max(np.abs(spectral.inverse_dft(fhat, p) - f)) < 1e-12
    assert spectral.plancherel_defect(f, p) < 1e-12


def test_direct_accepts_batches():
    p = FieldParams(3, 2)
    batch = np.stack([random_function(p, seed=s) for s in range(4)], axis=1)
    out = spectral.dft_direct(batch, p)
    for j in range(4):
        assert np.allclose(out[:, j], spectral.dft(batch[:, j], p))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 2 ** 32))
def test_real_input_has_conjugate_symmetry(qd, seed):
    p = FieldParams(*qd)
    fhat = spectral.dft(random_function(p, seed), p)
    neg = [int(np.ravel_multi_index(tuple((-c) % p.q for c in x), (p.q,) * p.d, order="F"))
           for x in coordinates(p)]
    assert np.allclose(fhat[neg], np.conj(fhat), atol=1e-12)


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13])
def test_sphere_size_in_the_plane(q):
    # |S_t| = q - legendre(-1) for t != 0 when d = 2
    p = FieldParams(q, 2)
    for t in range(1, q):
        assert spectral.sphere(t, p).size == q - legendre(-1, q)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_sphere_size_in_space(q):
    # |S_t| = q^2 + q * legendre(-t) when d = 3
    p = FieldParams(q, 3)
    for t in range(1, q):
        assert spectral.sphere(t, p).size == q * q + q * legendre(-t, q)


def test_sphere_sizes_frozen():
    assert [spectral.sphere(t, FieldParams(5, 3)).size for t in range(5)] == [25, 30, 20, 20, 30]
    s = spectral.sphere(4, FieldParams(3, 2))
    assert s.t == 1 and not s.degenerate and s.size == 4
    assert spectral.sphere(0, FieldParams(3, 2)).degenerate


def test_sphere_decay_small_case():
    rep = spectral.sphere_decay_report(1, FieldParams(3, 2))
    assert rep.sphere_size == 4
    assert rep.zero_frequency == pytest.approx(4 / 9)
    # the largest nontrivial coefficient sits at m = (1,1); (1,0) gives 1/9
    assert rep.max_nontrivial == pytest.approx(2 / 9, abs=1e-15)
    assert rep.argmax == 4
    assert rep.bound == pytest.approx(2 / 3 ** 1.5)
    assert rep.holds and 0 < rep.ratio < 1
    shat = spectral.dft(spectral.sphere(1, FieldParams(3, 2)).mask.astype(float), FieldParams(3, 2))
    assert abs(shat[1]) == pytest.approx(1 / 9)


def test_degenerate_distance_rejected():
    with pytest.raises(DegenerateDistanceError):
        spectral.sphere_decay_report(0, FieldParams(3, 2))
    with pytest.raises(DegenerateDistanceError):
        spectral.require_nonzero(1, 5, q=5)


def test_fault_changes_membership():
    p = FieldParams(3, 2)
    with faults.inject("sphere-off-by-one"):
        assert spectral.sphere(1, p).size == 5
    assert spectral.sphere(1, p).size == 4
    with pytest.raises(ValueError):
        with faults.inject("no-such-fault"):
            pass


@pytest.mark.parametrize("q,d", [(3, 2), (5, 2), (3, 3)])
def test_convolutions_agree(q, d):
    p = FieldParams(q, d)
    f = random_function(p, 1, high=4)
    g = random_function(p, 2, high=3)
    direct = spectral.convolve(f, g, p)
    assert direct.dtype.kind == "i"
    assert np.allclose(direct, spectral.convolve_spectral(f, g, p))
    s = spectral.sphere(1, p).mask.astype(np.int64)
    assert np.array_equal(spectral.convolve_with_sphere(f, 1, p), spectral.convolve(f, s, p))


def test_convolve_with_sphere_counts_neighbours():
    p = FieldParams(3, 2)
    ones = np.ones(9, dtype=np.int64)
    assert spectral.convolve_with_sphere(ones, 1, p).tolist() == [4] * 9


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (3, 3)]), st.integers(0, 2 ** 32), st.integers(1, 12))
def test_bilinear_form_exact_and_bounded(qd, seed, t):
    p = FieldParams(*qd)
    t = t % p.q or 1
    f = random_function(p, seed, high=3)
    g = random_function(p, seed + 1, high=3)
    rep = spectral.bilinear_distance_form(f, g, t, p)
    assert rep.total == spectral.bilinear_bruteforce(f, g, t, p)
    assert rep.holds
    assert rep.total == pytest.approx(rep.main_term + rep.remainder)


def test_bilinear_real_inputs():
    p = FieldParams(5, 2)
    f, g = random_function(p, 3), random_function(p, 4)
    rep = spectral.bilinear_distance_form(f, g, 2, p)
    assert rep.total == pytest.approx(spectral.bilinear_bruteforce(f, g, 2, p), rel=1e-12)
    assert rep.holds


def test_bilinear_rejects_negative_and_zero_t():
    p = FieldParams(3, 2)
    f = np.ones(9)
    with pytest.raises(ValueError):
        spectral.bilinear_distance_form(-f, f, 1, p)
    with pytest.raises(DegenerateDistanceError):
        spectral.bilinear_distance_form(f, f, 3, p)


def test_norm_table_partition():
    p = FieldParams(7, 2)
    total = sum(spectral.sphere(t, p).size for t in range(7))
    assert total == p.size == norm_table(p).size
