import numpy as np
import pytest
from hypothesis import given, strategies as st

from ffdist.field import (
    FieldParams, Point, PointSet, character, character_table, coordinates, dot, index_point,
    is_prime, norm, norm_table, point_index,
)

PRIMES = [3, 5, 7, 11, 13]


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("q,d", [(4, 2), (2, 2), (9, 1), (3, 0), (1, 1)])
def test_field_params_rejects(q, d):
    with pytest.raises(ValueError):
        FieldParams(q, d)


def test_field_params_overflow():
    with pytest.raises(ValueError):
        FieldParams(3, 60)


def test_point_reduces_and_norm():
    p = FieldParams(5, 2)
    x = Point((7, -1), p)
    assert x.coords == (2, 4)
    assert norm(x) == (4 + 16) % 5
    assert norm(Point((1, 2), p)) == 0  # isotropic: 1 + 4 = 0 mod 5


def test_point_arithmetic():
    p = FieldParams(3, 2)
    a, b = Point((1, 2), p), Point((2, 2), p)
    assert (a + b).coords == (0, 1)
    assert (a - b).coords == (2, 0)
    assert (-a).coords == (2, 1)
    assert dot(a, b) == (2 + 4) % 3


def test_character_is_root_of_unity():
    for q in PRIMES:
        assert abs(character(0, q) - 1) < 1e-15
        assert abs(character(q, q) - 1) < 1e-12
        assert abs(sum(character(a, q) for a in range(q))) < 1e-12
        table = character_table(q)
        assert np.allclose(table ** q, 1)


def test_index_is_little_endian():
    p = FieldParams(3, 2)
    assert point_index(Point((1, 0), p)) == 1
    assert point_index(Point((0, 1), p)) == 3
    assert index_point(5, p).coords == (2, 1)
    with pytest.raises(IndexError):
        index_point(9, p)


@given(st.sampled_from(PRIMES), st.integers(1, 3), st.data())
def test_index_roundtrip(q, d, data):
    p = FieldParams(q, d)
    i = data.draw(st.integers(0, p.size - 1))
    assert point_index(index_point(i, p)) == i


@pytest.mark.parametrize("q,d", [(3, 2), (5, 3), (7, 2)])
def test_tables_match_scalar_ops(q, d):
    p = FieldParams(q, d)
    x = coordinates(p)
    norms = norm_table(p)
    for i in range(0, p.size, 7):
        assert tuple(x[i]) == index_point(i, p).coords
        assert norms[i] == norm(index_point(i, p))
    assert not norms.flags.writeable


def test_pointset_basics():
    p = FieldParams(3, 2)
    E = PointSet.from_points(p, [(0, 0), (1, 2), (1, 2)])
    assert len(E) == 2
    assert Point((1, 2), p) in E and 7 in E and 5 not in E
    assert E.indices.tolist() == [0, 7]
    assert E == PointSet.from_indices(p, [7, 0])
    assert hash(E) == hash(PointSet.from_indices(p, [0, 7]))
    assert E.with_index(4).indices.tolist() == [0, 4, 7]
    assert E.indicator().sum() == 2
    assert len(PointSet.full(p)) == 9 and len(PointSet.empty(p)) == 0
    assert [pt.coords for pt in E.points()] == [(0, 0), (1, 2)]


def test_pointset_rejects_bad_mask():
    with pytest.raises(ValueError):
        PointSet(FieldParams(3, 2), [True] * 8)
