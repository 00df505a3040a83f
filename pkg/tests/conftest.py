import pytest

from ffdist import kernels
from ffdist.field import FieldParams, PointSet


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request, monkeypatch):
    """Route every kernel call through one backend for the duration of a test."""
    impl = kernels.BACKENDS[request.param]
    for name in ("count_chains", "count_paths", "first_path", "count_stars"):
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param


@pytest.fixture
def full32():
    return PointSet.full(FieldParams(3, 2))


# a seeded 10-point set in F_5^2; values below were checked by itertools enumeration
RANDOM10 = [0, 1, 2, 6, 7, 10, 14, 17, 18, 21]


@pytest.fixture
def random10():
    return PointSet.from_indices(FieldParams(5, 2), RANDOM10)
