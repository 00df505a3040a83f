import numpy as np
import pytest

from ffdist import kernels
from ffdist._kernels_py import count_chains, count_paths, count_stars, first_path
from ffdist.ensembles import EnsembleSpec, generate
from ffdist.field import FieldParams
from ffdist.graph import MAX_TABLE_VERTICES, distance_table
from ffdist.errors import ScaleGuardError
from ffdist.field import PointSet


def test_backend_is_known():
    assert kernels.BACKEND in kernels.BACKENDS
    assert "python" in kernels.BACKENDS


def test_distance_table_layout():
    E = PointSet.full(FieldParams(3, 2))
    table = distance_table(E)
    assert table.n == 9
    assert table.degree(1).tolist() == [4] * 9
    assert table.max_degree((1, 2)) == 4
    for v in range(9):
        row = table.nbr[v]
        assert sorted(row.tolist()) == list(range(9))
        assert all(table.dist[v, u] == 1 for u in table.neighbors(v, 1))


def test_distance_table_guard():
    assert MAX_TABLE_VERTICES == 4096
    with pytest.raises(ScaleGuardError):
        distance_table(PointSet.full(FieldParams(3, 8)))


CASES = [
    ((5, 2), 18, 11, (1, 2, 1)),
    ((3, 3), 20, 12, (1, 1)),
    ((7, 2), 25, 13, (3, 5)),
    ((3, 4), 30, 14, (2, 1, 2)),
]


@pytest.mark.skipif("compiled" not in kernels.BACKENDS, reason="extension not built")
@pytest.mark.parametrize("qd,size,seed,ts", CASES)
def test_compiled_matches_python(qd, size, seed, ts):
    compiled = kernels.BACKENDS["compiled"]
    E = generate(EnsembleSpec("random_size", seed=seed, size=size), FieldParams(*qd))
    t = distance_table(E)
    arr = np.array(ts, dtype=np.int32)
    assert compiled.count_chains(t.nbr, t.off, arr) == count_chains(t.nbr, t.off, arr)
    assert np.array_equal(compiled.count_paths(t.nbr, t.off, arr), count_paths(t.nbr, t.off, arr))
    assert np.array_equal(compiled.count_stars(t.nbr, t.off, arr), count_stars(t.nbr, t.off, arr))
    a, b = compiled.first_path(t.nbr, t.off, arr), first_path(t.nbr, t.off, arr)
    assert (None if a is None else list(a)) == (None if b is None else list(b))


def test_pure_python_env_switch():
    import subprocess
    import sys
    out = subprocess.run(
        [sys.executable, "-c", "import ffdist; print(ffdist.BACKEND)"],
        env={"FFDIST_PURE_PYTHON": "1", "PATH": ""}, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
