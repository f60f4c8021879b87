import subprocess
import sys

import numpy as np
import pytest

from leibniz_rings import census as C
from leibniz_rings import fg_abelian as ab
from leibniz_rings import kernels
from leibniz_rings import ring as R

needs_numba = pytest.mark.skipif("numba" not in kernels.BACKENDS, reason="numba not installed")


def random_batch(rng, moduli, n, size):
    hi = np.where(np.asarray(moduli) > 0, moduli, 7)
    return rng.integers(-3, 1, size=(size, n, n, n)) + rng.integers(0, hi, size=(size, n, n, n))


@needs_numba
@pytest.mark.parametrize("moduli", [[4, 2], [3, 3], [2, 2, 2], [9], [12, 0], [0, 0]])
def test_mask_backends_agree(moduli, seed):
    rng = np.random.default_rng(seed)
    n = len(moduli)
    T = random_batch(rng, moduli, n, 400)
    # sprinkle in zero and valid tables so both outcomes occur
    T[:5] = 0
    a = kernels.left_leibniz_mask(T, moduli, backend="numba")
    b = kernels.left_leibniz_mask(T, moduli, backend="numpy")
    assert np.array_equal(a, b) and a[:5].all()


def test_mask_matches_exact_validator():
    g = ab.make_group([4, 2])
    T = C._decode(C._entry_candidates(g), 0, 4096, 2)
    mask = kernels.left_leibniz_mask(T, [4, 2])
    for t, m in zip(T, mask):
        r = R.LeibnizRing(g, tuple(tuple(tuple(int(v) for v in t[i, j]) for j in range(2)) for i in range(2)))
        assert R.is_left_leibniz(r) == bool(m)


@needs_numba
@pytest.mark.parametrize("factors", [[4, 2], [3, 3], [9, 3]])
def test_transport_backends_agree(factors):
    g = ab.make_group(factors)
    autos, inverses = C._aut_arrays(g)
    m = np.array(factors)
    for T in C.valid_tables(g)[:20]:
        a = kernels.transport_tables(T, autos, inverses, m, backend="numba")
        b = kernels.transport_tables(T, autos, inverses, m, backend="numpy")
        assert np.array_equal(a, b)


def test_transport_matches_exact_transport():
    g = ab.make_group([9, 3])
    autos, inverses = C._aut_arrays(g)
    for r in list(C.enumerate_left_leibniz(g))[:10]:
        batch = kernels.transport_tables(C._ring_array(r), autos, inverses, np.array([9, 3]))
        for P, T in zip(C.automorphisms(g)[:15], batch):
            assert C._ring_array(C.transport(r, P)).tolist() == T.tolist()


def test_keys_sort_like_tables():
    rng = np.random.default_rng(1)
    T = rng.integers(0, 3, size=(200, 2, 2, 2))
    w = kernels.table_weights([3, 3], 2)
    keys = kernels.table_keys(T, w)
    flat = [tuple(t.ravel()) for t in T]
    assert sorted(range(200), key=lambda i: keys[i]) == sorted(range(200), key=lambda i: flat[i])


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.left_leibniz_mask(np.zeros((1, 1, 1, 1)), [2], backend="cuda")


def test_env_flag_selects_backend():
    code = "from leibniz_rings import kernels; print(kernels.BACKEND)"
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env={"LEIBNIZ_RINGS_BACKEND": "numpy", "PATH": ""}
    )
    assert out.stdout.strip() == "numpy"
