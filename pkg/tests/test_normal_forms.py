import math

from hypothesis import given
from hypothesis import strategies as st

from leibniz_rings.normal_forms import determinant, hermite_rows, identity, mat_mul, smith_normal_form


def check_snf(m, ncols):
    nf = smith_normal_form(m, ncols)
    rows = len(m)
    assert mat_mul(mat_mul(nf.left_transform, m, rows), nf.right_transform, ncols) == [list(r) for r in nf.normal]
    assert abs(determinant(nf.left_transform)) == 1
    assert abs(determinant(nf.right_transform)) == 1
    assert mat_mul(nf.right_transform, nf.right_inverse, ncols) == identity(ncols)
    d = nf.diagonal
    for i in range(rows):
        for j in range(ncols):
            if i != j:
                assert nf.normal[i][j] == 0
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return d


def test_snf_examples():
    assert check_snf([[2, 4], [6, 8]], 2) == [2, 4]
    assert check_snf(identity(3), 3) == [1, 1, 1]
    assert check_snf([[0, 0], [0, 0]], 2) == [0, 0]


def test_snf_rectangular():
    assert check_snf([[2, 0, 0], [0, 3, 0]], 3) == [1, 6]
    assert check_snf([[4], [6], [10]], 1) == [2]


small = st.integers(-12, 12)


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.tuples(st.just(c), st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))))
def test_snf_properties(case):
    ncols, m = case
    d = check_snf(m, ncols)
    if len(m) == ncols:
        assert abs(determinant(m)) == math.prod(d)


@given(st.lists(st.lists(small, min_size=3, max_size=3), max_size=5))
def test_hermite_shape(rows):
    h = hermite_rows(rows, 3)
    pivots = []
    for r in h:
        assert any(r)
        p = next(i for i, v in enumerate(r) if v)
        assert r[p] > 0
        pivots.append(p)
    assert pivots == sorted(set(pivots))
    for k, p in enumerate(pivots):
        for above in h[:k]:
            assert 0 <= above[p] < h[k][p]
    # same lattice: Hermite form of (rows + h) is h again
    assert hermite_rows(rows + h, 3) == h
