import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conres import errors
from conres.linalg import (complete_orthonormal, index_set, kernel_basis, pseudoinverse, schur_complement,
                           schur_onto, spd_solve)
from helpers import assert_close
from strategies import connection_graphs


def _spd(rng, k):
    a = rng.normal(size=(k, k))
    return a @ a.T + k * np.eye(k)


def test_schur_of_2x2():
    m = np.array([[4.0, 2.0], [2.0, 3.0]])
    assert_close(schur_complement(m, [1]), [[4 - 4 / 3]], 1e-15)


def test_schur_onto_preserves_order(rng):
    m = _spd(rng, 5)
    a = schur_onto(m, [3, 0])
    b = schur_onto(m, [0, 3])
    assert_close(a, b[::-1, ::-1], 1e-12)


def test_index_set_validation():
    assert list(index_set([2, 0, 2], 4)) == [0, 2]
    with pytest.raises(errors.InvalidIndexSet):
        index_set([4], 4)


def test_singular_block_raises():
    m = np.zeros((3, 3))
    with pytest.raises(errors.SingularBlock):
        schur_complement(m, [1, 2])
    with pytest.raises(errors.SingularBlock):
        spd_solve(np.zeros((2, 2)), np.ones(2))


def test_pseudo_schur_matches_pinv_formula(rng):
    a = rng.normal(size=(4, 2))
    m = a @ a.T  # rank 2, singular in every 3x3 block
    keep, elim = [0], [1, 2, 3]
    expected = m[np.ix_(keep, keep)] - m[np.ix_(keep, elim)] @ np.linalg.pinv(m[np.ix_(elim, elim)]) @ m[np.ix_(elim, keep)]
    assert_close(schur_complement(m, elim, use_pseudo=True), expected, 1e-10)


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_pseudoinverse_penrose(k, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(k, max(1, k - 1)))
    m = a @ a.T
    p = pseudoinverse(m)
    assert_close(m @ p @ m, m, 1e-9 * max(1, np.abs(m).max()))
    assert_close(p @ m @ p, p, 1e-8 * max(1, np.abs(p).max()))


@given(connection_graphs(n_min=3, n_max=6, d_max=2))
def test_quotient_identity_nested(cg):
    L = cg.laplacian
    d = cg.d
    direct = schur_onto(L, [0, 1], d=d)
    nested = schur_onto(schur_onto(L, list(range(cg.n - 1)), d=d), [0, 1], d=d)
    assert_close(direct, nested, 1e-9)


def test_kernel_and_completion(rng):
    a = rng.normal(size=(5, 3))
    m = a @ a.T
    k = kernel_basis(m)
    assert k.shape == (5, 2)
    assert_close(m @ k, np.zeros((5, 2)), 1e-10)
    full = complete_orthonormal(k)
    assert_close(full[:, :2], k, 0)
    assert_close(full.T @ full, np.eye(5), 1e-12)
    with pytest.raises(errors.NotOrthonormalInput):
        complete_orthonormal(np.ones((3, 2)))
