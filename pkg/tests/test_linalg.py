from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from stmod import _kernels as K
from stmod import linalg as la

PRIMES = [2, 3, 5, 7]


def span_size(A, p):
    """Brute-force size of the row space: enumerate all combinations."""
    A = np.asarray(A, dtype=np.int64)
    seen = set()
    for c in product(range(p), repeat=A.shape[0]):
        seen.add(tuple((np.array(c) @ A) % p))
    return len(seen)


@st.composite
def matrices(draw, max_rows=5, max_cols=6, primes=PRIMES):
    p = draw(st.sampled_from(primes))
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    A = draw(hnp.arrays(np.int64, (m, n), elements=st.integers(0, p - 1)))
    return A, p


@given(matrices(max_rows=4, max_cols=5, primes=[2, 3]))
def test_rank_matches_row_space_enumeration(args):
    A, p = args
    assert p ** la.rank(A, p) == span_size(A, p)


@given(matrices())
def test_rref_is_reduced_and_idempotent(args):
    A, p = args
    R, r, piv = la.rref(A, p)
    assert not R[r:].any()
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
        assert not R[i, :c].any()
    R2, r2, piv2 = la.rref(R, p)
    assert r2 == r and piv2 == piv and np.array_equal(R2, R)


@given(matrices())
def test_kernel_is_annihilated_and_complete(args):
    A, p = args
    N = la.kernel_basis(A, p)
    assert N.shape == (A.shape[1], A.shape[1] - la.rank(A, p))
    assert not la.mul(A, N, p).any()
    if N.shape[1]:
        assert la.rank(N, p) == N.shape[1]


@given(matrices(), st.integers(0, 2**31))
def test_solve_recovers_consistent_systems(args, seed):
    A, p = args
    x = np.random.default_rng(seed).integers(0, p, size=(A.shape[1], 2))
    B = la.mul(A, x, p)
    X, N = la.solve(A, B, p)
    assert X is not None
    assert np.array_equal(la.mul(A, X, p), B)


def test_solve_detects_inconsistency():
    A = np.array([[1, 1], [2, 2]])
    X, N = la.solve(A, np.array([[1], [0]]), 3)
    assert X is None
    assert N.shape == (2, 1)


@given(st.sampled_from(PRIMES), st.integers(1, 6), st.integers(0, 2**31))
def test_inverse_roundtrip(p, n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, p, size=(n, n))
    if la.rank(A, p) < n:
        with pytest.raises(ValueError):
            la.inverse(A, p)
        return
    B = la.inverse(A, p)
    assert np.array_equal(la.mul(A, B, p), np.eye(n, dtype=np.int64))


def test_inverse_rejects_singular_and_nonsquare():
    with pytest.raises(ValueError):
        la.inverse(np.array([[1, 2], [2, 4]]), 5)
    with pytest.raises(ValueError):
        la.inverse(np.ones((2, 3)), 5)


def test_independent_columns_leftmost():
    A = np.array([[1, 2, 0, 1], [0, 0, 1, 1]])
    assert la.independent_columns(A, 3) == [0, 2]


def test_coordinates_and_span():
    B = np.array([[1, 0], [1, 1], [0, 1]])
    v = la.mul(B, np.array([[2], [1]]), 3)
    assert np.array_equal(la.coordinates(B, v, 3), [[2], [1]])
    assert la.in_span(B.T, v[:, 0], 3)
    assert not la.in_span(B.T[:1], v[:, 0], 3)
    with pytest.raises(ValueError):
        la.coordinates(B[:, :1], np.array([[0], [1], [0]]), 3)


def test_empty_inputs():
    assert la.rank(np.zeros((0, 3), dtype=np.int64), 5) == 0
    assert la.kernel_basis(np.zeros((0, 3), dtype=np.int64), 5).shape == (3, 3)


def test_batch_invertible_agrees_with_rank(rng):
    for p in (2, 3, 5):
        X = rng.integers(0, p, size=(200, 4, 4))
        flags = la.batch_invertible(X, p)
        assert list(flags) == [la.rank(A, p) == 4 for A in X]


def test_bad_prime_rejected():
    with pytest.raises(ValueError):
        la.check_prime(4)


# numba and numpy kernels side by side


needs_numba = pytest.mark.skipif(K.rref_modp_nb is None, reason="numba not installed")


@needs_numba
@given(matrices(max_rows=12, max_cols=14, primes=[3, 5, 7, 11]))
def test_rref_kernels_agree(args):
    A, p = args
    inv = K.inverse_table(p)
    A1, A2 = A.copy(), A.copy()
    r1, piv1 = K.rref_modp_np(A1, p, inv)
    r2, piv2 = K.rref_modp_nb(A2, p, inv)
    assert r1 == r2 and np.array_equal(piv1, piv2) and np.array_equal(A1, A2)


@needs_numba
@given(matrices(max_rows=20, max_cols=140, primes=[2]))
def test_gf2_kernels_agree(args):
    A, _ = args
    W1 = K.pack_gf2(A)
    W2 = W1.copy()
    r1, piv1 = K.rref_gf2_np(W1, A.shape[1])
    r2, piv2 = K.rref_gf2_nb(W2, A.shape[1])
    assert r1 == r2 and np.array_equal(piv1, piv2) and np.array_equal(W1, W2)
    R = K.unpack_gf2(W1, A.shape[1])
    R_ref = A.copy()
    K.rref_modp_np(R_ref, 2, K.inverse_table(2))
    assert np.array_equal(R, R_ref)


@needs_numba
@given(st.sampled_from([2, 3, 5]), st.integers(1, 6), st.integers(0, 2**31))
def test_batch_rank_kernels_agree(p, n, seed):
    X = np.random.default_rng(seed).integers(0, p, size=(30, n, n)).astype(np.int64)
    inv = K.inverse_table(p)
    assert np.array_equal(K.batch_full_rank_np(X.copy(), p, inv), K.batch_full_rank_nb(X.copy(), p, inv))


def test_pack_roundtrip(rng):
    A = rng.integers(0, 2, size=(7, 130))
    assert np.array_equal(K.unpack_gf2(K.pack_gf2(A), 130), A)


def test_numpy_fallback_in_subprocess():
    import os
    import subprocess
    import sys

    code = "from stmod import _kernels as K; print(K.USE_NUMBA, K.rref_modp is K.rref_modp_np)"
    env = dict(os.environ, STMOD_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "True"]
