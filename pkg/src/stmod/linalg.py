"""Exact dense linear algebra over a prime field F_p.

Matrices are plain ``int64`` numpy arrays with entries reduced into [0, p).
Row reduction is deterministic: the pivot in each column is the first
nonzero entry at or below the current row. For p = 2 rows are bit-packed
into 64-bit words and reduced with word-parallel XOR.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels

MAX_PRIME = 97


def is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not (2 <= self.p <= MAX_PRIME and is_prime(self.p)):
            raise ValueError(f"p must be a prime in [2, {MAX_PRIME}], got {self.p}")

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)


@lru_cache(maxsize=None)
def _inv(p):
    t = _kernels.inverse_table(p)
    t.setflags(write=False)
    return t


def check_prime(p):
    PrimeField(p)
    return p


def as_matrix(A, p, shape=None):
    """Coerce to a reduced int64 matrix (copying)."""
    M = np.array(A, dtype=np.int64)
    if shape is not None:
        M = M.reshape(shape)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {M.shape}")
    return M % p


def mul(A, B, p):
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def identity(n):
    return np.eye(n, dtype=np.int64)


def zeros(m, n):
    return np.zeros((m, n), dtype=np.int64)


def _rref_inplace(A, p):
    if A.size == 0:
        return A, 0, np.zeros(0, dtype=np.int64)
    if p == 2:
        W = _kernels.pack_gf2(A)
        rank, piv = _kernels.rref_gf2(W, A.shape[1])
        return _kernels.unpack_gf2(W, A.shape[1]), int(rank), piv
    rank, piv = _kernels.rref_modp(A, p, _inv(p))
    return A, int(rank), piv


def rref(A, p):
    """Reduced row echelon form.

    Returns ``(R, rank, pivots)`` where ``pivots`` are the pivot column indices.
    """
    R = as_matrix(A, p)
    R, rank, piv = _rref_inplace(R, p)
    return R, rank, [int(c) for c in piv]


def rank(A, p):
    return rref(A, p)[1]


def _kernel_from_rref(R, piv, n, p):
    ps = set(piv)
    free = [c for c in range(n) if c not in ps]
    K = np.zeros((n, len(free)), dtype=np.int64)
    if free:
        fr = np.array(free)
        K[fr, np.arange(len(free))] = 1
        if piv:
            K[np.array(piv)] = (-R[: len(piv)][:, fr]) % p
    return K, free


def kernel_with_free(A, p):
    """Kernel basis as columns plus the free column indices.

    Vector j is 1 at the j-th free column and 0 at the other free columns,
    so the kernel coordinates of any kernel vector v are v[free].
    """
    A = as_matrix(A, p)
    R, _, piv = rref(A, p)
    return _kernel_from_rref(R, piv, A.shape[1], p)


def kernel_basis(A, p):
    """Basis of the right kernel {x : A x = 0}, as the columns of an (n, k) matrix."""
    return kernel_with_free(A, p)[0]


def solve(A, B, p):
    """Solve A X = B.

    Returns ``(X, N)``: X is the particular solution with all free variables
    zero (or None when the system is inconsistent) and N is a kernel basis of
    A as columns.
    """
    A = as_matrix(A, p)
    B = as_matrix(B, p)
    if A.shape[0] != B.shape[0]:
        raise ValueError(f"row mismatch: A has {A.shape[0]} rows, B has {B.shape[0]}")
    n = A.shape[1]
    R, r, piv = rref(np.hstack([A, B]), p)
    apiv = [c for c in piv if c < n]
    N, _ = _kernel_from_rref(R, apiv, n, p)
    if len(apiv) < len(piv):
        return None, N
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    for i, c in enumerate(apiv):
        X[c] = R[i, n:]
    return X, N


def row_basis(A, p):
    """Basis of the row space (nonzero rows of the RREF)."""
    R, r, _ = rref(A, p)
    return R[:r]


def independent_columns(A, p):
    """Indices of a greedy (leftmost) maximal independent set of columns."""
    return rref(A, p)[2]


def inverse(A, p):
    A = as_matrix(A, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    X, _ = solve(A, identity(n), p)
    if X is None or rank(A, p) < n:
        raise ValueError("matrix is singular")
    return X


def is_invertible(A, p):
    A = np.asarray(A)
    return A.shape[0] == A.shape[1] and rank(A, p) == A.shape[0]


def batch_invertible(stack, p):
    """Invertibility flags for a (B, n, n) stack of matrices."""
    stack = np.ascontiguousarray(np.asarray(stack, dtype=np.int64) % p)
    if stack.shape[1] == 0:
        return np.ones(stack.shape[0], dtype=bool)
    return np.asarray(_kernels.batch_full_rank(stack, p, _inv(p)))


def in_span(rows, v, p):
    """Whether vector v lies in the row span of ``rows``."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, np.size(v))
    r0 = rank(rows, p) if rows.shape[0] else 0
    r1 = rank(np.vstack([rows, np.asarray(v, dtype=np.int64).reshape(1, -1)]), p)
    return r0 == r1


def coordinates(basis_cols, V, p):
    """Coordinates C with basis_cols @ C = V; raises if V is not in the span."""
    X, _ = solve(basis_cols, V, p)
    if X is None:
        raise ValueError("vector not in span")
    return X


def nullity(A, p):
    A = np.asarray(A)
    return A.shape[1] - rank(A, p)
