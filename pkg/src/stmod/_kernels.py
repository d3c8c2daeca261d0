"""Hot inner loops: row reduction mod p, bit-packed GF(2) reduction, batch rank.

Every kernel exists twice, a numba ``@njit`` version and a pure-numpy one.
The numba path is used when numba imports and ``STMOD_DISABLE_NUMBA`` is
unset (or "0"); set ``STMOD_DISABLE_NUMBA=1`` to force the numpy path.
Both paths are exported under explicit names so tests and the benchmark can
compare them directly.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

DISABLED = os.environ.get("STMOD_DISABLE_NUMBA", "0") not in ("", "0")
USE_NUMBA = numba is not None and not DISABLED


def inverse_table(p):
    """Multiplicative inverses mod p; entry 0 is 0."""
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


# --------------------------------------------------------------------------
# numpy implementations


def rref_modp_np(A, p, inv):
    """In-place RREF of an int64 matrix with entries in [0, p).

    Returns (rank, pivots). Pivot choice: first nonzero entry at or below the
    current row in the leftmost available column.
    """
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        a = A[r, c]
        if a != 1:
            A[r, c:] = (A[r, c:] * inv[a]) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = (A[rows, c:] + (p - col[rows])[:, None] * A[r, c:]) % p
        pivots.append(c)
        r += 1
    return r, np.array(pivots, dtype=np.int64)


def rref_gf2_np(W, ncols):
    """In-place RREF of a bit-packed GF(2) matrix (uint64 words, little-endian bits)."""
    m = W.shape[0]
    pivots = []
    r = 0
    one = np.uint64(1)
    for c in range(ncols):
        if r == m:
            break
        w = c >> 6
        bit = one << np.uint64(c & 63)
        hit = np.flatnonzero(W[r:, w] & bit)
        if hit.size == 0:
            continue
        k = r + hit[0]
        if k != r:
            W[[r, k]] = W[[k, r]]
        rows = np.flatnonzero(W[:, w] & bit)
        rows = rows[rows != r]
        if rows.size:
            W[rows, w:] ^= W[r, w:]
        pivots.append(c)
        r += 1
    return r, np.array(pivots, dtype=np.int64)


def batch_full_rank_np(X, p, inv):
    """For a stack of square matrices (B, n, n), flag the invertible ones."""
    X = X.copy()
    B, n, _ = X.shape
    ok = np.ones(B, dtype=bool)
    idx = np.arange(B)
    for c in range(n):
        sub = X[:, c:, c] != 0
        ok &= sub.any(axis=1)
        k = c + np.argmax(sub, axis=1)
        rk = X[idx, k].copy()
        X[idx, k] = X[idx, c]
        X[idx, c] = rk
        piv = inv[X[:, c, c]]
        X[:, c] = (X[:, c] * piv[:, None]) % p
        f = X[:, :, c].copy()
        f[:, c] = 0
        X = (X + (p - f)[:, :, None] * X[:, c][:, None, :]) % p
    return ok


# --------------------------------------------------------------------------
# numba implementations

if numba is not None:

    @numba.njit(cache=True)
    def rref_modp_nb(A, p, inv):
        m, n = A.shape
        piv = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            k = -1
            for i in range(r, m):
                if A[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(c, n):
                    t = A[r, j]
                    A[r, j] = A[k, j]
                    A[k, j] = t
            a = A[r, c]
            if a != 1:
                s = inv[a]
                for j in range(c, n):
                    A[r, j] = (A[r, j] * s) % p
            for i in range(m):
                if i != r:
                    f = A[i, c]
                    if f != 0:
                        g = p - f
                        for j in range(c, n):
                            if A[r, j] != 0:
                                A[i, j] = (A[i, j] + g * A[r, j]) % p
            piv[r] = c
            r += 1
        return r, piv[:r].copy()

    @numba.njit(cache=True)
    def rref_gf2_nb(W, ncols):
        m, nw = W.shape
        piv = np.empty(min(m, ncols), dtype=np.int64)
        r = 0
        one = np.uint64(1)
        for c in range(ncols):
            if r == m:
                break
            w = c >> 6
            bit = one << np.uint64(c & 63)
            k = -1
            for i in range(r, m):
                if W[i, w] & bit:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(w, nw):
                    t = W[r, j]
                    W[r, j] = W[k, j]
                    W[k, j] = t
            for i in range(m):
                if i != r and (W[i, w] & bit):
                    for j in range(w, nw):
                        W[i, j] ^= W[r, j]
            piv[r] = c
            r += 1
        return r, piv[:r].copy()

    @numba.njit(cache=True)
    def _full_rank_one(A, p, inv):
        n = A.shape[0]
        for c in range(n):
            k = -1
            for i in range(c, n):
                if A[i, c] != 0:
                    k = i
                    break
            if k < 0:
                return False
            if k != c:
                for j in range(c, n):
                    t = A[c, j]
                    A[c, j] = A[k, j]
                    A[k, j] = t
            s = inv[A[c, c]]
            for j in range(c, n):
                A[c, j] = (A[c, j] * s) % p
            for i in range(c + 1, n):
                f = A[i, c]
                if f != 0:
                    g = p - f
                    for j in range(c, n):
                        A[i, j] = (A[i, j] + g * A[c, j]) % p
        return True

    @numba.njit(cache=True)
    def batch_full_rank_nb(X, p, inv):
        B = X.shape[0]
        out = np.empty(B, dtype=np.bool_)
        for b in range(B):
            out[b] = _full_rank_one(X[b].copy(), p, inv)
        return out

else:  # pragma: no cover
    rref_modp_nb = rref_gf2_nb = batch_full_rank_nb = None


# --------------------------------------------------------------------------
# dispatch

if USE_NUMBA:
    rref_modp = rref_modp_nb
    rref_gf2 = rref_gf2_nb
    batch_full_rank = batch_full_rank_nb
else:
    rref_modp = rref_modp_np
    rref_gf2 = rref_gf2_np
    batch_full_rank = batch_full_rank_np


def pack_gf2(A):
    """Pack a 0/1 matrix into uint64 words, bit j of word w = column 64*w + j."""
    m, n = A.shape
    nw = max(1, (n + 63) // 64)
    padded = np.zeros((m, nw * 64), dtype=np.uint8)
    padded[:, :n] = A
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").astype(np.uint64)


def unpack_gf2(W, ncols):
    bits = np.unpackbits(W.astype("<u8").view(np.uint8), axis=1, bitorder="little")
    return bits[:, :ncols].astype(np.int64)
