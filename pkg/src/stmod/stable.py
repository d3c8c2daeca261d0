"""Stable module category of kG.

For a p-group, syzygies come from minimal projective covers and carry no
projective summands. For other groups a free (non-minimal) cover on a greedy
generating set is used, so Omega^n is only defined up to projective summands,
which is all the stable category sees. Negative syzygies are computed by
duality, Omega^-n(M) = (Omega^n(M*))*. Stably trivial maps are spanned by
traces sum_g g psi g^-1 of rank-one maps, i.e. the composites M -> kG -> N.
"""

import hashlib
import threading
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .groups import CapExceeded, GroupError, sylow_subgroup
from .reps import (
    HomSpace,
    Module,
    ModuleMap,
    direct_sum,
    dual,
    dual_map,
    hom_basis,
    quotient_module,
    restrict_map,
    submodule,
)

SYZYGY_CAP = 24


class StableContext:
    """Per-computation caches (covers, syzygies, stable hom spaces, lifted maps).

    Not shared across threads: use one context per thread.
    """

    def __init__(self):
        self.covers = {}
        self.strips = {}
        self.syzygies = {}
        self.stable = {}
        self.omega = {}

    def clear(self):
        for d in (self.covers, self.strips, self.syzygies, self.stable, self.omega):
            d.clear()


_local = threading.local()


def default_context():
    ctx = getattr(_local, "ctx", None)
    if ctx is None:
        ctx = _local.ctx = StableContext()
    return ctx


def _ctx(ctx):
    return ctx if ctx is not None else default_context()


def require_p_group(M):
    if not M.group.is_p_group(M.p):
        raise GroupError(f"{M.group.name} is not a {M.p}-group; restrict to a Sylow subgroup first")


def map_key(phi):
    h = hashlib.sha1(phi.mat.tobytes())
    h.update(str(phi.mat.shape).encode())
    return (phi.domain.fingerprint, phi.codomain.fingerprint, h.hexdigest())


# --------------------------------------------------------------------------
# free modules and covers


def _free_perm(G, r):
    """perm[h, j*|G| + g] = j*|G| + hg: the row permutation of kG^r."""
    n = G.order
    base = np.arange(r)[:, None] * n
    return np.stack([(base + G.table[h][None, :]).reshape(-1) for h in range(n)])


def free_action_apply(G, r, h, V, perm=None):
    """rho_{kG^r}(h) applied to the rows of V."""
    perm = _free_perm(G, r) if perm is None else perm
    out = np.empty_like(V)
    out[perm[h]] = V
    return out


def free_module(G, p, r):
    n = G.order
    perm = _free_perm(G, r)
    act = np.zeros((n, r * n, r * n), dtype=np.int64)
    cols = np.arange(r * n)
    for h in range(n):
        act[h, perm[h], cols] = 1
    return Module(G, p, act, name=f"kG^{r}")


def top_generators(M):
    """Standard basis indices whose vectors span a complement of rad M."""
    from .reps import radical_basis

    R = radical_basis(M)
    s = R.shape[1]
    piv = la.independent_columns(np.hstack([R, np.eye(M.dim, dtype=np.int64)]), M.p)
    return [c - s for c in piv if c >= s]


def module_generators(M):
    """Basis indices generating M as a module: a top complement for p-groups,
    otherwise a greedy choice."""
    if M.group.is_p_group(M.p):
        return top_generators(M)
    p = M.p
    chosen = []
    span = np.zeros((M.dim, 0), dtype=np.int64)
    r = 0
    for c in range(M.dim):
        e = np.zeros((M.dim, 1), dtype=np.int64)
        e[c] = 1
        if la.rank(np.hstack([span, e]), p) == r:
            continue
        chosen.append(c)
        span = np.hstack([span, M.action[:, :, c].T])
        span = la.row_basis(span.T, p).T
        r = span.shape[1]
        if r == M.dim:
            break
    return chosen


@dataclass(eq=False)
class Cover:
    module: Module
    generators: list  # basis indices of M hit by the free generators
    projective: Module  # kG^r
    cover: ModuleMap  # kG^r -> M
    kernel: Module  # Omega(M)
    embedding: ModuleMap  # Omega(M) -> kG^r
    free: list  # free columns: kernel coordinates of v are v[free]
    perm: np.ndarray

    @property
    def rank(self):
        return len(self.generators)


def projective_cover(M, ctx=None):
    """Minimal projective cover kG^r -> M with r = dim M/rad M."""
    require_p_group(M)
    return free_cover(M, ctx)


def free_cover(M, ctx=None):
    """Free cover kG^r -> M; minimal when G is a p-group."""
    ctx = _ctx(ctx)
    hit = ctx.covers.get(M.fingerprint)
    if hit is not None:
        return hit
    G, p, d = M.group, M.p, M.dim
    gens = module_generators(M)
    r = len(gens)
    n = G.order
    pi = M.action[:, :, gens].transpose(1, 2, 0).reshape(d, r * n) if r else np.zeros((d, 0), dtype=np.int64)
    K, free = la.kernel_with_free(pi, p) if r else (np.zeros((0, 0), dtype=np.int64), [])
    perm = _free_perm(G, r)
    k = K.shape[1]
    act = np.empty((n, k, k), dtype=np.int64)
    fr = np.array(free, dtype=np.int64)
    for h in range(n):
        moved = np.empty_like(K)
        moved[perm[h]] = K
        act[h] = moved[fr] if k else np.zeros((0, 0), dtype=np.int64)
    P = free_module(G, p, r)
    omega = Module(G, p, act, name=f"Omega({M.name})" if M.name else "")
    cov = Cover(M, gens, P, ModuleMap(P, M, pi), omega, ModuleMap(omega, P, K), free, perm)
    ctx.covers[M.fingerprint] = cov
    return cov


@dataclass(eq=False)
class Strip:
    module: Module  # projective-free part
    inclusion: ModuleMap
    projection: ModuleMap
    free_rank: int


def strip_projectives(M, ctx=None):
    """Split off free summands: M = M' (+) kG^t with t = rank of the norm map.

    Only p-groups are stripped; for other groups M is returned unchanged.
    """
    ctx = _ctx(ctx)
    hit = ctx.strips.get(M.fingerprint)
    if hit is not None:
        return hit
    G, p, d = M.group, M.p, M.dim
    I = np.eye(d, dtype=np.int64)
    if G.is_p_group(p):
        norm = M.action.sum(axis=0) % p
        piv = la.independent_columns(norm, p)
    else:
        piv = []
    t = len(piv)
    if t == 0:
        res = Strip(M, ModuleMap(M, M, I), ModuleMap(M, M, I), 0)
    else:
        W = norm[:, piv]
        F, _ = la.solve(W.T, np.eye(t, dtype=np.int64), p)
        f = F.T  # f_i(norm m_j) = delta_ij
        rho_inv = M.action[G.inverse]
        fr = np.einsum("ij,gjk->gik", f, rho_inv) % p  # (g, t, d)
        cols = M.action[:, :, piv]  # (g, d, t)
        R = np.einsum("gai,gib->ab", cols, fr) % p
        C = la.kernel_basis(R, p)
        Fb = cols.transpose(1, 2, 0).reshape(d, -1)
        if C.shape[1] != d - t * G.order or la.rank(np.hstack([Fb, C]), p) != d:
            raise AssertionError("free summand splitting failed")
        sub, inc = submodule(M, C)
        proj = la.inverse(np.hstack([Fb, C]), p)[Fb.shape[1] :]
        sub.name = M.name
        res = Strip(sub, inc, ModuleMap(M, sub, proj), t)
    ctx.strips[M.fingerprint] = res
    return res


@dataclass(eq=False)
class SyzygyResult:
    source: Module
    n: int
    module: Module
    covers: list = field(default_factory=list)  # Cover objects along the chain (n > 0, or of duals for n < 0)
    strip: Strip = None

    @property
    def hull_embedding(self):
        """For n = -1: the injective hull embedding M -> I(M)."""
        if self.n != -1:
            raise ValueError("hull embedding only recorded for n = -1")
        c = self.covers[0]
        return dual_map(c.cover)


def syzygy(M, n, ctx=None):
    """Omega^n(M) for any integer n (|n| <= 24)."""
    if abs(n) > SYZYGY_CAP:
        raise CapExceeded(f"|n| = {abs(n)} exceeds syzygy cap {SYZYGY_CAP}")
    ctx = _ctx(ctx)
    key = (M.fingerprint, n)
    hit = ctx.syzygies.get(key)
    if hit is not None:
        return hit
    if n == 0:
        s = strip_projectives(M, ctx)
        res = SyzygyResult(M, 0, s.module, strip=s)
    elif n > 0:
        prev = syzygy(M, n - 1, ctx) if n > 1 else None
        base = prev.module if prev else M
        c = free_cover(base, ctx)
        res = SyzygyResult(M, n, c.kernel, (prev.covers if prev else []) + [c])
    else:
        dres = syzygy(dual(M), -n, ctx)
        out = dual(dres.module)
        res = SyzygyResult(M, n, out, dres.covers)
    ctx.syzygies[key] = res
    return res


def omega(M, n=1, ctx=None):
    return syzygy(M, n, ctx).module


# --------------------------------------------------------------------------
# stably trivial maps


def phom_basis(M, N):
    """Rows: a basis (flattened N.dim x M.dim) of the maps M -> N factoring
    through a projective. Valid for any finite group."""
    if not M.same_category(N):
        raise ValueError("modules over different groups or fields")
    p, G = M.p, M.group
    dM, dN = M.dim, N.dim
    if dM == 0 or dN == 0:
        return np.zeros((0, dN * dM), dtype=np.int64)
    rows_M = module_generators(dual(M))  # functionals generating M* as a module
    cols_N = list(range(dN))
    if len(rows_M) * dN > len(module_generators(N)) * dM:
        cols_N = module_generators(N)
        rows_M = list(range(dM))
    U = N.action[:, :, cols_N]  # (g, dN, j)
    V = M.action[G.inverse][:, rows_M, :]  # (g, l, dM)
    T = np.einsum("gaj,glb->jlab", U, V) % p
    return la.row_basis(T.reshape(-1, dN * dM), p)


@dataclass(eq=False)
class StableHomSpace:
    hom: HomSpace
    phom: np.ndarray  # rows, flattened
    coset: np.ndarray  # rows, flattened: complement of phom in hom
    _rows: np.ndarray = None
    _linv: np.ndarray = None

    @property
    def domain(self):
        return self.hom.domain

    @property
    def codomain(self):
        return self.hom.codomain

    @property
    def dim(self):
        return self.coset.shape[0]

    @property
    def p(self):
        return self.hom.domain.p

    def classes(self):
        M, N = self.domain, self.codomain
        return [ModuleMap(M, N, c.reshape(N.dim, M.dim)) for c in self.coset]

    def class_map(self, coeffs):
        M, N = self.domain, self.codomain
        c = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        return ModuleMap(M, N, (c @ self.coset).reshape(N.dim, M.dim) % self.p)

    def _prepare(self):
        if self._linv is None:
            A = np.vstack([self.phom, self.coset]).T  # D x h
            if A.shape[1] == 0:
                self._rows = np.zeros(0, dtype=np.int64)
                self._linv = np.zeros((0, 0), dtype=np.int64)
            else:
                rows = la.independent_columns(A.T, self.p)
                self._rows = np.array(rows, dtype=np.int64)
                self._linv = la.inverse(A[self._rows], self.p)

    def reduce(self, mats):
        """Coordinates in the coset basis of equivariant maps M -> N.

        ``mats``: array (s, N.dim, M.dim) or a single matrix. Returns (dim, s).
        """
        self._prepare()
        mats = np.asarray(mats, dtype=np.int64)
        D = self.codomain.dim * self.domain.dim
        if D == 0:
            return np.zeros((0, mats.shape[0] if mats.ndim == 3 else 1), dtype=np.int64)
        X = mats.reshape(-1, D).T
        if self._linv.size == 0:
            return np.zeros((0, X.shape[1]), dtype=np.int64)
        coords = la.mul(self._linv, X[self._rows], self.p)
        return coords[self.phom.shape[0] :]

    def check_member(self, mats):
        """Exact membership of maps in Hom(M, N) (guards ``reduce``)."""
        D = self.codomain.dim * self.domain.dim
        if D == 0:
            return True
        X = np.asarray(mats, dtype=np.int64).reshape(-1, D)
        A = np.vstack([self.phom, self.coset])
        r = A.shape[0]
        return la.rank(np.vstack([A, X]), self.p) == r


def stable_hom(M, N, ctx=None):
    """Hom and PHom bases with a coset basis for the stable quotient."""
    ctx = _ctx(ctx)
    key = (M.fingerprint, N.fingerprint)
    hit = ctx.stable.get(key)
    if hit is not None:
        return hit
    H = hom_basis(M, N)
    P = phom_basis(M, N)
    Hf = H.flat()
    q = P.shape[0]
    if H.dim:
        piv = la.independent_columns(np.vstack([P, Hf]).T, M.p)
        coset = Hf[[c - q for c in piv if c >= q]]
    else:
        coset = np.zeros((0, M.dim * N.dim), dtype=np.int64)
    res = StableHomSpace(H, P, coset)
    ctx.stable[key] = res
    return res


def is_stably_zero(phi, via_sylow=False, ctx=None):
    """phi factors through a projective. With ``via_sylow`` the test is done
    on the restriction to a Sylow p-subgroup (faithful restriction)."""
    if via_sylow:
        P = sylow_subgroup(phi.domain.group, phi.p)
        return is_stably_zero(restrict_map(phi, P), ctx=ctx)
    S = stable_hom(phi.domain, phi.codomain, ctx)
    if not S.check_member(phi.mat):
        raise ValueError("map is not equivariant")
    return not S.reduce(phi.mat).any()


def stably_equal(f, g, ctx=None):
    return is_stably_zero(ModuleMap(f.domain, f.codomain, (f.mat - g.mat) % f.p), ctx=ctx)


# --------------------------------------------------------------------------
# syzygies of maps


def _omega1(phi, ctx):
    A, B = phi.domain, phi.codomain
    ca = free_cover(A, ctx)
    cb = free_cover(B, ctx)
    p, G = A.p, A.group
    n = G.order
    ra, rb = ca.rank, cb.rank
    if ca.kernel.dim == 0 or cb.kernel.dim == 0:
        return ModuleMap(ca.kernel, cb.kernel, np.zeros((cb.kernel.dim, ca.kernel.dim), dtype=np.int64))
    targets = phi.mat[:, ca.generators]
    X, _ = la.solve(cb.cover.mat, targets, p)
    if X is None:
        raise AssertionError("cover is not surjective")
    L = np.zeros((rb * n, ra * n), dtype=np.int64)
    for j in range(ra):
        for g in range(n):
            col = np.empty(rb * n, dtype=np.int64)
            col[cb.perm[g]] = X[:, j]
            L[:, j * n + g] = col
    LK = la.mul(L, ca.embedding.mat, p)
    return ModuleMap(ca.kernel, cb.kernel, LK[np.array(cb.free, dtype=np.int64)])


def omega_map(phi, n=1, ctx=None):
    """A lift of phi to Omega^n(domain) -> Omega^n(codomain); well defined
    modulo stably trivial maps."""
    ctx = _ctx(ctx)
    key = map_key(phi) + (n,)
    hit = ctx.omega.get(key)
    if hit is not None:
        return hit
    if n == 0:
        sa = strip_projectives(phi.domain, ctx)
        sb = strip_projectives(phi.codomain, ctx)
        res = sb.projection.compose(phi.compose(sa.inclusion))
    elif n > 0:
        prev = omega_map(phi, n - 1, ctx) if n > 1 else phi
        res = _omega1(prev, ctx)
    else:
        res = dual_map(omega_map(dual_map(phi), -n, ctx))
    ctx.omega[key] = res
    return res


# --------------------------------------------------------------------------
# triangles


@dataclass(eq=False)
class Cone:
    module: Module
    to_cone: ModuleMap  # B -> C
    to_shift: ModuleMap  # C -> Omega^-1 A
    hull: ModuleMap  # A -> I(A)


def cone(phi, ctx=None):
    """Mapping cone C = coker(A -> B (+) I(A)) completing A -> B -> C -> Omega^-1 A."""
    ctx = _ctx(ctx)
    A, B = phi.domain, phi.codomain
    p = A.p
    shift = syzygy(A, -1, ctx)
    dual_cover = shift.covers[0]  # cover of A*: P -> A*, kernel Omega(A*)
    hull = dual_map(dual_cover.cover)  # A -> P*
    to_shift_full = dual_map(dual_cover.embedding)  # P* -> Omega^-1 A
    I = hull.codomain
    S = direct_sum([B, I])
    incl = np.vstack([phi.mat, hull.mat])
    q = quotient_module(S.module, incl)
    C = q.module
    to_cone = q.projection.compose(S.inclusions[0])
    zero_then = np.hstack([np.zeros((shift.module.dim, B.dim), dtype=np.int64), to_shift_full.mat])
    to_shift = ModuleMap(C, shift.module, la.mul(zero_then, q.lift, p))
    return Cone(C, to_cone, to_shift, hull)
