"""kG-modules as explicit matrix representations over F_p.

A Module stores one action matrix per group element (indexed by the group's
element numbering). Maps are equivariant matrices ``codomain.dim x domain.dim``.
"""

import hashlib
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .groups import CapExceeded, GroupError, Subgroup, left_transversal, named_group

ENUM_CAP = 2**20


class ModuleError(ValueError):
    pass


class Module:
    """A finite-dimensional kG-module, k = F_p."""

    def __init__(self, group, p, action, check=False, name=""):
        self.group = group
        self.p = la.check_prime(p)
        act = np.asarray(action, dtype=np.int64) % p
        if act.ndim != 3 or act.shape[0] != group.order or act.shape[1] != act.shape[2]:
            raise ModuleError(f"action must have shape (|G|, d, d); got {act.shape}")
        act.setflags(write=False)
        self.action = act
        self.name = name
        if check:
            rep = validate_module(self)
            if not rep.ok:
                raise ModuleError(rep.message)

    @property
    def dim(self):
        return self.action.shape[1]

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"Module({self.group.name}, p={self.p}, dim={self.dim}{label})"

    def rho(self, g):
        return self.action[g]

    @cached_property
    def fingerprint(self):
        h = hashlib.sha1()
        h.update(self.group.key.encode())
        h.update(f"{self.p}:{self.dim}".encode())
        h.update(self.action.tobytes())
        return h.hexdigest()

    def __eq__(self, other):
        return isinstance(other, Module) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    def same_category(self, other):
        return self.group == other.group and self.p == other.p


@dataclass(eq=False)
class ModuleMap:
    domain: Module
    codomain: Module
    mat: np.ndarray

    def __post_init__(self):
        self.mat = np.asarray(self.mat, dtype=np.int64).reshape(self.codomain.dim, self.domain.dim) % self.domain.p

    @property
    def p(self):
        return self.domain.p

    def is_equivariant(self):
        return is_equivariant(self.domain, self.codomain, self.mat)

    def compose(self, first):
        """self o first"""
        return ModuleMap(first.domain, self.codomain, la.mul(self.mat, first.mat, self.p))

    def __add__(self, other):
        return ModuleMap(self.domain, self.codomain, (self.mat + other.mat) % self.p)

    def scale(self, c):
        return ModuleMap(self.domain, self.codomain, (c * self.mat) % self.p)

    def is_zero(self):
        return not self.mat.any()


@dataclass(eq=False)
class HomSpace:
    domain: Module
    codomain: Module
    basis: np.ndarray  # (k, codomain.dim, domain.dim)

    @property
    def dim(self):
        return self.basis.shape[0]

    def maps(self):
        return [ModuleMap(self.domain, self.codomain, b) for b in self.basis]

    def flat(self):
        return self.basis.reshape(self.dim, self.codomain.dim * self.domain.dim)

    def combine(self, coeffs):
        c = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        return ModuleMap(self.domain, self.codomain, np.tensordot(c, self.basis, axes=1) % self.domain.p)


@dataclass
class ValidationReport:
    ok: bool
    message: str = "ok"
    pair: tuple = None


def validate_module(M):
    """Check rho(e) = I and rho(g) rho(h) = rho(gh) for all pairs."""
    G, p, A = M.group, M.p, M.action
    d = M.dim
    if not np.array_equal(A[0], np.eye(d, dtype=np.int64)):
        return ValidationReport(False, "action of the identity is not I", (0, 0))
    for g in range(G.order):
        prods = np.einsum("ij,hjk->hik", A[g], A) % p
        target = A[G.table[g]]
        bad = np.flatnonzero((prods != target).reshape(G.order, -1).any(axis=1))
        if bad.size:
            h = int(bad[0])
            return ValidationReport(False, f"rho({g}) rho({h}) != rho({g}*{h})", (g, h))
    return ValidationReport(True)


def is_equivariant(M, N, mat):
    p = M.p
    mat = np.asarray(mat, dtype=np.int64)
    left = np.einsum("ij,gjk->gik", mat, M.action) % p
    right = np.einsum("gij,jk->gik", N.action, mat) % p
    return bool(np.array_equal(left, right))


def module_from_generators(G, p, gen_mats, name="", check=True):
    """Extend matrices for some generating elements to the whole group.

    ``gen_mats`` maps element index -> matrix. The result is validated.
    """
    gens = list(gen_mats)
    d = np.asarray(gen_mats[gens[0]]).shape[0] if gens else 0
    act = np.zeros((G.order, d, d), dtype=np.int64)
    done = np.zeros(G.order, dtype=bool)
    act[0] = np.eye(d, dtype=np.int64)
    done[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(G.table[x, g])
                if not done[y]:
                    act[y] = la.mul(act[x], gen_mats[g], p)
                    done[y] = True
                    nxt.append(y)
        frontier = nxt
    if not done.all():
        raise ModuleError("given elements do not generate the group")
    return Module(G, p, act, check=check, name=name)


def trivial_module(G, p):
    return Module(G, p, np.ones((G.order, 1, 1), dtype=np.int64), name="k")


def zero_module(G, p):
    return Module(G, p, np.zeros((G.order, 0, 0), dtype=np.int64), name="0")


def regular_module(G, p):
    """kG with basis the group elements, h . e_g = e_{hg}."""
    n = G.order
    act = np.zeros((n, n, n), dtype=np.int64)
    g = np.arange(n)
    for h in range(n):
        act[h, G.table[h, g], g] = 1
    return Module(G, p, act, name="kG")


def jordan_module(G, p, i):
    """Cyclic G: generator acts by the i x i unipotent Jordan block."""
    if not G.is_cyclic():
        raise ModuleError("jordan modules need a cyclic group")
    if not 1 <= i <= G.order:
        raise ModuleError(f"jordan size must be in [1, {G.order}]")
    J = np.eye(i, dtype=np.int64)
    J[np.arange(i - 1), np.arange(1, i)] = 1
    g = G.cyclic_generator()
    try:
        return module_from_generators(G, p, {g: J}, name=f"J{i}")
    except ModuleError as exc:
        raise ModuleError(f"J_{i} is not a module for {G.name} over F_{p}") from exc


def v4_band_module(G, p, n, lam):
    """Band module of dimension 2n for V_4 = <a, b>: (a-1)u_i = v_i,
    (b-1)u_i = lam v_i + v_{i+1}, with a, b the first two generators."""
    if G.family() != ("elemab", 2, 2) or p != 2:
        raise ModuleError("v4_band needs the Klein four group over F_2")
    lam %= p
    if lam == 0:
        raise ModuleError("v4_band needs lambda != 0")
    a, b = G.generators
    A = np.eye(2 * n, dtype=np.int64)
    B = np.eye(2 * n, dtype=np.int64)
    for i in range(n):
        A[n + i, i] += 1
        B[n + i, i] += lam
        if i + 1 < n:
            B[n + i + 1, i] += 1
    return module_from_generators(G, p, {a: A % p, b: B % p}, name=f"band{n}")


def sign_module(G, p):
    if G.perms is None:
        raise ModuleError("sign module needs a symmetric group")
    sgn = []
    for q in G.perms:
        inversions = sum(1 for i in range(len(q)) for j in range(i + 1, len(q)) if q[i] > q[j])
        sgn.append(1 if inversions % 2 == 0 else p - 1)
    return Module(G, p, np.array(sgn, dtype=np.int64).reshape(-1, 1, 1), check=True, name="sgn")


def standard_module(G, p, spec):
    """Modules by name: "trivial", "regular", "zero", "sign", "jordan:i",
    "v4_band:n:lambda"."""
    G = named_group(G)
    s = str(spec)
    head, _, rest = s.partition(":")
    if head in ("trivial", "k"):
        return trivial_module(G, p)
    if head == "regular":
        return regular_module(G, p)
    if head == "zero":
        return zero_module(G, p)
    if head == "sign":
        return sign_module(G, p)
    if head == "jordan":
        return jordan_module(G, p, int(rest))
    if head == "v4_band":
        n, lam = (int(x) for x in rest.split(":"))
        return v4_band_module(G, p, n, lam)
    raise ModuleError(f"unknown module spec {spec!r}")


# --------------------------------------------------------------------------
# constructions


def dual(M):
    """rho*(g) = rho(g^-1)^T"""
    act = np.transpose(M.action[M.group.inverse], (0, 2, 1))
    return Module(M.group, M.p, act, name=f"{M.name}*" if M.name else "")


def dual_map(phi):
    return ModuleMap(dual(phi.codomain), dual(phi.domain), phi.mat.T.copy())


@dataclass(eq=False)
class DirectSum:
    module: Module
    inclusions: list
    projections: list


def direct_sum(modules):
    modules = list(modules)
    if not modules:
        raise ModuleError("empty direct sum")
    G, p = modules[0].group, modules[0].p
    for M in modules:
        if not M.same_category(modules[0]):
            raise ModuleError("direct sum of modules over different groups or fields")
    d = sum(M.dim for M in modules)
    act = np.zeros((G.order, d, d), dtype=np.int64)
    offs = np.cumsum([0] + [M.dim for M in modules])
    for M, o in zip(modules, offs):
        act[:, o : o + M.dim, o : o + M.dim] = M.action
    S = Module(G, p, act, name="+".join(M.name or "?" for M in modules))
    incs, projs = [], []
    for M, o in zip(modules, offs):
        E = np.zeros((d, M.dim), dtype=np.int64)
        E[o : o + M.dim] = np.eye(M.dim, dtype=np.int64)
        incs.append(ModuleMap(M, S, E))
        projs.append(ModuleMap(S, M, E.T.copy()))
    return DirectSum(S, incs, projs)


def direct_sum_maps(maps):
    """Block-diagonal map between the direct sums of domains and codomains."""
    A = direct_sum([f.domain for f in maps]).module
    B = direct_sum([f.codomain for f in maps]).module
    mat = np.zeros((B.dim, A.dim), dtype=np.int64)
    r = c = 0
    for f in maps:
        mat[r : r + f.codomain.dim, c : c + f.domain.dim] = f.mat
        r += f.codomain.dim
        c += f.domain.dim
    return ModuleMap(A, B, mat)


def hom_equations(M, N, elements=None):
    """Stacked intertwining system X rho_M(g) - rho_N(g) X = 0 in row-major vec(X)."""
    p = M.p
    gens = M.group.generators if elements is None else elements
    dM, dN = M.dim, N.dim
    D = dM * dN
    if not gens or D == 0:
        return np.zeros((0, D), dtype=np.int64)
    blocks = []
    IN = np.eye(dN, dtype=np.int64)
    IM = np.eye(dM, dtype=np.int64)
    for g in gens:
        blocks.append((np.kron(IN, M.action[g].T) - np.kron(N.action[g], IM)) % p)
    return np.vstack(blocks)


def hom_basis(M, N):
    """Basis of Hom_kG(M, N)."""
    if not M.same_category(N):
        raise ModuleError("modules over different groups or fields")
    if M.dim * N.dim == 0:
        return HomSpace(M, N, np.zeros((0, N.dim, M.dim), dtype=np.int64))
    E = hom_equations(M, N)
    K = la.kernel_basis(E, M.p) if E.shape[0] else np.eye(M.dim * N.dim, dtype=np.int64)
    basis = K.T.reshape(-1, N.dim, M.dim)
    return HomSpace(M, N, np.ascontiguousarray(basis))


def end_basis(M):
    return hom_basis(M, M)


def fixed_points(M):
    """(basis of M^G as columns, HomSpace Hom(k, M))."""
    p = M.p
    gens = M.group.generators
    if gens and M.dim:
        S = np.vstack([(M.action[g] - np.eye(M.dim, dtype=np.int64)) % p for g in gens])
        F = la.kernel_basis(S, p)
    else:
        F = np.eye(M.dim, dtype=np.int64)
    k = trivial_module(M.group, p)
    return F, HomSpace(k, M, np.ascontiguousarray(F.T.reshape(-1, M.dim, 1)))


def _require_p_group(G, p):
    if not G.is_p_group(p):
        raise GroupError(f"{G.name} is not a {p}-group")


def radical_basis(M):
    """span{(g - 1) m}: the radical when G is a p-group."""
    p, d = M.p, M.dim
    if d == 0 or M.group.order == 1:
        return np.zeros((d, 0), dtype=np.int64)
    I = np.eye(d, dtype=np.int64)
    S = np.hstack([(M.action[g] - I) % p for g in range(1, M.group.order)])
    R = la.row_basis(S.T, p)
    return R.T.copy()


def radical_and_socle(M):
    _require_p_group(M.group, M.p)
    return radical_basis(M), fixed_points(M)[0]


def is_closed(M, basis):
    """Whether the column span of ``basis`` is invariant under the action."""
    p = M.p
    B = np.asarray(basis, dtype=np.int64).reshape(M.dim, -1)
    if B.shape[1] == 0:
        return True
    r = la.rank(B, p)
    imgs = np.hstack([la.mul(M.action[g], B, p) for g in M.group.generators] or [B])
    return la.rank(np.hstack([B, imgs]), p) == r


def submodule(M, basis):
    """Submodule spanned by the (independent) columns of ``basis`` with its inclusion."""
    p = M.p
    B = np.asarray(basis, dtype=np.int64).reshape(M.dim, -1) % p
    if la.rank(B, p) != B.shape[1]:
        raise ModuleError("submodule basis must be independent")
    rhs = np.hstack([la.mul(M.action[g], B, p) for g in range(M.group.order)])
    X, _ = la.solve(B, rhs, p)
    if X is None:
        raise ModuleError("basis does not span an action-closed subspace")
    k = B.shape[1]
    act = X.reshape(k, M.group.order, k).transpose(1, 0, 2)
    S = Module(M.group, p, act)
    return S, ModuleMap(S, M, B)


@dataclass(eq=False)
class Quotient:
    module: Module
    projection: ModuleMap
    lift: np.ndarray  # columns: chosen preimages of the quotient basis


def quotient_module(M, basis):
    """M / span(basis) on the coordinates of a complement spanned by
    standard basis vectors; returns the projection and the complement lift."""
    p, d = M.p, M.dim
    S = np.asarray(basis, dtype=np.int64).reshape(d, -1) % p
    if not is_closed(M, S):
        raise ModuleError("basis not action-closed")
    Sb = la.row_basis(S.T, p).T if S.shape[1] else S
    s = Sb.shape[1]
    piv = la.independent_columns(np.hstack([Sb, np.eye(d, dtype=np.int64)]), p)
    comp = [c - s for c in piv if c >= s]
    E = np.eye(d, dtype=np.int64)[:, comp]
    full = np.hstack([Sb, E])
    inv = la.inverse(full, p)
    P = inv[s:]  # coordinates along the complement
    act = np.einsum("ij,gjk,kl->gil", P, M.action, E) % p
    Q = Module(M.group, p, act)
    return Quotient(Q, ModuleMap(M, Q, P), E)


def composition_flag(M):
    """Chain 0 = A_0 < A_1 < ... < A_d = M of submodules (bases as columns),
    each step lifting a fixed line of M / A_i."""
    _require_p_group(M.group, M.p)
    p, d = M.p, M.dim
    chain = [np.zeros((d, 0), dtype=np.int64)]
    A = chain[0]
    for _ in range(d):
        q = quotient_module(M, A)
        F, _ = fixed_points(q.module)
        v = F[:, :1]
        A = np.hstack([A, la.mul(q.lift, v, p)])
        chain.append(A)
    return chain


# --------------------------------------------------------------------------
# restriction, induction, conjugation


def restrict(M, H):
    """M restricted to the subgroup H, over H's own numbering."""
    if not isinstance(H, Subgroup):
        raise GroupError("restriction needs a Subgroup")
    if H.parent != M.group:
        raise GroupError("H is not a subgroup of the module's group")
    return Module(H.group, M.p, M.action[list(H.elements)], name=M.name)


def restrict_map(phi, H):
    return ModuleMap(restrict(phi.domain, H), restrict(phi.codomain, H), phi.mat)


@dataclass(eq=False)
class InductionData:
    transversal: list
    coset_of: np.ndarray  # element -> transversal position
    local_h: np.ndarray  # (element, position) -> local H index of t_j^-1 g t_i


def _induction_data(H):
    G = H.parent
    T = left_transversal(G, H)
    coset_of = np.empty(G.order, dtype=np.int64)
    for j, t in enumerate(T):
        for h in H.elements:
            coset_of[G.table[t, h]] = j
    local = H.local
    m = len(T)
    lh = np.empty((G.order, m), dtype=np.int64)
    for g in range(G.order):
        for i, t in enumerate(T):
            x = int(G.table[g, t])
            j = coset_of[x]
            h = int(G.table[G.inverse[T[j]], x])
            lh[g, i] = local[h]
    return InductionData(T, coset_of, lh)


def induce(M, H):
    """M (a module over H.group) induced up to H.parent, on the minimal
    left transversal: basis t_i (x) e_b at index i * dim M + b."""
    if M.group != H.group:
        raise GroupError("module is not over the given subgroup")
    G = H.parent
    data = _induction_data(H)
    m, d = len(data.transversal), M.dim
    act = np.zeros((G.order, m * d, m * d), dtype=np.int64)
    for g in range(G.order):
        for i in range(m):
            j = data.coset_of[G.table[g, data.transversal[i]]]
            act[g, j * d : (j + 1) * d, i * d : (i + 1) * d] = M.action[data.local_h[g, i]]
    name = f"{M.name}^G" if M.name else ""
    return Module(G, M.p, act, name=name)


def induce_map(phi, H):
    """x (x) m -> x (x) phi(m), block diagonal over the transversal."""
    m = len(left_transversal(H.parent, H))
    mat = np.kron(np.eye(m, dtype=np.int64), phi.mat)
    return ModuleMap(induce(phi.domain, H), induce(phi.codomain, H), mat)


def conjugate_module(M, H, x):
    """Module over K = x H x^-1 where x h x^-1 acts as h does on M.
    Returns (module, K)."""
    from .groups import conjugate_subgroup

    G = H.parent
    K = conjugate_subgroup(G, H, x)
    act = np.empty_like(M.action)
    for h in H.elements:
        act[K.local[G.conj(x, h)]] = M.action[H.local[h]]
    return Module(K.group, M.p, act, name=M.name), K


def adjoint_hom(direction, phi, H, B):
    """Transport across the induction/restriction adjunctions.

    ``direction="into_induced"``: phi in Hom_H(B|H, M) -> Hom_G(B, M^G),
    b -> sum_i t_i (x) phi(t_i^-1 b).
    ``direction="out_of_induced"``: phi in Hom_H(M, B|H) -> Hom_G(M^G, B),
    t_i (x) m -> t_i phi(m).
    ``B`` is the G-module on the restricted side.
    """
    G, p = H.parent, phi.p
    T = left_transversal(G, H)
    if direction == "into_induced":
        if phi.domain.dim != B.dim:
            raise ModuleError("shape mismatch for into_induced")
        blocks = [la.mul(phi.mat, B.action[G.inverse[t]], p) for t in T]
        return ModuleMap(B, induce(phi.codomain, H), np.vstack(blocks))
    if direction == "out_of_induced":
        if phi.codomain.dim != B.dim:
            raise ModuleError("shape mismatch for out_of_induced")
        blocks = [la.mul(B.action[t], phi.mat, p) for t in T]
        return ModuleMap(induce(phi.domain, H), B, np.hstack(blocks))
    raise ValueError(f"unknown direction {direction!r}")


def adjoint_hom_inverse(direction, Phi, H, M):
    """Inverse transport; ``M`` is the H-module on the induced side."""
    d = M.dim
    B = Phi.domain if direction == "into_induced" else Phi.codomain
    Bres = restrict(B, H)
    if direction == "into_induced":
        return ModuleMap(Bres, M, Phi.mat[:d])
    if direction == "out_of_induced":
        return ModuleMap(M, Bres, Phi.mat[:, :d])
    raise ValueError(f"unknown direction {direction!r}")


def mackey_summands(M, H, Q):
    """Q-modules Ind_{Q n xHx^-1}^Q Res (xM), one per double coset QxH.

    Their direct sum is isomorphic to (M induced to G) restricted to Q.
    """
    from .groups import double_cosets, intersection

    G = H.parent
    out = []
    for x in double_cosets(G, Q, H).representatives:
        xM, K = conjugate_module(M, H, x)
        L = intersection(Q, K)
        part = restrict(xM, L.within(K))
        out.append((x, induce(part, L.within(Q))))
    return out


# --------------------------------------------------------------------------
# isomorphism and indecomposability


@dataclass
class IsoResult:
    isomorphic: bool
    exact: bool = True
    witness: np.ndarray = None
    method: str = ""

    def __bool__(self):
        return self.isomorphic

    @property
    def verdict(self):
        if self.isomorphic:
            return "isomorphic"
        return "not isomorphic" if self.exact else "probably not isomorphic"


def _enumerate_combinations(basis, p, start, count):
    k = basis.shape[0]
    idx = np.arange(start, start + count, dtype=np.int64)
    digits = np.empty((count, k), dtype=np.int64)
    for j in range(k):
        digits[:, j] = idx % p
        idx //= p
    return np.tensordot(digits, basis, axes=1) % p, digits


def _first_invertible(basis, p, cap, rng, trials=64):
    """Search span(basis) for an invertible matrix: seeded random trials
    first, then (under cap) the exhaustive sweep. Returns (matrix|None, exact)."""
    k = basis.shape[0]
    if k == 0:
        return None, True
    coeffs = rng.integers(0, p, size=(trials, k))
    cands = np.tensordot(coeffs, basis, axes=1) % p
    ok = la.batch_invertible(cands, p)
    if ok.any():
        return cands[int(np.argmax(ok))], True
    total = p**k
    if total > cap:
        return None, False
    chunk = 1 << 14
    for start in range(0, total, chunk):
        cnt = min(chunk, total - start)
        cands, _ = _enumerate_combinations(basis, p, start, cnt)
        ok = la.batch_invertible(cands, p)
        if ok.any():
            return cands[int(np.argmax(ok))], True
    return None, True


def is_isomorphic(M, N, cap=ENUM_CAP, seed=0):
    if not M.same_category(N):
        raise ModuleError("modules over different groups or fields")
    if M.dim != N.dim:
        return IsoResult(False, True, method="dimension")
    if M == N:
        return IsoResult(True, True, np.eye(M.dim, dtype=np.int64), method="equal")
    H = hom_basis(M, N)
    dims = (hom_basis(M, M).dim, hom_basis(N, N).dim, H.dim, hom_basis(N, M).dim)
    if len(set(dims)) > 1:
        return IsoResult(False, True, method="hom dimensions")
    rng = np.random.default_rng(seed)
    W, exact = _first_invertible(H.basis, M.p, cap, rng)
    if W is not None:
        return IsoResult(True, True, W, method="search")
    return IsoResult(False, exact, method="sweep" if exact else "sampling")


@dataclass
class IndecResult:
    indecomposable: bool
    exact: bool = True
    idempotent: np.ndarray = None
    end_dim: int = 0

    def __bool__(self):
        return self.indecomposable


def _fitting_split(f, p):
    """Idempotent-free Fitting test: f^d is neither 0 nor invertible iff f
    splits M nontrivially."""
    d = f.shape[0]
    g = f.copy()
    e = 1
    while e < d:
        g = la.mul(g, g, p)
        e *= 2
    r = la.rank(g, p)
    return 0 < r < d


def indecomposability(M, cap=ENUM_CAP, seed=0, samples=256):
    """Decide whether End(M) has an idempotent other than 0 and 1."""
    p, d = M.p, M.dim
    if d == 0:
        return IndecResult(False, True, end_dim=0)
    E = end_basis(M).basis
    k = E.shape[0]
    if k == 1:
        return IndecResult(True, True, end_dim=1)
    total = p**k
    if total <= cap:
        I = np.eye(d, dtype=np.int64)
        chunk = 1 << 14
        for start in range(0, total, chunk):
            cnt = min(chunk, total - start)
            cands, _ = _enumerate_combinations(E, p, start, cnt)
            sq = np.einsum("bij,bjk->bik", cands, cands) % p
            idem = (sq == cands).reshape(cnt, -1).all(axis=1)
            nontriv = idem & cands.reshape(cnt, -1).any(axis=1) & ~(cands == I).reshape(cnt, -1).all(axis=1)
            if nontriv.any():
                return IndecResult(False, True, cands[int(np.argmax(nontriv))], end_dim=k)
        return IndecResult(True, True, end_dim=k)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        c = rng.integers(0, p, size=k)
        f = np.tensordot(c, E, axes=1) % p
        if _fitting_split(f, p):
            return IndecResult(False, True, None, end_dim=k)
    return IndecResult(True, False, end_dim=k)


def is_indecomposable(M, cap=ENUM_CAP, seed=0, allow_random=True):
    res = indecomposability(M, cap, seed)
    if not res.exact and not allow_random:
        raise CapExceeded(f"|End(M)| = {M.p}^{res.end_dim} exceeds enumeration cap {cap}")
    return res.indecomposable
