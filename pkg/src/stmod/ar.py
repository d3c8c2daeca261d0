"""Almost split sequences and strong ghosts built from them.

For an indecomposable nonprojective M over a p-group, the almost split
sequence 0 -> Omega^2 M -> X -> M -> 0 is represented by a stable map
phi: M -> Omega M spanning the socle of Hom(M, Omega M) as a right module
over the stable endomorphism ring. It is found by solving
phi o f = 0 (stably) for all f in the radical of End(M).
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .groups import CapExceeded, GroupError, p_subgroups
from .reps import (
    ENUM_CAP,
    ModuleMap,
    _enumerate_combinations,
    adjoint_hom,
    composition_flag,
    direct_sum,
    end_basis,
    hom_basis,
    indecomposability,
    is_isomorphic,
    jordan_module,
    quotient_module,
    regular_module,
    restrict,
    restrict_map,
    v4_band_module,
)
from .stable import _ctx, free_cover, is_stably_zero, omega_map, require_p_group, stable_hom, strip_projectives, syzygy

WITNESS_SYZYGY_RANGE = 12


class ARError(ValueError):
    pass


# --------------------------------------------------------------------------
# endomorphism algebras


@dataclass(eq=False)
class EndAlgebra:
    module: object
    basis: np.ndarray  # (k, d, d)
    structure: np.ndarray  # (k, k, k): basis[a] @ basis[b] = sum_c structure[a, b, c] basis[c]
    radical: np.ndarray  # rows: coefficient vectors in the basis
    singular_count: int

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def radical_dim(self):
        return self.radical.shape[0]

    def radical_maps(self):
        M = self.module
        return [ModuleMap(M, M, np.tensordot(c, self.basis, axes=1) % M.p) for c in self.radical]


def _structure_constants(E, p):
    k, d, _ = E.shape
    flat = E.reshape(k, -1).T  # (d*d, k)
    prods = np.einsum("aij,bjl->abil", E, E) % p
    X, _ = la.solve(flat, prods.reshape(k * k, -1).T, p)
    if X is None:
        raise ARError("endomorphism basis is not closed under composition")
    return X.T.reshape(k, k, k)


def end_algebra(M, cap=ENUM_CAP):
    """End(M) with its radical, found as the span of the singular elements."""
    ind = indecomposability(M, cap)
    if not ind.exact:
        raise CapExceeded(f"|End(M)| = {M.p}^{ind.end_dim} exceeds the enumeration cap {cap}")
    if not ind.indecomposable:
        raise ARError("module is not indecomposable")
    p = M.p
    E = end_basis(M).basis
    k = E.shape[0]
    total = p**k
    if total > cap:
        raise CapExceeded(f"|End(M)| = {total} exceeds the enumeration cap {cap}")
    rad = np.zeros((0, k), dtype=np.int64)
    count = 0
    chunk = 1 << 14
    for start in range(0, total, chunk):
        cnt = min(chunk, total - start)
        mats, digits = _enumerate_combinations(E, p, start, cnt)
        sing = ~la.batch_invertible(mats, p)
        count += int(sing.sum())
        if sing.any():
            rad = la.row_basis(np.vstack([rad, digits[sing]]), p)
    if count != p ** rad.shape[0]:
        raise ARError("singular endomorphisms do not form a subspace: End(M) is not local")
    return EndAlgebra(M, E, _structure_constants(E, p), rad, count)


# --------------------------------------------------------------------------
# the class of the almost split sequence


@dataclass(eq=False)
class ARClass:
    map: ModuleMap  # M -> Omega M
    solution_dim: int
    radical_dim: int
    coefficients: np.ndarray  # in the coset basis of the stable hom space


def ar_class(M, ctx=None, cap=ENUM_CAP):
    """A nonzero stable class phi: M -> Omega M killed by the radical of End(M)."""
    require_p_group(M)
    ctx = _ctx(ctx)
    if is_stably_zero(ModuleMap(M, M, np.eye(M.dim, dtype=np.int64)), ctx=ctx):
        raise ARError("module is projective")
    A = end_algebra(M, cap)
    OM = syzygy(M, 1, ctx).module
    S = stable_hom(M, OM, ctx)
    if S.dim == 0:
        raise ARError("Hom(M, Omega M) is stably zero")
    p = M.p
    classes = S.coset.reshape(S.dim, OM.dim, M.dim)
    blocks = []
    for f in A.radical_maps():
        comp = np.einsum("cij,jk->cik", classes, f.mat) % p
        blocks.append(S.reduce(comp))
    system = np.vstack(blocks) if blocks else np.zeros((0, S.dim), dtype=np.int64)
    K = la.kernel_basis(system, p) if system.shape[0] else np.eye(S.dim, dtype=np.int64)
    if K.shape[1] == 0:
        raise ARError("no class is annihilated by the radical")
    coeffs = K[:, 0]
    phi = S.class_map(coeffs)
    for f in A.radical_maps():
        if not is_stably_zero(phi.compose(f), ctx=ctx):
            raise AssertionError("AR class not annihilated by the radical")
    if is_stably_zero(phi, ctx=ctx):
        raise AssertionError("AR class is stably zero")
    return ARClass(phi, K.shape[1], A.radical_dim, coeffs)


# --------------------------------------------------------------------------
# the sequence


@dataclass(eq=False)
class ARSequence:
    end: object  # M
    cls: ARClass
    start: object  # Omega^2 M
    middle: object  # X
    inclusion: ModuleMap  # Omega^2 M -> X
    projection: ModuleMap  # X -> M
    ranks: tuple  # (rank inclusion, dim X, rank projection)
    exact: bool
    split: bool
    stripped: object  # X without projective summands
    stripped_rank: int

    def lifting_property(self, T, ctx=None):
        """Every map T -> M that is not a split epimorphism factors through X.

        T must be indecomposable; for T = M the radical of End(M) is checked,
        otherwise the whole of Hom(T, M).
        """
        M, X, p = self.end, self.middle, self.end.p
        ind = indecomposability(T)
        if not ind.indecomposable:
            raise ARError("lifting checks need an indecomposable test module")
        if is_isomorphic(T, M):
            if T != M:
                raise ARError("pass M itself, not an isomorphic copy")
            targets = np.stack([f.mat for f in end_algebra(M).radical_maps()] or [np.zeros((M.dim, M.dim), dtype=np.int64)])
        else:
            H = hom_basis(T, M)
            if H.dim == 0:
                return True
            targets = H.basis
        HX = hom_basis(T, X)
        if HX.dim == 0:
            return not targets.any()
        lifted = np.einsum("ab,sbc->sac", self.projection.mat, HX.basis) % p
        span = lifted.reshape(HX.dim, -1)
        r = la.rank(span, p)
        return la.rank(np.vstack([span, targets.reshape(targets.shape[0], -1)]), p) == r


def ar_sequence(M, ctx=None):
    """0 -> Omega^2 M -> X -> M -> 0 as the pushout of Omega M -> P(M) along Omega(phi)."""
    ctx = _ctx(ctx)
    cls = ar_class(M, ctx)
    p = M.p
    cov = free_cover(M, ctx)
    om = omega_map(cls.map, 1, ctx)  # Omega M -> Omega^2 M
    O2 = om.codomain
    P = cov.projective
    S = direct_sum([O2, P])
    rel = np.vstack([om.mat, (-cov.embedding.mat) % p])
    q = quotient_module(S.module, rel)
    X = q.module
    inc = q.projection.compose(S.inclusions[0])
    proj_mat = la.mul(np.hstack([np.zeros((M.dim, O2.dim), dtype=np.int64), cov.cover.mat]), q.lift, p)
    proj = ModuleMap(X, M, proj_mat)
    if not (inc.is_equivariant() and proj.is_equivariant()):
        raise AssertionError("sequence maps are not equivariant")
    ra = la.rank(inc.mat, p)
    rb = la.rank(proj.mat, p)
    exact = (
        ra == O2.dim
        and rb == M.dim
        and ra + rb == X.dim
        and not la.mul(proj.mat, inc.mat, p).any()
    )
    H = hom_basis(M, X)
    comps = np.einsum("ab,sbc->sac", proj.mat, H.basis) % p if H.dim else np.zeros((0, M.dim, M.dim), dtype=np.int64)
    idv = np.eye(M.dim, dtype=np.int64).reshape(1, -1)
    if H.dim:
        span = comps.reshape(H.dim, -1)
        split = la.rank(np.vstack([span, idv]), p) == la.rank(span, p)
    else:
        split = False
    st = strip_projectives(X, ctx)
    return ARSequence(M, cls, O2, X, inc, proj, (ra, X.dim, rb), exact, split, st.module, st.free_rank)


# --------------------------------------------------------------------------
# relative projectivity and syzygy exclusion


def is_relatively_projective(M, Q):
    """Higman's criterion: M is a summand of a module induced from Q iff the
    counit Ind_Q Res_Q M -> M splits."""
    R = restrict(M, Q)
    counit = adjoint_hom("out_of_induced", ModuleMap(R, R, np.eye(M.dim, dtype=np.int64)), Q, M)
    IR = counit.domain
    H = hom_basis(M, IR)
    p = M.p
    if H.dim == 0:
        return False
    comps = np.einsum("ab,sbc->sac", counit.mat, H.basis) % p
    X, _ = la.solve(comps.reshape(H.dim, -1).T, np.eye(M.dim, dtype=np.int64).reshape(-1, 1), p)
    return X is not None


def syzygy_exclusion(M, rng=WITNESS_SYZYGY_RANGE, ctx=None):
    """Check M is not isomorphic to Omega^i(k) for |i| <= rng."""
    from .reps import trivial_module

    ctx = _ctx(ctx)
    k = trivial_module(M.group, M.p)
    rows = []
    ok = True
    for i in range(-rng, rng + 1):
        Om = syzygy(k, i, ctx).module
        if Om.dim != M.dim:
            rows.append({"i": i, "dim": Om.dim, "method": "dimension", "isomorphic": False})
            continue
        res = is_isomorphic(M, Om)
        if not res.exact:
            raise CapExceeded("isomorphism test inconclusive")
        rows.append({"i": i, "dim": Om.dim, "method": res.method, "isomorphic": bool(res)})
        ok &= not res.isomorphic
    return ok, rows


# --------------------------------------------------------------------------
# strong ghost witnesses


def regular_quotient(G, p, s):
    """kG / A_s for a composition flag A_1 < A_2 < ... of the regular module."""
    R = regular_module(G, p)
    chain = composition_flag(R)
    q = quotient_module(R, chain[s])
    q.module.name = f"kG/A{s}"
    return q.module


def witness_module(G, p):
    """The indecomposable module used for the strong-ghost construction, or None."""
    require_p_group(regular_module(G, p))
    fam = G.family()
    if fam[0] == "trivial":
        return None
    if fam[0] == "cyclic":
        if G.order <= 4:
            return None
        return jordan_module(G, p, 2 if p != 2 else 3)
    if fam == ("elemab", 2, 2):
        return v4_band_module(G, p, 3, 1)
    if G.order > 64:
        raise GroupError("witness search supports groups of order <= 64")
    return regular_quotient(G, p, p + 1)


@dataclass(eq=False)
class StrongGhostWitness:
    module: object
    map: ModuleMap
    evidence: dict = field(default_factory=dict)
    certificate: object = None
    sequence: ARSequence = None


def strong_ghost_witness(G, p, cap=12, ctx=None):
    """None for C_2, C_3, C_4; otherwise an AR class that is a nonzero strong
    ghost, with checked evidence for both hypotheses of the construction."""
    from .ghosts import is_strong_ghost

    ctx = _ctx(ctx)
    M = witness_module(G, p)
    if M is None:
        return None
    ind = indecomposability(M)
    seq = ar_sequence(M, ctx)
    phi = seq.cls.map
    subs = p_subgroups(G, p, nontrivial=True, proper=True)
    relproj = [
        {"order": Q.order, "elements": sorted(Q.elements), "relatively_projective": is_relatively_projective(M, Q)}
        for Q in sorted(subs, key=lambda H: (H.order, sorted(H.elements)))
        if Q.order < G.order
    ]
    coprime = M.dim % p != 0
    cond1_ok = not any(r["relatively_projective"] for r in relproj)
    split = [
        {"order": r["order"], "elements": r["elements"], "stably_zero": is_stably_zero(restrict_map(phi, Q), ctx=ctx)}
        for r, Q in zip(relproj, sorted(subs, key=lambda H: (H.order, sorted(H.elements))))
    ]
    excl_ok, excl_rows = syzygy_exclusion(M, WITNESS_SYZYGY_RANGE, ctx)
    cert = is_strong_ghost(phi, "auto", cap, ctx=ctx)
    zero = is_stably_zero(phi, ctx=ctx)
    evidence = {
        "group": G.name,
        "order": G.order,
        "p": p,
        "module": M.name,
        "dim": M.dim,
        "indecomposable": bool(ind.indecomposable),
        "indecomposable_exact": bool(ind.exact),
        "dim_coprime_to_p": coprime,
        "dim_mod_order": M.dim % G.order,
        "condition1": {
            "criterion": "dimension" if coprime else "relative-projectivity",
            "relative_projectivity": relproj,
            "ok": cond1_ok,
        },
        "condition2": {"range": [-WITNESS_SYZYGY_RANGE, WITNESS_SYZYGY_RANGE], "ok": excl_ok, "checks": excl_rows},
        "ar_class": {"solution_dim": seq.cls.solution_dim, "radical_dim": seq.cls.radical_dim},
        "sequence": {"ranks": list(seq.ranks), "exact": seq.exact, "split": seq.split, "middle_dim": seq.middle.dim},
        "restriction_split": split,
        "strong_ghost": cert.verdict,
        "stably_zero": bool(zero),
    }
    return StrongGhostWitness(M, phi, evidence, cert, seq)
