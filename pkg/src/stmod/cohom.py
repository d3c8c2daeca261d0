"""Tate cohomology through the stable category.

A class of degree i with coefficients in M is a stable map Omega^i(k) -> M.
Products are compositions: for zeta of degree i with trivial coefficients
and theta of degree j, theta . zeta = theta o Omega^j(zeta).
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .groups import CapExceeded
from .reps import ModuleMap, dual_map, hom_basis, trivial_module
from .stable import SYZYGY_CAP, _ctx, omega_map, stable_hom, stably_equal, syzygy

DEFAULT_CAP = 12


@dataclass(eq=False)
class TateClass:
    degree: int
    map: ModuleMap  # Omega^degree(k) -> M

    @property
    def module(self):
        return self.map.codomain


@dataclass(eq=False)
class CohomologyGroup:
    degree: int
    module: object
    source: object  # Omega^degree(k)
    space: object  # StableHomSpace(source, module)

    @property
    def dim(self):
        return self.space.dim

    def classes(self):
        return [TateClass(self.degree, f) for f in self.space.classes()]

    def element(self, coeffs):
        return TateClass(self.degree, self.space.class_map(coeffs))

    def coordinates(self, maps):
        """Coordinates (dim, s) of maps source -> module, modulo stably trivial maps."""
        mats = np.stack([np.asarray(getattr(f, "mat", f)) for f in maps]) if maps else np.zeros(
            (0, self.module.dim, self.source.dim), dtype=np.int64
        )
        if mats.shape[0] == 0:
            return np.zeros((self.dim, 0), dtype=np.int64)
        return self.space.reduce(mats)


def _check_degree(i, cap):
    cap = SYZYGY_CAP if cap is None else cap
    if abs(i) > cap:
        raise CapExceeded(f"degree {i} outside the cap |i| <= {cap}")


def tate_group(M, i, ctx=None, cap=None):
    """Ĥ^i(G, M) as the stable hom space from Omega^i(k) to M."""
    _check_degree(i, cap)
    ctx = _ctx(ctx)
    k = trivial_module(M.group, M.p)
    src = syzygy(k, i, ctx).module
    return CohomologyGroup(i, M, src, stable_hom(src, M, ctx))


def tate_dims(M, degrees, ctx=None):
    return {i: tate_group(M, i, ctx).dim for i in degrees}


@dataclass(eq=False)
class OrdinaryH0:
    hom: object  # HomSpace(k, M)
    quotient: np.ndarray  # (dim Ĥ^0, dim Hom(k, M)): images of the basis in Ĥ^0
    tate: CohomologyGroup


def ordinary_h0(M, ctx=None):
    """Honest H^0 = Hom(k, M) together with its quotient map onto Ĥ^0."""
    T = tate_group(M, 0, ctx)
    H = hom_basis(trivial_module(M.group, M.p), M)
    if T.source.dim != 1:
        # trivial group: k is projective and Ĥ^0 vanishes
        return OrdinaryH0(H, np.zeros((0, H.dim), dtype=np.int64), T)
    Q = T.space.reduce(H.basis) if H.dim else np.zeros((T.dim, 0), dtype=np.int64)
    return OrdinaryH0(H, Q, T)


def tate_induced(phi, i, ctx=None, cap=None):
    """Matrix of phi_*: Ĥ^i(G, M) -> Ĥ^i(G, N) in the stored class bases."""
    ctx = _ctx(ctx)
    src = tate_group(phi.domain, i, ctx, cap)
    dst = tate_group(phi.codomain, i, ctx, cap)
    if src.dim == 0 or dst.dim == 0:
        return np.zeros((dst.dim, src.dim), dtype=np.int64)
    imgs = np.einsum("ab,sbc->sac", phi.mat, src.space.coset.reshape(src.dim, phi.domain.dim, src.source.dim))
    return dst.space.reduce(imgs % phi.p)


def induced_rank(phi, i, ctx=None, cap=None):
    return la.rank(tate_induced(phi, i, ctx, cap), phi.p)


# --------------------------------------------------------------------------
# products


def syzygy_identification(i, j, G, p, ctx=None):
    """A stable isomorphism Omega^(i+j)(k) -> Omega^j(Omega^i(k)).

    Identity when the two constructions coincide (i, j >= 0 for a p-group);
    otherwise a spanning class of the one-dimensional stable hom space,
    determined only up to a unit of k.
    """
    ctx = _ctx(ctx)
    k = trivial_module(G, p)
    target = syzygy(syzygy(k, i, ctx).module, j, ctx).module
    src = syzygy(k, i + j, ctx).module
    if src == target:
        return ModuleMap(src, target, np.eye(src.dim, dtype=np.int64))
    S = stable_hom(src, target, ctx)
    if S.dim != 1:
        raise ArithmeticError(f"expected a one-dimensional stable hom space, got {S.dim}")
    return S.classes()[0]


def cup_compose(zeta, theta, ctx=None):
    """Module product theta . zeta of zeta in Ĥ^i(G, k) and theta in Ĥ^j(G, M)."""
    ctx = _ctx(ctx)
    i, j = zeta.degree, theta.degree
    shifted = omega_map(zeta.map, j, ctx)  # Omega^j Omega^i k -> Omega^j k
    G, p = zeta.map.domain.group, zeta.map.p
    iso = syzygy_identification(i, j, G, p, ctx)
    if theta.map.domain != shifted.codomain or iso.codomain != shifted.domain:
        raise ValueError("class representatives do not match the cached syzygies")
    return TateClass(i + j, theta.map.compose(shifted).compose(iso))


# --------------------------------------------------------------------------
# generator bounds

# Degree bound d for generators of H*(G, k), for groups where it is classical.
def trusted_ring_bound(G, p):
    if not G.is_p_group(p) or G.order == 1:
        return None
    fam = G.family()
    if fam[0] == "cyclic":
        return 1 if fam[1] == 2 else 2
    if fam[0] == "elemab":
        return 1 if fam[1] == 2 else 2
    if fam == ("quaternion", 8):
        return 4
    return None


@dataclass(eq=False)
class RingGenerators:
    group: object
    p: int
    generators: list  # TateClass, ordered by degree
    d: int
    cap: int
    dims: dict = field(default_factory=dict)

    @property
    def degrees(self):
        return [z.degree for z in self.generators]

    @property
    def trailing_window(self):
        return self.cap - self.d


def _new_classes(T, products, p):
    """Basis classes of T completing the span of ``products`` (coordinate columns)."""
    if T.dim == 0:
        return []
    P = products if products.size else np.zeros((T.dim, 0), dtype=np.int64)
    q = la.rank(P, p) if P.shape[1] else 0
    if q == T.dim:
        return []
    piv = la.independent_columns(np.hstack([P, np.eye(T.dim, dtype=np.int64)]), p)
    s = P.shape[1]
    return [c - s for c in piv if c >= s]


def _products_into(T, lower, gens, ctx):
    """Coordinates in T of theta . zeta for ring generators zeta and lower classes theta."""
    cols = []
    for z in gens:
        rest = T.degree - z.degree
        for theta in lower.get(rest, []):
            prod = cup_compose(z, theta, ctx)
            cols.append(prod.map.mat)
    if not cols:
        return np.zeros((T.dim, 0), dtype=np.int64)
    return T.space.reduce(np.stack(cols))


def ring_generator_bound(G, p, cap=DEFAULT_CAP, ctx=None):
    """Greedy degree sweep for generators of H*(G, k) up to ``cap``."""
    ctx = _ctx(ctx)
    k = trivial_module(G, p)
    gens, classes, dims = [], {}, {}
    d = 0
    for j in range(1, cap + 1):
        T = tate_group(k, j, ctx)
        dims[j] = T.dim
        P = _products_into(T, classes, [z for z in gens if z.degree < j], ctx)
        new = _new_classes(T, P, p)
        basis = T.classes()
        for c in new:
            gens.append(basis[c])
        if new:
            d = j
        classes[j] = basis
    return RingGenerators(G, p, gens, d, cap, dims)


@dataclass(eq=False)
class ModuleGeneration:
    module: object
    m: int
    cap: int
    generator_degrees: list
    verified: bool  # the trailing window beyond m is at least the ring bound d


def module_generation_bound(M, ring, cap=DEFAULT_CAP, ctx=None):
    """Largest degree t <= cap at which H^t(G, M) needs a new module generator.

    Degree 0 uses honest Hom(k, M); positive degrees use Ĥ^t = H^t.
    """
    ctx = _ctx(ctx)
    h0 = ordinary_h0(M, ctx)
    lower = {0: [TateClass(0, f) for f in h0.hom.maps()]} if h0.hom.dim else {0: []}
    degs = [0] * len(lower[0])
    m = 0
    for t in range(1, cap + 1):
        T = tate_group(M, t, ctx)
        P = _products_into(T, lower, [z for z in ring.generators if z.degree <= t], ctx)
        new = _new_classes(T, P, M.p)
        if new:
            m = t
            degs += [t] * len(new)
        lower[t] = T.classes()
    return ModuleGeneration(M, m, cap, degs, cap - m >= ring.d)


@dataclass(eq=False)
class GeneratorBounds:
    d: int
    m: int
    n: int
    cap: int
    trusted: bool  # d from the built-in table
    m_verified: bool
    n_verified: bool
    ring: RingGenerators

    def as_dict(self):
        return {
            "d": self.d,
            "m": self.m,
            "n": self.n,
            "cap": self.cap,
            "trusted_d": self.trusted,
            "m_verified": self.m_verified,
            "n_verified": self.n_verified,
        }


def generator_bounds(M, N, cap=DEFAULT_CAP, ctx=None):
    """Bounds (d, m, n): ring generators, module generators of H*(M) and of H*(N*)."""
    from .reps import dual

    ctx = _ctx(ctx)
    ring = ring_generator_bound(M.group, M.p, cap, ctx)
    trusted = trusted_ring_bound(M.group, M.p)
    if trusted is not None:
        ring.d = trusted
    gm = module_generation_bound(M, ring, cap, ctx)
    gn = module_generation_bound(dual(N), ring, cap, ctx)
    return GeneratorBounds(ring.d, gm.m, gn.m, cap, trusted is not None, gm.verified, gn.verified, ring)


# --------------------------------------------------------------------------
# periodicity


@dataclass(eq=False)
class PeriodicityWitness:
    d: int
    u: TateClass  # Ĥ^d(G, k): Omega^d k -> k
    v: TateClass  # Ĥ^-d(G, k) with u . v = 1
    section: ModuleMap  # k -> Omega^d k with u o section = id stably


def _unit_coordinate(f, ctx):
    """Coordinate of an endomorphism of k (or of Omega^0 k) in the 1-dim Ĥ^0."""
    S = stable_hom(f.domain, f.codomain, ctx)
    if S.dim == 0:
        return None
    return int(S.reduce(f.mat)[0, 0])


def periodicity_witness(G, p, max_d=8, ctx=None):
    """Smallest d <= max_d with an invertible class in Ĥ^d(G, k), or None."""
    ctx = _ctx(ctx)
    k = trivial_module(G, p)
    if stable_hom(k, k, ctx).dim == 0:
        return None
    for d in range(1, max_d + 1):
        X = syzygy(k, d, ctx).module
        A = stable_hom(X, k, ctx)
        B = stable_hom(k, X, ctx)
        if A.dim == 0 or B.dim == 0:
            continue
        found = None
        for a, u in enumerate(A.classes()):
            for b, s in enumerate(B.classes()):
                c = _unit_coordinate(u.compose(s), ctx)
                if c:
                    found = (u, s.scale(pow(c, p - 2, p)))
                    break
            if found:
                break
        if not found:
            continue
        u, s = found
        ident = ModuleMap(X, X, np.eye(X.dim, dtype=np.int64))
        if not stably_equal(s.compose(u), ident, ctx):
            continue
        uc = TateClass(d, u)
        v = _inverse_class(uc, ctx)
        if v is None:
            continue
        return PeriodicityWitness(d, uc, v, s)
    return None


def _inverse_class(u, ctx):
    """v in Ĥ^-d(G, k) with u . v equal to the identity class."""
    k = u.map.codomain
    T = tate_group(k, -u.degree, ctx)
    H0 = tate_group(k, 0, ctx)
    cols = []
    for v in T.classes():
        prod = cup_compose(u, v, ctx)
        cols.append(H0.coordinates([prod.map])[:, 0])
    if not cols:
        return None
    A = np.stack(cols, axis=1)
    one = H0.coordinates([ModuleMap(H0.source, k, np.eye(1, dtype=np.int64))])
    X, _ = la.solve(A, one, k.p)
    if X is None:
        return None
    return T.element(X[:, 0])


def tate_dual_of_identity(G, p, ctx=None):
    """A spanning class eta of Ĥ^-1(G, k), eta: Omega^-1 k -> k."""
    T = tate_group(trivial_module(G, p), -1, ctx)
    if T.dim == 0:
        raise ValueError(f"Ĥ^-1({G.name}, k) vanishes")
    return T.classes()[0]


def dual_class_rank(phi, i, ctx=None):
    """Rank of Ĥ^i(G, phi*)."""
    return induced_rank(dual_map(phi), i, ctx)
