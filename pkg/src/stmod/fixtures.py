"""Small fixture families shared by the reports and the tests."""

import numpy as np

from . import linalg as la
from .groups import Subgroup, named_group
from .reps import (
    Module,
    ModuleMap,
    direct_sum,
    hom_basis,
    induce,
    jordan_module,
    quotient_module,
    sign_module,
    submodule,
    trivial_module,
)
from .stable import phom_basis


def c4_jordans():
    """J_1, J_2, J_3 over C_4 at p = 2 (every non-projective indecomposable)."""
    G = named_group("cyclic:4")
    return [jordan_module(G, 2, i) for i in (1, 2, 3)]


def cyclic_jordans(n, p):
    G = named_group(f"cyclic:{n}")
    return [jordan_module(G, p, i) for i in range(1, n)]


def _twist(M, sgn):
    act = (M.action * sgn.action[:, :1, :1]) % M.p
    return Module(M.group, M.p, act, name=f"{M.name}.sgn")


def s3_pool(p=3):
    """Indecomposable S_3-modules in characteristic 3, plus the regular module."""
    G = named_group("symmetric:3")
    k = trivial_module(G, p)
    sgn = sign_module(G, p)
    C2 = Subgroup(G, [0, next(g for g in range(1, G.order) if G.element_orders[g] == 2)])
    perm = induce(trivial_module(C2.group, p), C2)
    perm.name = "perm"
    aug, _ = submodule(perm, np.array([[1, 2, 0], [0, 1, 2]], dtype=np.int64).T % p)
    aug.name = "aug"
    top = quotient_module(perm, np.ones((3, 1), dtype=np.int64)).module
    top.name = "perm/k"
    pool = [k, sgn, aug, top, _twist(aug, sgn), _twist(top, sgn), perm, _twist(perm, sgn)]
    reg = induce(trivial_module(Subgroup(G, [0]).group, p), Subgroup(G, [0]))
    reg.name = "kG"
    return pool + [reg]


def random_module(pool, dim, rng):
    """A random direct sum of pool members of total dimension ``dim``,
    conjugated by a random invertible matrix."""
    parts, left = [], dim
    while left:
        fits = [M for M in pool if 0 < M.dim <= left]
        M = fits[int(rng.integers(len(fits)))]
        parts.append(M)
        left -= M.dim
    S = direct_sum(parts).module
    p = S.p
    while True:
        B = rng.integers(0, p, size=(dim, dim))
        if la.rank(B, p) == dim:
            break
    Binv = la.inverse(B, p)
    act = np.einsum("ab,gbc,cd->gad", B, S.action, Binv) % p
    return Module(S.group, p, act, name="+".join(M.name for M in parts))


def random_map(M, N, rng, stably_trivial=False):
    """A random equivariant map; with ``stably_trivial`` drawn from PHom."""
    p = M.p
    if stably_trivial:
        rows = phom_basis(M, N)
    else:
        rows = hom_basis(M, N).flat()
    if rows.shape[0] == 0:
        return ModuleMap(M, N, np.zeros((N.dim, M.dim), dtype=np.int64))
    c = rng.integers(0, p, size=rows.shape[0])
    return ModuleMap(M, N, ((c @ rows) % p).reshape(N.dim, M.dim))


def subgroup_of_order(G, n, index=0):
    from .groups import all_subgroups

    subs = [H for H in all_subgroups(G) if H.order == n]
    if not subs:
        raise ValueError(f"{G.name} has no subgroup of order {n}")
    return subs[index]


def gminus1(M):
    """g - 1 for the distinguished generator g of a cyclic group."""
    G = M.group
    g = G.cyclic_generator()
    return ModuleMap(M, M, (M.action[g] - np.eye(M.dim, dtype=np.int64)) % M.p)


def identity_map(M):
    return ModuleMap(M, M, np.eye(M.dim, dtype=np.int64))


def zero_map(M, N=None):
    N = M if N is None else N
    return ModuleMap(M, N, np.zeros((N.dim, M.dim), dtype=np.int64))
