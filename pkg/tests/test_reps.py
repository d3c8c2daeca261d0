import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stmod import linalg as la
from stmod.fixtures import cyclic_jordans, random_module, s3_pool, subgroup_of_order
from stmod.groups import GroupError, Subgroup, all_subgroups, named_group
from stmod.reps import (
    Module,
    ModuleError,
    ModuleMap,
    adjoint_hom,
    adjoint_hom_inverse,
    composition_flag,
    conjugate_module,
    direct_sum,
    dual,
    dual_map,
    fixed_points,
    hom_basis,
    indecomposability,
    induce,
    induce_map,
    is_isomorphic,
    jordan_module,
    mackey_summands,
    module_from_generators,
    quotient_module,
    radical_and_socle,
    regular_module,
    restrict,
    sign_module,
    standard_module,
    submodule,
    trivial_module,
    v4_band_module,
    validate_module,
)

CYCLIC = [(2, 2), (3, 3), (4, 2), (5, 5), (8, 2), (9, 3)]


@st.composite
def cyclic_modules(draw, max_dim=6):
    n, p = draw(st.sampled_from(CYCLIC))
    seed = draw(st.integers(0, 2**31))
    dim = draw(st.integers(1, max_dim))
    rng = np.random.default_rng(seed)
    pool = cyclic_jordans(n, p) + [regular_module(named_group(f"cyclic:{n}"), p)]
    return random_module(pool, dim, rng), rng


def block_sizes(M):
    """Jordan type of the generator (oracle: ranks of powers of g - 1)."""
    G, p, d = M.group, M.p, M.dim
    N = (M.action[G.cyclic_generator()] - np.eye(d, dtype=np.int64)) % p
    ranks = [d]
    P = np.eye(d, dtype=np.int64)
    for _ in range(G.order):
        P = la.mul(P, N, p)
        ranks.append(la.rank(P, p))
    # number of blocks of size >= j is rank(N^(j-1)) - rank(N^j)
    ge = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    return sorted(j for j in range(1, len(ge) + 1) for _ in range(ge[j - 1] - (ge[j] if j < len(ge) else 0)))


@pytest.mark.parametrize("n,p", CYCLIC)
def test_jordan_hom_dims(n, p):
    Js = cyclic_jordans(n, p) + [jordan_module(named_group(f"cyclic:{n}"), p, n)]
    for i, A in enumerate(Js, 1):
        for j, B in enumerate(Js, 1):
            assert hom_basis(A, B).dim == min(i, j)


@given(cyclic_modules(), cyclic_modules())
def test_hom_dim_is_sum_of_block_minima(a, b):
    (M, _), (N, _) = a, b
    if not M.same_category(N):
        return
    expect = sum(min(x, y) for x in block_sizes(M) for y in block_sizes(N))
    H = hom_basis(M, N)
    assert H.dim == expect
    for f in H.maps():
        assert f.is_equivariant()


@given(cyclic_modules())
def test_dual_is_involutive_and_preserves_blocks(args):
    M, _ = args
    assert dual(dual(M)) == M
    assert block_sizes(dual(M)) == block_sizes(M)
    assert validate_module(dual(M)).ok


@given(cyclic_modules(), cyclic_modules())
def test_dual_map_reverses_hom(a, b):
    (M, _), (N, _) = a, b
    if not M.same_category(N):
        return
    assert hom_basis(M, N).dim == hom_basis(dual(N), dual(M)).dim
    for f in hom_basis(M, N).maps():
        assert dual_map(f).is_equivariant()


@given(cyclic_modules())
def test_conjugated_module_is_isomorphic(args):
    M, rng = args
    d = M.dim
    while True:
        B = rng.integers(0, M.p, size=(d, d))
        if la.rank(B, M.p) == d:
            break
    N = Module(M.group, M.p, np.einsum("ab,gbc,cd->gad", B, M.action, la.inverse(B, M.p)))
    res = is_isomorphic(M, N)
    assert res.isomorphic and res.exact
    assert ModuleMap(M, N, res.witness).is_equivariant()


def test_non_isomorphic_same_dimension():
    G = named_group("cyclic:4")
    J = {i: jordan_module(G, 2, i) for i in (1, 2, 3)}
    res = is_isomorphic(J[2], direct_sum([J[1], J[1]]).module)
    assert not res.isomorphic and res.exact
    res = is_isomorphic(direct_sum([J[1], J[3]]).module, direct_sum([J[2], J[2]]).module)
    assert not res.isomorphic and res.exact


def test_indecomposability_oracles():
    G = named_group("cyclic:4")
    for i in (1, 2, 3, 4):
        assert indecomposability(jordan_module(G, 2, i)).indecomposable
    S = direct_sum([jordan_module(G, 2, 1), jordan_module(G, 2, 2)]).module
    res = indecomposability(S)
    assert not res.indecomposable and res.exact
    e = res.idempotent
    assert np.array_equal(la.mul(e, e, 2), e)
    V4 = named_group("elemab:2:2")
    for n in (1, 2, 3):
        assert indecomposability(v4_band_module(V4, 2, n, 1)).indecomposable


def test_validation_rejects_non_homomorphism():
    G = named_group("cyclic:3")
    act = np.array([np.eye(2), [[1, 1], [0, 1]], [[1, 1], [0, 1]]], dtype=np.int64)
    rep = validate_module(Module(G, 3, act))
    assert not rep.ok and rep.pair is not None
    with pytest.raises(ModuleError):
        Module(G, 3, act, check=True)
    with pytest.raises(ModuleError):
        Module(G, 3, np.zeros((2, 1, 1)))


def test_jordan_errors():
    with pytest.raises(ModuleError):
        jordan_module(named_group("elemab:2:2"), 2, 2)
    with pytest.raises(ModuleError):
        jordan_module(named_group("cyclic:3"), 3, 4)
    with pytest.raises(ModuleError):
        jordan_module(named_group("cyclic:3"), 2, 2)  # g^3 != 1 over F_2


def test_standard_modules():
    S3 = named_group("symmetric:3")
    sgn = standard_module(S3, 3, "sign")
    assert sorted(int(x) for x in sgn.action[:, 0, 0]) == [1, 1, 1, 2, 2, 2]
    assert standard_module("cyclic:4", 2, "regular").dim == 4
    assert standard_module("cyclic:4", 2, "zero").dim == 0
    assert standard_module("elemab:2:2", 2, "v4_band:3:1").dim == 6
    with pytest.raises(ModuleError):
        standard_module("cyclic:4", 2, "bogus")
    with pytest.raises(ModuleError):
        sign_module(named_group("cyclic:4"), 2)


def test_fixed_points_radical_socle():
    G = named_group("cyclic:4")
    J3 = jordan_module(G, 2, 3)
    F, H = fixed_points(J3)
    assert F.shape[1] == 1 and H.dim == 1
    R, Soc = radical_and_socle(J3)
    assert R.shape[1] == 2 and Soc.shape[1] == 1
    with pytest.raises(GroupError):
        radical_and_socle(trivial_module(named_group("symmetric:3"), 3))


def test_sub_and_quotient_modules():
    R = regular_module(named_group("cyclic:4"), 2)
    chain = composition_flag(R)
    assert [c.shape[1] for c in chain] == [0, 1, 2, 3, 4]
    for i, A in enumerate(chain[1:], 1):
        S, inc = submodule(R, A)
        assert S.dim == i and inc.is_equivariant()
        q = quotient_module(R, A)
        assert q.module.dim == 4 - i and q.projection.is_equivariant()
        assert is_isomorphic(q.module, jordan_module(R.group, 2, 4 - i)).isomorphic if i < 4 else True
    with pytest.raises(ModuleError):
        submodule(R, np.array([[1], [0], [0], [0]]))


def test_module_from_generators_requires_generation():
    G = named_group("elemab:2:2")
    with pytest.raises(ModuleError):
        module_from_generators(G, 2, {1: np.eye(1, dtype=np.int64)})


# induction and restriction


def test_induced_from_trivial_subgroup_is_regular():
    for spec, p in [("cyclic:4", 2), ("symmetric:3", 3), ("quaternion:8", 2)]:
        G = named_group(spec)
        T = Subgroup(G, [0])
        ind = induce(trivial_module(T.group, p), T)
        assert is_isomorphic(ind, regular_module(G, p)).isomorphic


@pytest.mark.parametrize("spec,p", [("cyclic:4", 2), ("symmetric:3", 3), ("symmetric:3", 2), ("dihedral:8", 2), ("cyclic:10", 5)])
def test_frobenius_reciprocity(spec, p, rng):
    G = named_group(spec)
    pool_G = [trivial_module(G, p), regular_module(G, p)]
    if G.perms is not None:
        pool_G.append(sign_module(G, p))
    for H in all_subgroups(G)[1:-1]:
        M = trivial_module(H.group, p)
        if H.group.is_cyclic() and H.order % p == 0:
            M = jordan_module(H.group, p, 2)
        I = induce(M, H)
        assert I.dim == M.dim * G.order // H.order
        assert validate_module(I).ok
        for B in pool_G:
            Bres = restrict(B, H)
            assert hom_basis(I, B).dim == hom_basis(M, Bres).dim
            assert hom_basis(B, I).dim == hom_basis(Bres, M).dim
            for f in hom_basis(Bres, M).maps():
                Phi = adjoint_hom("into_induced", f, H, B)
                assert Phi.is_equivariant()
                assert np.array_equal(adjoint_hom_inverse("into_induced", Phi, H, M).mat, f.mat)
            for f in hom_basis(M, Bres).maps():
                Phi = adjoint_hom("out_of_induced", f, H, B)
                assert Phi.is_equivariant()
                assert np.array_equal(adjoint_hom_inverse("out_of_induced", Phi, H, M).mat, f.mat)


def test_induce_map_is_equivariant():
    G = named_group("cyclic:10")
    H = subgroup_of_order(G, 5)
    J2 = jordan_module(H.group, 5, 2)
    f = ModuleMap(J2, J2, (J2.action[H.group.cyclic_generator()] - np.eye(2, dtype=np.int64)) % 5)
    F = induce_map(f, H)
    assert F.is_equivariant() and F.domain.dim == 4


def test_restrict_requires_subgroup_of_module_group():
    M = trivial_module(named_group("cyclic:4"), 2)
    with pytest.raises(GroupError):
        restrict(M, Subgroup(named_group("cyclic:6"), [0, 3]))
    with pytest.raises(GroupError):
        induce(trivial_module(named_group("cyclic:3"), 2), Subgroup(named_group("cyclic:4"), [0, 2]))


def test_conjugate_module_valid():
    S3 = named_group("symmetric:3")
    H = subgroup_of_order(S3, 2)
    M = Module(H.group, 3, np.array([[[1]], [[2]]]))
    for x in range(S3.order):
        xM, K = conjugate_module(M, H, x)
        assert validate_module(xM).ok and K.order == 2


@pytest.mark.parametrize(
    "spec,p,h,q",
    [("symmetric:3", 2, 2, 2), ("symmetric:3", 3, 2, 3), ("cyclic:10", 5, 5, 5), ("dihedral:8", 2, 2, 4), ("symmetric:4", 2, 3, 4)],
)
def test_mackey_decomposition(spec, p, h, q):
    G = named_group(spec)
    H = subgroup_of_order(G, h)
    Q = subgroup_of_order(G, q)
    for M in [trivial_module(H.group, p)] + ([jordan_module(H.group, p, 2)] if H.group.is_cyclic() and h % p == 0 else []):
        left = restrict(induce(M, H), Q)
        parts = mackey_summands(M, H, Q)
        right = direct_sum([m for _, m in parts]).module
        assert left.dim == right.dim
        res = is_isomorphic(left, right)
        assert res.isomorphic and res.exact


def test_s3_pool_members_valid():
    for M in s3_pool():
        assert validate_module(M).ok
