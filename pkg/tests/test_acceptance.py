"""The fourteen acceptance criteria, each checked exactly over F_p.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import time
from itertools import product

import numpy as np
import pytest

from stmod import linalg as la
from stmod.ar import ar_sequence, strong_ghost_witness
from stmod.cohom import periodicity_witness, tate_dual_of_identity, tate_group, tate_induced
from stmod.fixtures import c4_jordans, cyclic_jordans, gminus1, random_map, random_module, s3_pool, subgroup_of_order
from stmod.ghosts import GHOST, NOT_GHOST, is_eventual_ghost_window, is_ghost, is_ghost_window, is_strong_ghost
from stmod.groups import named_group, sylow_subgroup
from stmod.reps import (
    direct_sum,
    dual,
    dual_map,
    induce,
    induce_map,
    is_isomorphic,
    jordan_module,
    mackey_summands,
    restrict,
    restrict_map,
    trivial_module,
)
from stmod.stable import StableContext, is_stably_zero, omega, stable_hom

from oracles import brute_force_cohomology_dims

criterion = pytest.mark.criterion


def all_nonzero_classes(S):
    for coeffs in product(range(S.p), repeat=S.dim):
        if any(coeffs):
            yield S.class_map(coeffs)


def rank_of(A, p):
    return la.rank(A, p) if A.size else 0


@pytest.fixture(scope="module")
def m2_gminus1():
    G = named_group("cyclic:4")
    return gminus1(jordan_module(G, 2, 2))


WITNESS_GROUPS = [
    ("cyclic:5", 5, 2),
    ("cyclic:8", 2, 3),
    ("cyclic:9", 3, 2),
    ("elemab:2:2", 2, 6),
    ("elemab:3:2", 3, 5),
]


@pytest.fixture(scope="module")
def witnesses():
    ctx = StableContext()
    start = time.perf_counter()
    out = {spec: strong_ghost_witness(named_group(spec), p, 12, ctx) for spec, p, _ in WITNESS_GROUPS}
    return out, time.perf_counter() - start


# --------------------------------------------------------------------------


@criterion(1)
def test_c4_strong_ghosts_are_stably_zero():
    start = time.perf_counter()
    ctx = StableContext()
    Ms = c4_jordans()
    pairs = 0
    for A, B in product(Ms, repeat=2):
        S = stable_hom(A, B, ctx)
        for f in S.classes():
            if is_strong_ghost(f, ctx=ctx).verdict == GHOST:
                assert is_stably_zero(f, ctx=ctx)
        pairs += 1
    assert pairs == 9
    assert time.perf_counter() - start < 1.0


@criterion(2)
def test_c4_ghost_that_is_not_strong(m2_gminus1):
    cert = is_ghost(m2_gminus1, "periodic")
    assert cert.verdict == GHOST and cert.mode == "periodic"
    assert cert.periodicity.d == 2
    strong = is_strong_ghost(m2_gminus1)
    assert strong.verdict == NOT_GHOST
    w = strong.witness
    assert len(w.subgroup) == 2 and w.degree == 0 and w.image_rank == 1


@criterion(3)
@pytest.mark.parametrize("n", [2, 3])
def test_no_ghosts_when_sylow_is_c2_or_c3(n):
    ctx = StableContext()
    Js = cyclic_jordans(n, n)
    assert len(Js) == n - 1
    found = 0
    for A, B in product(Js, repeat=2):
        for f in all_nonzero_classes(stable_hom(A, B, ctx)):
            found += is_ghost(f, ctx=ctx).verdict == GHOST
    assert found == 0


@criterion(4)
@pytest.mark.parametrize("spec,p", [("cyclic:2", 2), ("cyclic:3", 3), ("cyclic:4", 2)])
def test_no_witness_for_small_cyclic(spec, p):
    assert strong_ghost_witness(named_group(spec), p) is None


@criterion(4)
@pytest.mark.parametrize("spec,p,dim", WITNESS_GROUPS)
def test_witness_evidence_verifies(witnesses, spec, p, dim):
    w = witnesses[0][spec]
    ev = w.evidence
    assert w.module.dim == dim and ev["indecomposable"]
    assert ev["condition1"]["ok"]
    assert ev["condition2"]["ok"] and ev["condition2"]["range"] == [-12, 12]
    assert all(not r["isomorphic"] for r in ev["condition2"]["checks"])
    assert ev["strong_ghost"] == GHOST and ev["stably_zero"] is False
    # recomputed independently of the bundle
    assert is_strong_ghost(w.map).verdict == GHOST
    assert not is_stably_zero(w.map)


@criterion(4)
@pytest.mark.parametrize("spec,p,dim", [g for g in WITNESS_GROUPS if g[0] != "elemab:2:2"])
def test_witness_dimension_coprime_to_p(witnesses, spec, p, dim):
    assert witnesses[0][spec].module.dim % p != 0


@criterion(4)
@pytest.mark.xfail(strict=True, reason="the V_4 band witness has dimension 6, which is even")
def test_v4_witness_dimension_coprime_to_p(witnesses):
    assert witnesses[0]["elemab:2:2"].module.dim % 2 != 0


@criterion(4)
def test_v4_witness_not_relatively_projective(witnesses):
    ev = witnesses[0]["elemab:2:2"].evidence
    rows = ev["condition1"]["relative_projectivity"]
    assert ev["condition1"]["criterion"] == "relative-projectivity"
    assert len(rows) == 3 and all(r["order"] == 2 and not r["relatively_projective"] for r in rows)


@criterion(4)
def test_witnesses_within_time_budget(witnesses):
    assert witnesses[1] < 30.0


@criterion(5)
@pytest.mark.parametrize("fixture", ["C4:J2", "V4:k", "V4:Omega k", "Q8:k"])
def test_tate_duality(fixture):
    ctx = StableContext()
    if fixture == "C4:J2":
        M = jordan_module(named_group("cyclic:4"), 2, 2)
    elif fixture == "Q8:k":
        M = trivial_module(named_group("quaternion:8"), 2)
    else:
        M = trivial_module(named_group("elemab:2:2"), 2)
        if fixture == "V4:Omega k":
            M = omega(M, 1, ctx)
    D = dual(M)
    for i in range(-4, 5):
        assert tate_group(M, -i - 1, ctx).dim == tate_group(D, i, ctx).dim


@criterion(6)
def test_dual_of_c4_ghost(m2_gminus1):
    d = dual_map(m2_gminus1)
    assert is_ghost(d, "periodic").verdict == GHOST
    assert is_strong_ghost(d).verdict == is_strong_ghost(m2_gminus1).verdict == NOT_GHOST


@criterion(6)
@pytest.mark.parametrize("spec", [g[0] for g in WITNESS_GROUPS])
def test_dual_of_witness_ghosts(witnesses, spec):
    d = dual_map(witnesses[0][spec].map)
    assert is_strong_ghost(d).verdict == GHOST
    assert is_ghost(d).verdict == GHOST


@criterion(7)
@pytest.mark.parametrize("spec", ["cyclic:4", "elemab:2:2"])
def test_eckmann_shapiro(spec):
    ctx = StableContext()
    G = named_group(spec)
    H = subgroup_of_order(G, 2)
    k = trivial_module(H.group, 2)
    up = induce(k, H)
    for i in range(-4, 5):
        assert tate_group(k, i, ctx).dim == tate_group(up, i, ctx).dim


@criterion(8)
@pytest.mark.parametrize("spec,p,h", [("symmetric:3", 2, 2), ("cyclic:10", 5, 5)])
def test_mackey(spec, p, h):
    G = named_group(spec)
    H = subgroup_of_order(G, h)
    M = trivial_module(H.group, p)
    left = restrict(induce(M, H), H)
    parts = mackey_summands(M, H, H)
    assert len(parts) == 2
    right = direct_sum([m for _, m in parts]).module
    assert left.dim == right.dim == G.order // h * M.dim
    iso = is_isomorphic(left, right)
    assert iso.isomorphic and iso.exact


@criterion(9)
@pytest.mark.parametrize("n,p", [(2, 2), (3, 3), (4, 2), (5, 5), (8, 2), (9, 3)])
def test_cyclic_dims(n, p):
    G = named_group(f"cyclic:{n}")
    k = trivial_module(G, p)
    assert [tate_group(k, i).dim for i in range(-6, 7)] == [1] * 13
    assert brute_force_cohomology_dims(G, p, 6) == [1] * 7


def _tate_from_resolution(G, p, lo, hi):
    """Tate dims of k from ordinary ones: Ĥ^0 = k for a p-group, Ĥ^-n = H^(n-1)."""
    ordinary = brute_force_cohomology_dims(G, p, max(hi, -lo))
    return {i: (ordinary[i] if i > 0 else 1 if i == 0 else ordinary[-i - 1]) for i in range(lo, hi + 1)}


@criterion(9)
def test_v4_dims():
    G = named_group("elemab:2:2")
    k = trivial_module(G, 2)
    got = {i: tate_group(k, i).dim for i in range(-6, 7)}
    assert got == {i: (i + 1 if i >= 0 else -i) for i in range(-6, 7)}
    assert got == _tate_from_resolution(G, 2, -6, 6)


@criterion(9)
def test_q8_dims():
    G = named_group("quaternion:8")
    k = trivial_module(G, 2)
    got = {i: tate_group(k, i).dim for i in range(-8, 9)}
    assert got == {i: (1, 2, 2, 1)[i % 4] for i in range(-8, 9)}
    assert got == _tate_from_resolution(G, 2, -8, 8)


@pytest.fixture(scope="module")
def eta_ranks():
    ctx = StableContext()
    eta = tate_dual_of_identity(named_group("elemab:2:2"), 2, ctx).map
    return eta, {i: rank_of(tate_induced(eta, i, ctx), 2) for i in range(-6, 7)}


@criterion(10)
@pytest.mark.xfail(strict=True, reason="eta: Omega^-1 k -> k is nonzero on Ĥ^-1, i.e. on source degree 0")
def test_eta_rank_one_at_degree_zero(eta_ranks):
    eta, ranks = eta_ranks
    assert ranks[0] == 1
    assert all(r == 0 for i, r in ranks.items() if i != 0)
    assert is_ghost(eta).witness.degree == 0


@criterion(10)
def test_eta_nonzero_in_a_single_degree(eta_ranks):
    eta, ranks = eta_ranks
    assert ranks[-1] == 1
    assert all(r == 0 for i, r in ranks.items() if i != -1)
    # Ĥ^i(Omega^-1 k) = Ĥ^(i+1)(k): the lone nonzero degree is source degree 0
    assert tate_group(eta.domain, -1).dim == tate_group(trivial_module(eta.domain.group, 2), 0).dim == 1


@criterion(10)
def test_eta_eventual_ghost_but_not_ghost(eta_ranks):
    eta, _ = eta_ranks
    assert is_eventual_ghost_window(eta, 1, 10).vanishes
    cert = is_ghost(eta)
    assert cert.verdict == NOT_GHOST
    assert cert.witness.degree + 1 == 0 and cert.witness.image_rank == 1


@criterion(11)
@pytest.mark.parametrize("spec,p,d", [("cyclic:2", 2, 1), ("cyclic:3", 3, 2), ("cyclic:4", 2, 2), ("cyclic:5", 5, 2), ("quaternion:8", 2, 4)])
def test_periodicity_witnesses(spec, p, d):
    w = periodicity_witness(named_group(spec), p, max_d=8)
    assert w is not None and w.d == d


@criterion(11)
def test_v4_not_periodic():
    assert periodicity_witness(named_group("elemab:2:2"), 2, max_d=8) is None


@criterion(11)
def test_c4_width_two_window_certifies_ghosts():
    ctx = StableContext()
    seen = 0
    for A, B in product(c4_jordans(), repeat=2):
        S = stable_hom(A, B, ctx)
        for f in S.classes():
            narrow, _ = is_ghost_window(f, 0, 1, ctx)
            wide, _ = is_ghost_window(f, -6, 6, ctx)
            assert narrow == wide
            if narrow:
                assert is_ghost(f, "periodic", ctx=ctx).verdict == GHOST
            seen += 1
    assert seen > 0


@criterion(12)
def test_sylow_faithfulness():
    ctx = StableContext()
    rng = np.random.default_rng(0)
    pool = s3_pool(3)
    P = sylow_subgroup(pool[0].group, 3)
    outcomes = []
    for s in range(50):
        M = random_module(pool, 6, rng)
        N = random_module(pool, 6, rng)
        f = random_map(M, N, rng, stably_trivial=bool(s % 2))
        a = is_stably_zero(f, ctx=ctx)
        assert a == is_stably_zero(restrict_map(f, P), ctx=ctx)
        outcomes.append(a)
    assert 0 < sum(outcomes) < 50


@criterion(13)
def test_ar_sequence_c5():
    G = named_group("cyclic:5")
    Js = [jordan_module(G, 5, i) for i in range(1, 6)]
    seq = ar_sequence(Js[1])
    assert seq.exact and not seq.split
    assert seq.ranks == (2, 4, 2)
    assert is_isomorphic(seq.middle, direct_sum([Js[0], Js[2]]).module).isomorphic
    for T in Js:
        assert seq.lifting_property(T)


@criterion(14)
def test_strong_ghost_induction_transfer():
    C10 = named_group("cyclic:10")
    H = subgroup_of_order(C10, 5)
    w = strong_ghost_witness(H.group, 5)
    assert is_strong_ghost(w.map).verdict == GHOST
    F = induce_map(w.map, H)
    cert = is_strong_ghost(F)
    assert cert.verdict == GHOST and cert.failure_set == []
    back = is_strong_ghost(restrict_map(F, H))
    assert back.verdict == GHOST and back.failure_set == []
