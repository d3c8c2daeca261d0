"""Verification reports: each one replays a family of exact checks and
returns rows of dimensions, ranks and verdicts (never basis matrices, which
depend on pivot choices).

A report is a dict ``{"report", "config", "checks", "pass"}``; every check
row carries ``op`` and ``inputs`` so it can be replayed in isolation.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import linalg as la
from .ar import strong_ghost_witness
from .cohom import periodicity_witness, tate_dual_of_identity, tate_group, tate_induced
from .fixtures import c4_jordans, gminus1, random_map, random_module, s3_pool, subgroup_of_order
from .ghosts import GHOST, NOT_GHOST, is_eventual_ghost_window, is_ghost, is_ghost_window, is_strong_ghost
from .groups import named_group, sylow_subgroup
from .reps import direct_sum, dual, dual_map, induce, is_isomorphic, jordan_module, mackey_summands, restrict, trivial_module
from .stable import StableContext, is_stably_zero, omega, stable_hom


@dataclass
class ReportConfig:
    cap: int = 12
    seed: int = 0
    mode: str = "auto"
    group: str = None
    p: int = None
    samples: int = 50

    def as_dict(self):
        return {k: v for k, v in vars(self).items() if v is not None}


def _row(name, ok, op, inputs, **data):
    return {"name": name, "pass": bool(ok), "op": op, "inputs": inputs, **data}


def _report(name, cfg, checks):
    return {"report": name, "config": cfg.as_dict(), "checks": checks, "pass": all(c["pass"] for c in checks)}


def _all_classes(S):
    """Every nonzero element of a stable hom space, in lexicographic coefficient order."""
    for coeffs in product(range(S.p), repeat=S.dim):
        if any(coeffs):
            yield coeffs, S.class_map(coeffs)


# --------------------------------------------------------------------------


def prop31(cfg):
    """No nonzero strong ghosts between the indecomposables of C_4."""
    ctx = StableContext()
    Ms = c4_jordans()
    checks = []
    for (i, A), (j, B) in product(enumerate(Ms, 1), repeat=2):
        S = stable_hom(A, B, ctx)
        n = strong = 0
        for _, f in _all_classes(S):
            n += 1
            cert = is_strong_ghost(f, cfg.mode, cfg.cap, ctx=ctx)
            strong += cert.verdict != NOT_GHOST
        checks.append(
            _row(
                f"J{i}->J{j}",
                strong == 0,
                "is_strong_ghost",
                {"group": "cyclic:4", "p": 2, "domain": f"jordan:{i}", "codomain": f"jordan:{j}", "classes": "all nonzero"},
                stable_dim=S.dim,
                nonzero_classes=n,
                strong_ghosts=strong,
            )
        )
    return _report("prop31", cfg, checks)


THM33_GROUPS = [
    ("cyclic:2", 2),
    ("cyclic:3", 3),
    ("cyclic:4", 2),
    ("cyclic:5", 5),
    ("cyclic:8", 2),
    ("cyclic:9", 3),
    ("elemab:2:2", 2),
    ("elemab:3:2", 3),
]


def _prime_of(G):
    n = G.order
    return next(q for q in range(2, n + 1) if n % q == 0)


def thm33(cfg):
    """Strong ghost witnesses exist exactly outside C_2, C_3, C_4."""
    if cfg.group:
        G = named_group(cfg.group)
        targets = [(cfg.group, cfg.p or _prime_of(G))]
    else:
        targets = THM33_GROUPS
    checks = []
    for spec, p in targets:
        G = named_group(spec)
        w = strong_ghost_witness(G, p, cfg.cap, ctx=StableContext())
        inputs = {"group": spec, "p": p}
        expect_none = G.is_cyclic() and G.order <= 4
        if w is None:
            checks.append(_row(spec, expect_none, "strong_ghost_witness", inputs, witness=None))
            continue
        ev = w.evidence
        ok = (
            not expect_none
            and ev["strong_ghost"] == GHOST
            and not ev["stably_zero"]
            and ev["condition1"]["ok"]
            and ev["condition2"]["ok"]
            and ev["indecomposable"]
        )
        checks.append(
            _row(
                spec,
                ok,
                "strong_ghost_witness",
                inputs,
                witness={
                    "module": ev["module"],
                    "dim": ev["dim"],
                    "dim_coprime_to_p": ev["dim_coprime_to_p"],
                    "dim_mod_order": ev["dim_mod_order"],
                    "condition1": ev["condition1"]["criterion"],
                    "condition1_ok": ev["condition1"]["ok"],
                    "condition2_ok": ev["condition2"]["ok"],
                    "sequence_ranks": ev["sequence"]["ranks"],
                    "strong_ghost": ev["strong_ghost"],
                    "stably_zero": ev["stably_zero"],
                },
            )
        )
    return _report("thm33", cfg, checks)


def _duality_fixtures():
    C4, V4, Q8 = named_group("cyclic:4"), named_group("elemab:2:2"), named_group("quaternion:8")
    return [
        ("cyclic:4", "jordan:2", jordan_module(C4, 2, 2)),
        ("elemab:2:2", "trivial", trivial_module(V4, 2)),
        ("elemab:2:2", "omega:1", omega(trivial_module(V4, 2), 1)),
        ("quaternion:8", "trivial", trivial_module(Q8, 2)),
    ]


def duality(cfg):
    """dim Ĥ^(-i-1)(M) = dim Ĥ^i(M*), and duals of ghosts are ghosts."""
    ctx = StableContext()
    checks = []
    for spec, mspec, M in _duality_fixtures():
        table = []
        for i in range(-4, 5):
            a = tate_group(M, -i - 1, ctx).dim
            b = tate_group(dual(M), i, ctx).dim
            table.append({"i": i, "dim_minus_i_minus_1": a, "dim_dual_i": b})
        ok = all(r["dim_minus_i_minus_1"] == r["dim_dual_i"] for r in table)
        checks.append(_row(f"{spec}:{mspec}", ok, "tate_group", {"group": spec, "p": 2, "module": mspec, "range": [-4, 4]}, table=table))

    M2 = jordan_module(named_group("cyclic:4"), 2, 2)
    f = gminus1(M2)
    a = is_ghost(f, "periodic", cfg.cap, ctx).verdict
    b = is_ghost(dual_map(f), "periodic", cfg.cap, ctx).verdict
    checks.append(
        _row("dual-ghost:cyclic:4:gminus1", a == GHOST and b == GHOST, "is_ghost", {"group": "cyclic:4", "p": 2, "module": "jordan:2", "map": "gminus1", "mode": "periodic"}, verdict=a, dual_verdict=b)
    )
    w = strong_ghost_witness(named_group("cyclic:5"), 5, cfg.cap, ctx)
    a = is_strong_ghost(w.map, cfg.mode, cfg.cap, ctx=ctx).verdict
    b = is_strong_ghost(dual_map(w.map), cfg.mode, cfg.cap, ctx=ctx).verdict
    checks.append(
        _row("dual-strong:cyclic:5:ar", a == GHOST and b == GHOST, "is_strong_ghost", {"group": "cyclic:5", "p": 5, "module": "jordan:2", "map": "ar"}, verdict=a, dual_verdict=b)
    )
    return _report("duality", cfg, checks)


def _shapiro_fixtures():
    C4, V4, S3 = named_group("cyclic:4"), named_group("elemab:2:2"), named_group("symmetric:3")
    return [
        ("cyclic:4", 2, 2, C4),
        ("elemab:2:2", 2, 2, V4),
        ("symmetric:3", 3, 3, S3),
    ]


def eckmann_shapiro(cfg):
    """dim Ĥ^i(H, M) = dim Ĥ^i(G, M induced to G)."""
    ctx = StableContext()
    checks = []
    for spec, p, h, G in _shapiro_fixtures():
        H = subgroup_of_order(G, h)
        k = trivial_module(H.group, p)
        ind = induce(k, H)
        table = [{"i": i, "dim_H": tate_group(k, i, ctx).dim, "dim_G": tate_group(ind, i, ctx).dim} for i in range(-4, 5)]
        ok = all(r["dim_H"] == r["dim_G"] for r in table)
        checks.append(
            _row(f"{spec}>{h}", ok, "tate_group", {"group": spec, "p": p, "subgroup": list(H.elements), "module": "trivial", "range": [-4, 4]}, table=table)
        )
    return _report("eckmann_shapiro", cfg, checks)


def mackey(cfg):
    """(M induced to G) restricted to Q against the double-coset sum."""
    S3, C10 = named_group("symmetric:3"), named_group("cyclic:10")
    H2 = subgroup_of_order(S3, 2)
    H5 = subgroup_of_order(C10, 5)
    cases = [
        ("symmetric:3", 2, H2, "trivial", trivial_module(H2.group, 2)),
        ("cyclic:10", 5, H5, "trivial", trivial_module(H5.group, 5)),
        ("cyclic:10", 5, H5, "jordan:2", jordan_module(H5.group, 5, 2)),
    ]
    checks = []
    for spec, p, H, mspec, M in cases:
        left = restrict(induce(M, H), H)
        parts = mackey_summands(M, H, H)
        right = direct_sum([m for _, m in parts]).module
        iso = is_isomorphic(left, right)
        ok = left.dim == right.dim and iso.isomorphic and iso.exact
        checks.append(
            _row(
                f"{spec}:{mspec}",
                ok,
                "mackey_summands",
                {"group": spec, "p": p, "H": list(H.elements), "Q": list(H.elements), "module": mspec},
                dim_left=left.dim,
                dims_right=[m.dim for _, m in parts],
                double_cosets=[int(x) for x, _ in parts],
                isomorphic=iso.verdict,
            )
        )
    return _report("mackey", cfg, checks)


def example53(cfg):
    """The class eta in Ĥ^-1(V_4, k) is nonzero on Tate cohomology in a single degree.

    Ĥ^i(Omega^-1 k) is identified with Ĥ^(i+1)(k), so the rank table is
    reported against both the target degree i and the source degree i + 1.
    """
    ctx = StableContext()
    V4 = named_group("elemab:2:2")
    eta = tate_dual_of_identity(V4, 2, ctx).map
    rows = []
    for i in range(-6, 7):
        A = tate_induced(eta, i, ctx)
        rows.append({"i": i, "source_degree": i + 1, "rank": la.rank(A, 2) if A.size else 0})
    nonzero = [r for r in rows if r["rank"]]
    inputs = {"group": "elemab:2:2", "p": 2, "map": "eta"}
    checks = [
        _row(
            "single-degree",
            len(nonzero) == 1 and nonzero[0]["source_degree"] == 0 and nonzero[0]["rank"] == 1,
            "tate_induced",
            {**inputs, "range": [-6, 6]},
            table=rows,
            nonzero_target_degrees=[r["i"] for r in nonzero],
            nonzero_source_degrees=[r["source_degree"] for r in nonzero],
        )
    ]
    ev = is_eventual_ghost_window(eta, 1, 10, ctx)
    checks.append(_row("eventual-window", ev.vanishes, "is_eventual_ghost_window", {**inputs, "window": [1, 10]}, vanishes=ev.vanishes))
    cert = is_ghost(eta, cfg.mode, cfg.cap, ctx)
    checks.append(
        _row(
            "not-ghost",
            cert.verdict == NOT_GHOST,
            "is_ghost",
            {**inputs, "mode": cfg.mode},
            verdict=cert.verdict,
            witness_degree=cert.witness.degree if cert.witness else None,
            witness_source_degree=cert.witness.degree + 1 if cert.witness else None,
        )
    )
    return _report("example53", cfg, checks)


PERIODIC = [("cyclic:2", 2, 1), ("cyclic:3", 3, 2), ("cyclic:4", 2, 2), ("cyclic:5", 5, 2), ("quaternion:8", 2, 4), ("elemab:2:2", 2, None)]


def periodicity(cfg):
    """Periodicity witnesses, and the width-d window test over C_4."""
    ctx = StableContext()
    checks = []
    for spec, p, d in PERIODIC:
        w = periodicity_witness(named_group(spec), p, max_d=8, ctx=ctx)
        got = w.d if w else None
        checks.append(_row(f"witness:{spec}", got == d, "periodicity_witness", {"group": spec, "p": p, "max_d": 8}, d=got))
    Ms = c4_jordans()
    for (i, A), (j, B) in product(enumerate(Ms, 1), repeat=2):
        S = stable_hom(A, B, ctx)
        agree = True
        counts = {"classes": 0, "window_ghosts": 0}
        for _, f in _all_classes(S):
            narrow, _ = is_ghost_window(f, 0, 1, ctx)
            wide, _ = is_ghost_window(f, -6, 6, ctx)
            cert = is_ghost(f, "periodic", cfg.cap, ctx)
            agree &= narrow == wide == (cert.verdict == GHOST)
            counts["classes"] += 1
            counts["window_ghosts"] += narrow
        checks.append(
            _row(
                f"window:J{i}->J{j}",
                agree,
                "is_ghost_window",
                {"group": "cyclic:4", "p": 2, "domain": f"jordan:{i}", "codomain": f"jordan:{j}", "windows": [[0, 1], [-6, 6]]},
                stable_dim=S.dim,
                **counts,
            )
        )
    return _report("periodicity", cfg, checks)


def faithfulness(cfg):
    """Stable vanishing is detected on the Sylow subgroup (S_3, p = 3)."""
    ctx = StableContext()
    rng = np.random.default_rng(cfg.seed)
    pool = s3_pool(3)
    P = sylow_subgroup(pool[0].group, 3)
    rows, ok, zeros = [], True, 0
    for s in range(cfg.samples):
        M = random_module(pool, 6, rng)
        N = random_module(pool, 6, rng)
        f = random_map(M, N, rng, stably_trivial=bool(s % 2))
        a = is_stably_zero(f, ctx=ctx)
        b = is_stably_zero(f, via_sylow=True, ctx=ctx)
        ok &= a == b
        zeros += a
        rows.append({"sample": s, "domain": M.name, "codomain": N.name, "stably_zero": a, "sylow_stably_zero": b})
    checks = [
        _row(
            "sylow-restriction",
            ok,
            "is_stably_zero",
            {"group": "symmetric:3", "p": 3, "sylow": list(P.elements), "seed": cfg.seed, "samples": cfg.samples, "dim": 6},
            stably_zero_count=zeros,
            samples=rows,
        )
    ]
    return _report("faithfulness", cfg, checks)


REPORTS = {
    "prop31": prop31,
    "thm33": thm33,
    "duality": duality,
    "eckmann_shapiro": eckmann_shapiro,
    "mackey": mackey,
    "example53": example53,
    "periodicity": periodicity,
    "faithfulness": faithfulness,
}


def run_report(name, cfg=None):
    cfg = cfg or ReportConfig()
    try:
        fn = REPORTS[name]
    except KeyError:
        raise KeyError(f"unknown report {name!r}; choose from {', '.join(REPORTS)}") from None
    return fn(cfg)


def run_all(cfg=None):
    cfg = cfg or ReportConfig()
    out = {name: fn(cfg) for name, fn in REPORTS.items()}
    return {"reports": out, "pass": all(r["pass"] for r in out.values())}
