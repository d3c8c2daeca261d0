"""Ghost, strong ghost and eventual ghost predicates with certificates.

Verdicts:
  "ghost"                     proved
  "not-ghost"                 proved, with a witness degree and class
  "ghost-modulo-assumptions"  every checked degree vanishes but the degree
                              range is only justified by unverified bounds
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .cohom import (
    DEFAULT_CAP,
    generator_bounds,
    periodicity_witness,
    tate_group,
    tate_induced,
)
from .groups import p_subgroups
from .reps import dual_map, hom_basis, restrict_map
from .stable import _ctx, is_stably_zero, phom_basis

GHOST = "ghost"
NOT_GHOST = "not-ghost"
MODULO = "ghost-modulo-assumptions"
MODES = ("auto", "periodic", "bounds", "window")


class GhostError(ValueError):
    pass


@dataclass(eq=False)
class Witness:
    degree: int
    class_index: int  # index into the stored basis of Ĥ^degree(G, M)
    cls: object  # the class as a map Omega^degree k -> M
    image_rank: int
    subgroup: tuple = None  # elements of the restricting subgroup (strong ghosts)

    def as_dict(self, with_matrix=True):
        out = {"degree": self.degree, "class_index": self.class_index, "image_rank": self.image_rank}
        if self.subgroup is not None:
            out["subgroup"] = list(self.subgroup)
        if with_matrix:
            out["class"] = self.cls.mat.tolist()
        return out


@dataclass(eq=False)
class GhostCertificate:
    verdict: str
    mode: str
    degrees: list = field(default_factory=list)  # {"i", "rank"} plus {"dual": True} for phi*
    witness: Witness = None
    assumptions: dict = field(default_factory=dict)
    subgroups: list = None  # strong ghosts: [{"order", "elements", "certificate"}]
    periodicity: object = None

    @property
    def is_ghost(self):
        return self.verdict == GHOST

    @property
    def failure_set(self):
        if self.subgroups is None:
            return []
        return [s["elements"] for s in self.subgroups if s["certificate"].verdict == NOT_GHOST]

    def as_dict(self, with_matrix=True):
        out = {
            "verdict": self.verdict,
            "mode": self.mode,
            "degrees": list(self.degrees),
            "witness": self.witness.as_dict(with_matrix) if self.witness else None,
            "assumptions": dict(self.assumptions),
        }
        if self.subgroups is not None:
            out["subgroups"] = [
                {"order": s["order"], "elements": list(s["elements"]), "certificate": s["certificate"].as_dict(with_matrix)}
                for s in self.subgroups
            ]
        return out


def _degree_check(phi, i, ctx, dual=False):
    f = dual_map(phi) if dual else phi
    A = tate_induced(f, i, ctx)
    r = la.rank(A, phi.p) if A.size else 0
    rec = {"i": i, "rank": r}
    if dual:
        rec["dual"] = True
    return rec, A


def _witness(phi, i, A, ctx):
    col = int(np.flatnonzero(A.any(axis=0))[0])
    T = tate_group(phi.domain, i, ctx)
    return Witness(i, col, T.space.classes()[col], la.rank(A, phi.p))


def window_report(phi, degrees, ctx=None, stop=False):
    """Per-degree ranks of Ĥ^i(phi) and the first witness (or None)."""
    ctx = _ctx(ctx)
    recs, wit = [], None
    for i in degrees:
        rec, A = _degree_check(phi, i, ctx)
        recs.append(rec)
        if rec["rank"] and wit is None:
            wit = _witness(phi, i, A, ctx)
            if stop:
                break
    return recs, wit


def is_ghost_window(phi, a, b, ctx=None):
    """Whether Ĥ^i(phi) = 0 for a <= i <= b, with the per-degree report."""
    recs, wit = window_report(phi, range(a, b + 1), ctx)
    return wit is None, recs


def _zero_certificate(mode, extra=None):
    a = {"stably_zero": True}
    a.update(extra or {})
    return GhostCertificate(GHOST, mode, [], None, a)


def _periodic(phi, w, cap, ctx):
    recs, wit = window_report(phi, range(0, w.d), ctx)
    assumptions = {"cap": cap, "period": w.d, "window": [0, w.d - 1]}
    return GhostCertificate(GHOST if wit is None else NOT_GHOST, "periodic", recs, wit, assumptions, periodicity=w)


def _bounds(phi, cap, ctx):
    B = generator_bounds(phi.domain, phi.codomain, cap, ctx)
    recs, wit = window_report(phi, range(0, B.m + 1), ctx, stop=True)
    assumptions = B.as_dict()
    if wit is None:
        for i in range(0, B.n + 1):
            rec, A = _degree_check(phi, i, ctx, dual=True)
            recs.append(rec)
            if rec["rank"]:
                # Tate duality moves a nonzero Ĥ^i(phi*) to Ĥ^(-i-1)(phi)
                rec2, A2 = _degree_check(phi, -i - 1, ctx)
                recs.append(rec2)
                if not rec2["rank"]:
                    raise AssertionError("Tate duality violated: dual degree vanished")
                wit = _witness(phi, -i - 1, A2, ctx)
                break
    if wit is not None:
        verdict = NOT_GHOST
    elif B.trusted and B.m_verified and B.n_verified:
        verdict = GHOST
    else:
        verdict = MODULO
    return GhostCertificate(verdict, "bounds", recs, wit, assumptions)


def _window(phi, cap, ctx):
    recs, wit = window_report(phi, range(-cap, cap + 1), ctx)
    return GhostCertificate(NOT_GHOST if wit else MODULO, "window", recs, wit, {"cap": cap, "window": [-cap, cap]})


def is_ghost(phi, mode="auto", cap=DEFAULT_CAP, ctx=None):
    """Certified ghost test.

    ``periodic``: a width-d window with a periodicity witness (exact).
    ``bounds``: degrees 0..m for phi and 0..n for phi* (exact when d is
    trusted and m, n are verified by a trailing window).
    ``window``: degrees -cap..cap (a not-ghost verdict is exact).
    ``auto``: periodic when a witness exists, else bounds.
    """
    if mode not in MODES:
        raise GhostError(f"unknown mode {mode!r}")
    ctx = _ctx(ctx)
    G, p = phi.domain.group, phi.p
    if is_stably_zero(phi, ctx=ctx):
        return _zero_certificate(mode, {"cap": cap})
    w = None
    if mode in ("auto", "periodic"):
        w = periodicity_witness(G, p, max_d=cap, ctx=ctx)
        if w is None and mode == "periodic":
            raise GhostError(f"no periodicity witness for {G.name} up to degree {cap}")
    if w is not None:
        return _periodic(phi, w, cap, ctx)
    if mode == "window":
        return _window(phi, cap, ctx)
    return _bounds(phi, cap, ctx)


def _sorted_subgroups(G, p, conjugacy_reduce):
    subs = p_subgroups(G, p, up_to_conjugacy=conjugacy_reduce)
    return sorted(subs, key=lambda H: (H.order, sorted(H.elements)))


def is_strong_ghost(phi, mode="auto", cap=DEFAULT_CAP, conjugacy_reduce=False, ctx=None):
    """Ghost on restriction to every p-subgroup, with one sub-certificate each."""
    ctx = _ctx(ctx)
    G, p = phi.domain.group, phi.p
    sub_mode = "auto" if mode == "periodic" else mode
    subs, wit = [], None
    verdicts = []
    for H in _sorted_subgroups(G, p, conjugacy_reduce):
        cert = is_ghost(restrict_map(phi, H), sub_mode, cap, ctx)
        elems = tuple(sorted(H.elements))
        subs.append({"order": H.order, "elements": elems, "certificate": cert})
        verdicts.append(cert.verdict)
        if cert.verdict == NOT_GHOST and wit is None:
            w = cert.witness
            wit = Witness(w.degree, w.class_index, w.cls, w.image_rank, elems)
    if NOT_GHOST in verdicts:
        verdict = NOT_GHOST
    elif all(v == GHOST for v in verdicts):
        verdict = GHOST
    else:
        verdict = MODULO
    assumptions = {"cap": cap, "conjugacy_reduce": bool(conjugacy_reduce), "subgroup_mode": sub_mode}
    return GhostCertificate(verdict, mode, [], wit, assumptions, subgroups=subs)


@dataclass(eq=False)
class EventualReport:
    vanishes: bool
    degrees: list
    certified_ghost: bool  # periodicity upgrades the window to a full ghost verdict
    period: int = None


def is_eventual_ghost_window(phi, n0, b, ctx=None):
    """Whether Ĥ^i(phi) = 0 for n0 <= i <= b."""
    ctx = _ctx(ctx)
    ok, recs = is_ghost_window(phi, n0, b, ctx)
    w = periodicity_witness(phi.domain.group, phi.p, max_d=max(1, b - n0), ctx=ctx)
    certified = bool(ok and w is not None and b - n0 >= w.d)
    return EventualReport(ok, recs, certified, w.d if w else None)


@dataclass(eq=False)
class GhostSubspaceChain:
    pairs: list  # (i, dim S_i) inside Hom(M, N)
    stable_pairs: list  # (i, dim S_i - dim PHom)
    stabilized_at: int
    final_basis: np.ndarray  # rows: flattened maps spanning S_imax
    phom_dim: int


def ghost_subspace_chain(M, N, i_max, ctx=None):
    """S_i = maps vanishing on Ĥ^j for |j| <= i, as subspaces of Hom(M, N)."""
    ctx = _ctx(ctx)
    p = M.p
    H = hom_basis(M, N)
    q = phom_basis(M, N).shape[0]
    cols = []
    pairs, stable_pairs = [], []
    prev = None
    for i in range(0, i_max + 1):
        for j in sorted({-i, i}):
            blocks = [tate_induced(b, j, ctx).reshape(-1) for b in H.maps()]
            if blocks and blocks[0].size:
                cols.append(np.stack(blocks, axis=1))
        if H.dim == 0:
            K = np.zeros((0, 0), dtype=np.int64)
        elif cols:
            K = la.kernel_basis(np.vstack(cols), p)
        else:
            K = np.eye(H.dim, dtype=np.int64)
        if prev is not None and prev.shape[1] and K.shape[1]:
            if la.rank(np.hstack([prev, K]), p) != prev.shape[1]:
                raise AssertionError("ghost subspaces are not nested")
        prev = K
        pairs.append((i, K.shape[1]))
        stable_pairs.append((i, K.shape[1] - q))
    dims = [d for _, d in pairs]
    stab = next(i for i in range(len(dims)) if all(x == dims[i] for x in dims[i:]))
    final = (K.T @ H.flat()) % p if H.dim else np.zeros((0, M.dim * N.dim), dtype=np.int64)
    return GhostSubspaceChain(pairs, stable_pairs, stab, final, q)
