"""Command-line driver.

Exit codes: 0 ok, 1 bad input, 2 verdict blocked by a cap, 3 internal error
(including a failed report check).
"""

import argparse
import sys
from pathlib import Path

from . import io
from . import linalg as la
from .ar import ARError, ar_class, ar_sequence, end_algebra, strong_ghost_witness
from .cohom import (
    generator_bounds,
    periodicity_witness,
    tate_dual_of_identity,
    tate_group,
    tate_induced,
)
from .fixtures import gminus1, identity_map, zero_map
from .ghosts import MODES, MODULO, GhostError, ghost_subspace_chain, is_eventual_ghost_window, is_ghost, is_strong_ghost
from .groups import CapExceeded, GroupError, Subgroup, all_subgroups, p_subgroups
from .reports import REPORTS, ReportConfig, run_all, run_report
from .reps import ModuleError, dual, hom_basis, induce, indecomposability, restrict, validate_module
from .stable import StableContext, stable_hom, syzygy

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INTERNAL = 0, 1, 2, 3
NAMED_MAPS = ("identity", "zero", "gminus1", "ar", "eta")


class Blocked(Exception):
    """The result is valid output, but the verdict was held back by a cap."""

    def __init__(self, payload):
        super().__init__("verdict blocked by caps")
        self.payload = payload


# --------------------------------------------------------------------------
# argument resolution


def _group(args):
    if not args.group:
        raise io.InputError("--group is required")
    return io.resolve_group(args.group)


def _p(args, G):
    if args.p is not None:
        return args.p
    n = G.order
    primes = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    if len(primes) == 1:
        return primes[0]
    raise io.InputError(f"--p is required: {G.name or 'group'} is not a p-group")


def _is_file(ref):
    return Path(ref).is_file()


def _module(args, ref=None):
    ref = ref if ref is not None else args.module
    if ref is None:
        raise io.InputError("--module is required")
    G = io.resolve_group(args.group) if args.group else None
    if _is_file(ref):
        M = io.resolve_module(ref)
        if G is not None and M.group != G:
            raise io.InputError("module file is over a different group than --group")
        return M
    if G is None:
        raise io.InputError(f"module spec {ref!r} needs --group")
    return io.resolve_module(ref, group=G, p=_p(args, G))


def _map(args, ctx):
    ref = args.map
    if ref is None:
        raise io.InputError("--map is required")
    if ref == "eta":
        G = _group(args)
        return tate_dual_of_identity(G, _p(args, G), ctx).map
    if ref in NAMED_MAPS:
        M = _module(args)
        if ref == "identity":
            return identity_map(M)
        if ref == "zero":
            return zero_map(M)
        if ref == "gminus1":
            try:
                return gminus1(M)
            except GroupError as exc:
                raise io.InputError(f"gminus1 needs a cyclic group: {exc}") from exc
        return ar_class(M, ctx).map
    if not _is_file(ref):
        raise io.InputError(f"--map must be a file or one of {', '.join(NAMED_MAPS)}")
    default = _module(args) if args.module else None
    return io.map_from_json(io.read_json(ref), Path(ref).parent, default_module=default)


def _subgroup(G, text):
    try:
        els = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise io.InputError(f"bad subgroup list {text!r}") from exc
    try:
        return Subgroup(G, els)
    except GroupError as exc:
        raise io.InputError(str(exc)) from exc


# --------------------------------------------------------------------------
# commands


def cmd_group_make(args, ctx):
    return io.group_to_json(_group(args))


def cmd_group_show(args, ctx):
    G = _group(args)
    out = {
        "name": G.name,
        "order": G.order,
        "abelian": G.is_abelian(),
        "cyclic": G.is_cyclic(),
        "exponent": G.exponent(),
        "generators": list(G.generators),
        "element_orders": list(G.element_orders),
        "subgroup_orders": [H.order for H in all_subgroups(G)],
    }
    if args.p is not None:
        out["p_subgroups"] = [list(H.elements) for H in p_subgroups(G, args.p)]
    return out


def _group_ref(args):
    return args.group if args.group and not _is_file(args.group) else None


def cmd_module_make(args, ctx):
    return io.module_to_json(_module(args), _group_ref(args))


def cmd_module_validate(args, ctx):
    M = _module(args)
    rep = validate_module(M)
    ind = indecomposability(M)
    out = {"ok": rep.ok, "message": rep.message, "dim": M.dim, "p": M.p, "indecomposable": ind.indecomposable, "indecomposable_exact": ind.exact}
    if not rep.ok:
        raise io.InputError(rep.message)
    return out


def cmd_module_dual(args, ctx):
    return io.module_to_json(dual(_module(args)), _group_ref(args))


def cmd_module_restrict(args, ctx):
    M = _module(args)
    H = _subgroup(M.group, args.subgroup)
    return io.module_to_json(restrict(M, H))


def cmd_module_induce(args, ctx):
    G = _group(args)
    H = _subgroup(G, args.subgroup)
    ref = args.module
    if ref is None:
        raise io.InputError("--module is required")
    M = io.resolve_module(ref) if _is_file(ref) else io.resolve_module(ref, group=H.group, p=_p(args, H.group))
    if M.group != H.group:
        raise io.InputError("module is not over the given subgroup (compare its Cayley table)")
    return io.module_to_json(induce(M, H), _group_ref(args))


def cmd_module_syzygy(args, ctx):
    M = _module(args)
    res = syzygy(M, args.n, ctx)
    out = io.module_to_json(res.module, _group_ref(args))
    out["n"] = args.n
    return out


def _pair(args):
    A = _module(args, args.domain or args.module)
    B = _module(args, args.codomain or args.module)
    if not A.same_category(B):
        raise io.InputError("domain and codomain live over different groups or fields")
    return A, B


def cmd_hom_basis(args, ctx):
    A, B = _pair(args)
    H = hom_basis(A, B)
    return {"dim": H.dim, "basis": H.basis.tolist()}


def cmd_hom_stable(args, ctx):
    A, B = _pair(args)
    S = stable_hom(A, B, ctx)
    return {"hom_dim": S.hom.dim, "phom_dim": S.phom.shape[0], "stable_dim": S.dim, "classes": [f.mat.tolist() for f in S.classes()]}


def _degrees(args):
    lo = -args.cap if args.lo is None else args.lo
    hi = args.cap if args.hi is None else args.hi
    if lo > hi:
        raise io.InputError("--from must not exceed --to")
    return range(lo, hi + 1)


def cmd_cohomology_dims(args, ctx):
    M = _module(args)
    return {"dims": [{"i": i, "dim": tate_group(M, i, ctx, args.cap).dim} for i in _degrees(args)]}


def cmd_cohomology_induced(args, ctx):
    f = _map(args, ctx)
    rows = []
    for i in _degrees(args):
        A = tate_induced(f, i, ctx, args.cap)
        rows.append({"i": i, "rank": la.rank(A, f.p) if A.size else 0, "shape": list(A.shape)})
    return {"ranks": rows}


def cmd_cohomology_bounds(args, ctx):
    A, B = _pair(args)
    gb = generator_bounds(A, B, args.cap, ctx)
    out = gb.as_dict()
    out["ring_generator_degrees"] = gb.ring.degrees
    return out


def cmd_cohomology_period(args, ctx):
    G = _group(args)
    w = periodicity_witness(G, _p(args, G), max_d=args.max_d, ctx=ctx)
    if w is None:
        return {"periodic": False, "max_d": args.max_d}
    return {"periodic": True, "d": w.d, "max_d": args.max_d}


def _verdict(cert_dict):
    if cert_dict["verdict"] == MODULO:
        raise Blocked(cert_dict)
    return cert_dict


def cmd_ghost_check(args, ctx):
    return _verdict(is_ghost(_map(args, ctx), args.mode, args.cap, ctx).as_dict())


def cmd_ghost_strong(args, ctx):
    f = _map(args, ctx)
    return _verdict(is_strong_ghost(f, args.mode, args.cap, args.conjugacy_reduce, ctx).as_dict())


def cmd_ghost_eventual(args, ctx):
    f = _map(args, ctx)
    lo = 1 if args.lo is None else args.lo
    hi = args.cap if args.hi is None else args.hi
    ev = is_eventual_ghost_window(f, lo, hi, ctx)
    return {"window": [lo, hi], "vanishes": ev.vanishes, "certified_ghost": ev.certified_ghost, "period": ev.period, "degrees": ev.degrees}


def cmd_ghost_chain(args, ctx):
    A, B = _pair(args)
    ch = ghost_subspace_chain(A, B, args.imax, ctx)
    return {
        "dims": [{"i": i, "dim": d} for i, d in ch.pairs],
        "stable_dims": [{"i": i, "dim": d} for i, d in ch.stable_pairs],
        "stabilized_at": ch.stabilized_at,
        "phom_dim": ch.phom_dim,
    }


def cmd_ar_class(args, ctx):
    M = _module(args)
    c = ar_class(M, ctx)
    E = end_algebra(M)
    return {
        "map": c.map.mat.tolist(),
        "codomain_dim": c.map.codomain.dim,
        "solution_dim": c.solution_dim,
        "radical_dim": c.radical_dim,
        "end_dim": E.basis.shape[0],
    }


def cmd_ar_sequence(args, ctx):
    s = ar_sequence(_module(args), ctx)
    return {
        "ranks": list(s.ranks),
        "exact": s.exact,
        "split": s.split,
        "start_dim": s.start.dim,
        "middle_dim": s.middle.dim,
        "stripped_dim": s.stripped.dim,
        "stripped_rank": s.stripped_rank,
    }


def cmd_ar_witness(args, ctx):
    G = _group(args)
    w = strong_ghost_witness(G, _p(args, G), args.cap, ctx)
    if w is None:
        return {"witness": None, "group": G.name}
    return io.witness_bundle(w, _group_ref(args))


def cmd_report(args, ctx):
    cfg = ReportConfig(cap=args.cap, seed=args.seed, mode=args.mode, group=args.group, p=args.p)
    if args.name == "all":
        return run_all(cfg)
    if args.name not in REPORTS:
        raise io.InputError(f"unknown report {args.name!r}; choose from all, {', '.join(REPORTS)}")
    return run_report(args.name, cfg)


# --------------------------------------------------------------------------
# parser


def _common():
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--cap", type=int, default=12, help="degree cap (default 12)")
    c.add_argument("--mode", choices=MODES, default="auto")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", metavar="PATH", help="also write the output here")
    c.add_argument("--conjugacy-reduce", action="store_true")
    c.add_argument("--group", help="named spec (cyclic:4, elemab:2:2, ...) or group file")
    c.add_argument("--p", type=int)
    c.add_argument("--module", help="module file or spec (trivial, regular, jordan:i, ...)")
    c.add_argument("--map", help=f"map file or one of {', '.join(NAMED_MAPS)}")
    c.add_argument("--domain")
    c.add_argument("--codomain")
    c.add_argument("--from", dest="lo", type=int)
    c.add_argument("--to", dest="hi", type=int)
    return c


SUBCOMMANDS = {
    "group": {"make": cmd_group_make, "show": cmd_group_show},
    "module": {
        "make": cmd_module_make,
        "validate": cmd_module_validate,
        "dual": cmd_module_dual,
        "restrict": cmd_module_restrict,
        "induce": cmd_module_induce,
        "syzygy": cmd_module_syzygy,
    },
    "hom": {"basis": cmd_hom_basis, "stable": cmd_hom_stable},
    "cohomology": {
        "dims": cmd_cohomology_dims,
        "induced": cmd_cohomology_induced,
        "bounds": cmd_cohomology_bounds,
        "period": cmd_cohomology_period,
    },
    "ghost": {"check": cmd_ghost_check, "strong": cmd_ghost_strong, "eventual": cmd_ghost_eventual, "chain": cmd_ghost_chain},
    "ar": {"class": cmd_ar_class, "sequence": cmd_ar_sequence, "witness": cmd_ar_witness},
}


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="stmod", description="Stable module category computations over F_p.")
    top = parser.add_subparsers(dest="command", required=True)
    for name, subs in SUBCOMMANDS.items():
        sp = top.add_parser(name).add_subparsers(dest="action", required=True)
        for action, fn in subs.items():
            a = sp.add_parser(action, parents=[common])
            a.set_defaults(func=fn)
            if action in ("restrict", "induce"):
                a.add_argument("--subgroup", required=True, help="comma-separated element indices")
            if action == "syzygy":
                a.add_argument("--n", type=int, default=1)
            if action == "period":
                a.add_argument("--max-d", type=int, default=8)
            if action == "chain":
                a.add_argument("--imax", type=int, default=4)
    r = top.add_parser("report", parents=[common])
    r.add_argument("name", help=f"all or one of {', '.join(REPORTS)}")
    r.set_defaults(func=cmd_report, action=None)
    return parser


def _emit(payload, args, stream):
    run = {"command": " ".join(x for x in (args.command, args.action) if x), "cap": args.cap, "seed": args.seed, "mode": args.mode}
    if isinstance(payload, dict):
        payload = {**payload, "run": run}
    text = io.dumps(payload)
    print(text, file=stream)
    if args.json:
        io.write_json(payload, args.json)


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.cap <= 0:
        print("error: --cap must be positive", file=stderr)
        return EXIT_INPUT
    ctx = StableContext()
    try:
        out = args.func(args, ctx)
    except Blocked as b:
        _emit(b.payload, args, stdout)
        return EXIT_CAP
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=stderr)
        return EXIT_CAP
    except (io.InputError, GroupError, ModuleError, GhostError, ARError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - anything else is a bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL
    _emit(out, args, stdout)
    if args.command == "report" and not out["pass"]:
        return EXIT_INTERNAL
    return EXIT_OK


def main():
    sys.exit(run())
