"""JSON files for groups, modules, maps, certificates and witness bundles.

Group:   {"name": str, "order": n, "cayley": [[...]]}
Module:  {"group": spec | path | group object, "p": p, "dim": d, "action": [matrix per element]}
Map:     {"domain": path | module object, "codomain": ..., "mat": [[...]]}

A group reference is a named spec such as "cyclic:4", a path to a group
file, or an inline group object; module references likewise.
"""

import json
from pathlib import Path

import numpy as np

from .groups import Group, GroupError, build_group, named_group
from .reps import Module, ModuleError, ModuleMap, standard_module, validate_module


class InputError(ValueError):
    """Malformed or inconsistent input file."""


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def write_json(obj, path):
    Path(path).write_text(dumps(obj) + "\n")


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, default=_default)


# --------------------------------------------------------------------------
# groups


def group_to_json(G):
    return {"name": G.name, "order": G.order, "cayley": G.table.tolist()}


def group_from_json(obj):
    try:
        table = obj["cayley"]
        G = build_group(table, name=obj.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise InputError(f"group object needs a 'cayley' table: {exc}") from exc
    except GroupError as exc:
        raise InputError(str(exc)) from exc
    if "order" in obj and int(obj["order"]) != G.order:
        raise InputError(f"declared order {obj['order']} does not match the table ({G.order})")
    return G


def resolve_group(ref, base=None):
    if isinstance(ref, Group):
        return ref
    if isinstance(ref, dict):
        return group_from_json(ref)
    if not isinstance(ref, str):
        raise InputError(f"bad group reference {ref!r}")
    path = _as_path(ref, base)
    if path is not None:
        return group_from_json(read_json(path))
    try:
        return named_group(ref)
    except GroupError as exc:
        raise InputError(str(exc)) from exc


def _as_path(ref, base):
    cand = Path(ref)
    if base is not None and not cand.is_absolute():
        alt = Path(base) / cand
        if alt.is_file():
            return alt
    return cand if cand.is_file() else None


# --------------------------------------------------------------------------
# modules and maps


def module_to_json(M, group_ref=None):
    return {
        "group": group_ref if group_ref is not None else group_to_json(M.group),
        "p": M.p,
        "dim": M.dim,
        "action": M.action.tolist(),
        **({"name": M.name} if M.name else {}),
    }


def module_from_json(obj, base=None, group=None):
    try:
        G = group if group is not None else resolve_group(obj["group"], base)
        p = int(obj["p"])
        d = int(obj["dim"])
        act = np.array(obj["action"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed module object: {exc}") from exc
    if act.shape != (G.order, d, d):
        raise InputError(f"action has shape {act.shape}, expected {(G.order, d, d)}")
    try:
        M = Module(G, p, act, name=obj.get("name", ""))
    except (ModuleError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    rep = validate_module(M)
    if not rep.ok:
        raise InputError(rep.message)
    return M


def resolve_module(ref, base=None, group=None, p=None):
    """A module from a file, an inline object, or a standard spec (needs group and p)."""
    if isinstance(ref, Module):
        return ref
    if isinstance(ref, dict):
        return module_from_json(ref, base, group)
    if not isinstance(ref, str):
        raise InputError(f"bad module reference {ref!r}")
    path = _as_path(ref, base)
    if path is not None:
        return module_from_json(read_json(path), path.parent, group)
    if group is None or p is None:
        raise InputError(f"module spec {ref!r} needs --group and --p")
    try:
        return standard_module(group, p, ref)
    except (ModuleError, GroupError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def map_to_json(phi, domain_ref=None, codomain_ref=None):
    return {
        "domain": domain_ref if domain_ref is not None else module_to_json(phi.domain),
        "codomain": codomain_ref if codomain_ref is not None else module_to_json(phi.codomain),
        "mat": phi.mat.tolist(),
    }


def map_from_json(obj, base=None, default_module=None, group=None, p=None):
    """A map; missing "domain"/"codomain" default to ``default_module``."""
    try:
        dom = obj.get("domain", default_module)
        cod = obj.get("codomain", default_module)
        mat = np.array(obj["mat"], dtype=np.int64)
    except (AttributeError, KeyError, ValueError) as exc:
        raise InputError(f"malformed map object: {exc}") from exc
    if dom is None or cod is None:
        raise InputError("map needs a domain and codomain")
    A = resolve_module(dom, base, group, p)
    B = resolve_module(cod, base, group, p)
    if mat.shape != (B.dim, A.dim):
        raise InputError(f"map matrix has shape {mat.shape}, expected {(B.dim, A.dim)}")
    if not A.same_category(B):
        raise InputError("domain and codomain live over different groups or fields")
    phi = ModuleMap(A, B, mat)
    if not phi.is_equivariant():
        raise InputError("map is not equivariant")
    return phi


def witness_bundle(w, group_ref=None):
    """Module file + map file + evidence, as one JSON object."""
    mod = module_to_json(w.module, group_ref)
    return {
        "module": mod,
        "map": {"domain": mod, "codomain": module_to_json(w.map.codomain, group_ref), "mat": w.map.mat.tolist()},
        "evidence": w.evidence,
        "certificate": w.certificate.as_dict(with_matrix=False),
    }
