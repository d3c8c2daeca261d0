import json

import numpy as np
import pytest

from stmod import io
from stmod.fixtures import gminus1
from stmod.groups import named_group
from stmod.reps import ModuleMap, jordan_module, trivial_module


def test_group_roundtrip(tmp_path):
    G = named_group("quaternion:8")
    path = tmp_path / "q8.json"
    io.write_json(io.group_to_json(G), path)
    H = io.resolve_group(str(path))
    assert H == G and H.name == "quaternion:8"


def test_group_errors(tmp_path):
    with pytest.raises(io.InputError):
        io.group_from_json({"cayley": [[0, 1], [1, 1]]})
    with pytest.raises(io.InputError):
        io.group_from_json({"name": "x"})
    with pytest.raises(io.InputError):
        io.group_from_json({"cayley": [[0, 1], [1, 0]], "order": 3})
    with pytest.raises(io.InputError):
        io.resolve_group("cyclic:zero")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(io.InputError):
        io.resolve_group(str(bad))


def test_module_roundtrip_with_named_group(tmp_path):
    M = jordan_module(named_group("cyclic:4"), 2, 3)
    path = tmp_path / "m.json"
    io.write_json(io.module_to_json(M, "cyclic:4"), path)
    obj = json.loads(path.read_text())
    assert obj["group"] == "cyclic:4" and obj["dim"] == 3
    assert io.resolve_module(str(path)) == M


def test_module_with_group_file(tmp_path):
    G = named_group("elemab:2:2")
    (tmp_path / "g.json").write_text(io.dumps(io.group_to_json(G)))
    M = trivial_module(G, 2)
    obj = io.module_to_json(M, "g.json")
    (tmp_path / "m.json").write_text(io.dumps(obj))
    assert io.resolve_module(str(tmp_path / "m.json")) == M


def test_module_validation_errors():
    base = io.module_to_json(jordan_module(named_group("cyclic:3"), 3, 2), "cyclic:3")
    bad = dict(base, action=[[[1, 0], [0, 1]], [[1, 1], [0, 1]], [[1, 1], [0, 1]]])
    with pytest.raises(io.InputError, match="rho"):
        io.module_from_json(bad)
    with pytest.raises(io.InputError, match="shape"):
        io.module_from_json(dict(base, dim=3))
    with pytest.raises(io.InputError):
        io.module_from_json({"group": "cyclic:3"})
    with pytest.raises(io.InputError):
        io.resolve_module("jordan:2")
    with pytest.raises(io.InputError):
        io.resolve_module("jordan:9", group=named_group("cyclic:3"), p=3)


def test_map_roundtrip(tmp_path):
    M = jordan_module(named_group("cyclic:4"), 2, 2)
    f = gminus1(M)
    (tmp_path / "m.json").write_text(io.dumps(io.module_to_json(M, "cyclic:4")))
    obj = io.map_to_json(f, "m.json", "m.json")
    g = io.map_from_json(obj, tmp_path)
    assert np.array_equal(g.mat, f.mat) and g.domain == M
    h = io.map_from_json({"mat": f.mat.tolist()}, default_module=M)
    assert np.array_equal(h.mat, f.mat)


def test_map_errors():
    M = jordan_module(named_group("cyclic:4"), 2, 2)
    with pytest.raises(io.InputError, match="equivariant"):
        io.map_from_json({"mat": [[1, 0], [1, 1]]}, default_module=M)
    with pytest.raises(io.InputError, match="shape"):
        io.map_from_json({"mat": [[1, 0]]}, default_module=M)
    with pytest.raises(io.InputError):
        io.map_from_json({"mat": [[1]]})
    k3 = trivial_module(named_group("cyclic:3"), 3)
    with pytest.raises(io.InputError, match="different"):
        io.map_from_json({"domain": io.module_to_json(M), "codomain": io.module_to_json(k3), "mat": [[0, 0]]})


def test_dumps_is_deterministic_and_handles_numpy():
    obj = {"b": np.int64(3), "a": np.array([[1, 2]]), "c": (np.bool_(True),)}
    assert io.dumps(obj) == io.dumps(dict(reversed(list(obj.items()))))
    assert json.loads(io.dumps(obj)) == {"a": [[1, 2]], "b": 3, "c": [True]}
    with pytest.raises(TypeError):
        io.dumps({"x": object()})


def test_identity_map_json():
    k = trivial_module(named_group("cyclic:2"), 2)
    obj = io.map_to_json(ModuleMap(k, k, np.eye(1, dtype=np.int64)))
    assert obj["mat"] == [[1]] and obj["domain"]["dim"] == 1
