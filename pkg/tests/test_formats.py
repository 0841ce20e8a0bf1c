"""JSON formats: round trips, ingestion validation, and deterministic
serialization for every file kind the CLI reads or writes."""

import pytest

from twisted_schur import formats as F
from twisted_schur.cohomology import (CocycleTable, cohomology_group,
                                      h2_class_representatives)
from twisted_schur.errors import InputError
from twisted_schur.extensions import build_extension
from twisted_schur.gmodules import finite_module, mu_module, sign_module
from twisted_schur.groups import cyclic_group, dihedral_group, is_isomorphic
from twisted_schur.repgroups import twisted_representation_groups


def test_group_round_trip_and_ingestion_modes():
    D4 = dihedral_group(4)
    g2 = F.group_from_dict(F.group_to_dict(D4))
    assert [list(r) for r in g2.table] == [list(r) for r in D4.table]
    assert g2.generators == D4.generators

    gp = F.group_from_dict({"permutations": [[1, 2, 0], [0, 2, 1]]})
    assert gp.order == 6
    assert is_isomorphic(gp, dihedral_group(3))[0]

    gf = F.group_from_dict({"family": "dihedral", "params": {"n": 4}})
    assert is_isomorphic(gf, D4)[0]

    gdp = F.group_from_dict({"family": "direct_product", "params": {
        "factors": [{"family": "cyclic", "params": {"n": 2}},
                    {"family": "cyclic", "params": {"n": 2}}]}})
    assert gdp.order == 4 and gdp.exponent() == 2


@pytest.mark.parametrize("bad", [
    {},
    {"cayley": [[0]], "family": "cyclic"},   # two ingestion modes at once
    {"permutations": [[0, 0]]},              # not a permutation
    {"family": "nope"},
    {"schema": "other/9", "cayley": [[0]]},  # foreign schema marker
])
def test_group_ingestion_rejects_malformed(bad):
    with pytest.raises(InputError):
        F.group_from_dict(bad)


def test_module_specs_round_trip():
    D4 = dihedral_group(4)
    sgn = sign_module(D4, [1, -1])
    back = F.module_from_spec(D4, F.module_to_spec(sgn))
    assert back.free_rank == 1 and back.action == sgn.action

    shorthand = F.module_from_spec(D4, {"sign": [1, -1]})
    assert shorthand.action == sgn.action

    mu = mu_module(D4, [1, -1], 4)
    mu2 = F.module_from_spec(D4, F.module_to_spec(mu))
    assert mu2.moduli == (4,) and mu2.action == mu.action

    fin = finite_module(D4, (2, 2), None)
    fin2 = F.module_from_spec(D4, F.module_to_spec(fin))
    assert fin2.action == fin.action

    with pytest.raises(InputError):
        F.module_from_spec(D4, {"free_rank": 0, "moduli": [2],
                                "action": {"0": [[1]]}})


def test_cocycle_round_trip():
    Z2 = cyclic_group(2)
    alpha = CocycleTable(2, mu_module(Z2, [-1], 2), {(1, 1): (1,)})
    data = F.cocycle_to_dict(alpha)
    assert data == {"degree": 2, "modulus": 2, "values": {"1,1": 1}}
    back = F.cocycle_from_dict(Z2, data, [-1])
    assert back == alpha and back.is_cocycle()

    with pytest.raises(InputError):
        F.cocycle_from_dict(Z2, {"degree": 2, "modulus": 2,
                                 "values": {"1": 1}}, [-1])


def test_vector_cocycle_round_trip():
    Z2 = cyclic_group(2)
    M = finite_module(Z2, (2, 4), None)
    beta = CocycleTable(2, M, {(1, 1): (1, 3)})
    data = F.vector_cocycle_to_dict(beta)
    assert data["free_rank"] == 0 and data["moduli"] == [2, 4]
    back = F.vector_cocycle_from_dict(M, data)
    assert back == beta


def test_class_output():
    Z2 = cyclic_group(2)
    mu = mu_module(Z2, [-1], 2)
    alpha = CocycleTable(2, mu, {(1, 1): (1,)})
    H = cohomology_group(Z2, mu, 2)
    out = F.class_to_dict(H, alpha)
    assert out["invariants"] == [2]
    assert len(out["coordinates"]) == 1


def test_extension_dump_round_trip_and_corruption():
    Z2 = cyclic_group(2)
    mod = finite_module(Z2, (2,), None)
    beta = next(r for r in h2_class_representatives(Z2, mod) if r.values)
    ext = build_extension(Z2, mod, beta)
    dump = F.extension_to_dict(ext)
    back = F.extension_from_dict(dump)
    assert back.gamma.order == ext.gamma.order == 4
    assert [list(r) for r in back.gamma.table] == \
        [list(r) for r in ext.gamma.table]
    assert back.inclusion == ext.inclusion
    assert back.section == ext.section

    corrupt = F.extension_to_dict(ext)
    corrupt["gamma"] = {"cayley": [[0, 1], [1, 0]]}
    with pytest.raises(InputError):
        F.extension_from_dict(corrupt)


def test_repgroup_result_dict():
    Z2 = cyclic_group(2)
    results = twisted_representation_groups(Z2, [-1])
    assert len(results) == 1
    data = F.repgroup_result_to_dict(results[0])
    assert data["order"] == 4
    assert data["identified_as"] == "Z4"
    assert data["report"]["verdict"] is True
    witness = F.extension_from_dict(data["witness"])
    assert witness.gamma.order == 4
    # serialization is deterministic
    assert F.dump_json(data) == \
        F.dump_json(F.repgroup_result_to_dict(results[0]))


def test_schema_marker_and_json_helpers():
    wrapped = F.attach_schema({"x": 1})
    assert list(wrapped)[0] == "schema"
    assert wrapped["schema"] == "twisted-schur/1"
    F.check_schema(wrapped)
    with pytest.raises(InputError):
        F.check_schema({"schema": "other/1"})

    text = F.dump_json({"b": 2, "a": [1, 2]})
    assert text == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 2\n}\n'
    assert F.load_json_text(text) == {"a": [1, 2], "b": 2}
    with pytest.raises(InputError):
        F.load_json_text("{nope")
    with pytest.raises(InputError):
        F.load_json_file("/nonexistent/path.json")
