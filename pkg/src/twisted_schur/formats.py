"""JSON file formats for groups, modules, cocycles, extensions and results.

Every emitted payload is accepted back by the corresponding ingestion
function, and serialization is deterministic (sorted keys) so identical
inputs produce byte-identical output.  Top-level documents carry a
``"schema": "twisted-schur/1"`` marker.
"""

import json
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .config import DEFAULT_CONFIG, RunConfig
from .errors import InputError
from .groups import (FiniteGroup, extend_from_generators,
                     from_permutation_generators, standard_group)
from .gmodules import (TwistedModule, epsilon_of, finite_module, mu_module,
                       sign_module)
from .cohomology import CocycleTable, CohomologyGroup
from .extensions import ExtensionData, build_extension
from .repgroups import RepGroupResult

SCHEMA = "twisted-schur/1"

__all__ = [
    "SCHEMA",
    "attach_schema",
    "check_schema",
    "dump_json",
    "load_json_text",
    "load_json_file",
    "group_to_dict",
    "group_from_dict",
    "module_to_spec",
    "module_from_spec",
    "cocycle_to_dict",
    "cocycle_from_dict",
    "vector_cocycle_to_dict",
    "vector_cocycle_from_dict",
    "class_to_dict",
    "extension_to_dict",
    "extension_from_dict",
    "repgroup_result_to_dict",
]


# ---------------------------------------------------------------------------
# generic plumbing
# ---------------------------------------------------------------------------

def attach_schema(payload: dict) -> dict:
    """A copy of the payload with the schema marker first."""
    out = {"schema": SCHEMA}
    out.update(payload)
    return out


def check_schema(data: dict) -> None:
    """Reject documents that declare a different schema (absent is fine)."""
    if isinstance(data, dict) and "schema" in data and data["schema"] != SCHEMA:
        raise InputError(
            f"unsupported schema {data['schema']!r}; expected {SCHEMA!r}")


def dump_json(payload) -> str:
    """Deterministic JSON text (sorted keys, stable spacing, newline)."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def load_json_text(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def load_json_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return load_json_text(text)


def _require(data: dict, key: str, kind, what: str):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"{what} needs a {key!r} field")
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise InputError(f"{what} field {key!r} has the wrong type")
    return value


def _int_list(values, what: str) -> List[int]:
    if not isinstance(values, (list, tuple)):
        raise InputError(f"{what} must be a list of integers")
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"{what} must contain only integers")
        out.append(int(v))
    return out


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def group_to_dict(G: FiniteGroup) -> dict:
    return {"cayley": [list(row) for row in G.table],
            "generators": list(G.generators),
            "name": G.name}


def group_from_dict(data: dict, cfg: Optional[RunConfig] = None) -> FiniteGroup:
    """A group from {"permutations": ...}, {"cayley": ...} or {"family": ...}."""
    cfg = cfg or DEFAULT_CONFIG
    if not isinstance(data, dict):
        raise InputError("group data must be a JSON object")
    check_schema(data)
    name = data.get("name", "G")
    if not isinstance(name, str):
        raise InputError("group 'name' must be a string")
    modes = [k for k in ("permutations", "cayley", "family") if k in data]
    if len(modes) != 1:
        raise InputError("group data needs exactly one of 'permutations', "
                         "'cayley' or 'family'")
    mode = modes[0]
    if mode == "permutations":
        perms = data["permutations"]
        if not isinstance(perms, list):
            raise InputError("'permutations' must be a list of one-line "
                             "permutations")
        perms = [_int_list(p, "permutation") for p in perms]
        return from_permutation_generators(perms, cfg, name=name)
    if mode == "cayley":
        table = data["cayley"]
        if not isinstance(table, list):
            raise InputError("'cayley' must be a list of rows")
        rows = [_int_list(row, "Cayley row") for row in table]
        generators = data.get("generators")
        if generators is not None:
            generators = _int_list(generators, "'generators'")
        return FiniteGroup(rows, generators=generators, name=name)
    family = data["family"]
    if not isinstance(family, str):
        raise InputError("group 'family' must be a string")
    params = data.get("params")
    if params is not None and not isinstance(params, dict):
        raise InputError("group 'params' must be an object")
    return standard_group(family, params, cfg)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

def module_to_spec(M: TwistedModule) -> dict:
    """Spec with the action keyed by generator position in M.group.generators."""
    G = M.group
    action = {str(i): [list(row) for row in M.action[g]]
              for i, g in enumerate(G.generators)}
    return {"free_rank": M.free_rank,
            "moduli": list(M.moduli),
            "action": action}


def module_from_spec(G: FiniteGroup, data: dict,
                     name: str = "A") -> TwistedModule:
    """A module from a spec, or from the {"sign": [...]} shorthand."""
    if not isinstance(data, dict):
        raise InputError("module spec must be a JSON object")
    check_schema(data)
    if "sign" in data:
        return sign_module(G, _int_list(data["sign"], "'sign'"))
    free_rank = _require(data, "free_rank", int, "module spec")
    moduli = _int_list(_require(data, "moduli", list, "module spec"),
                       "'moduli'")
    raw_action = data.get("action")
    if raw_action is None:
        gen_mats: Optional[List[List[List[int]]]] = None
    else:
        if not isinstance(raw_action, dict):
            raise InputError("module 'action' must be an object keyed by "
                             "generator position")
        try:
            keyed = {int(k): v for k, v in raw_action.items()}
        except (TypeError, ValueError):
            raise InputError("module 'action' keys must be integer positions")
        if set(keyed) != set(range(len(G.generators))):
            raise InputError(
                f"module 'action' must be keyed 0..{len(G.generators) - 1} "
                "matching the group generators")
        gen_mats = []
        for i in range(len(G.generators)):
            mat = keyed[i]
            if not isinstance(mat, list):
                raise InputError("action matrices must be lists of rows")
            gen_mats.append([_int_list(row, "action row") for row in mat])
    if free_rank == 0:
        return finite_module(G, moduli, gen_mats, name=name)
    if gen_mats is None:
        raise InputError("a module with free rank needs an explicit action")
    dim = free_rank + len(moduli)
    probe = TwistedModule(G, free_rank, moduli,
                          [tuple(tuple(int(i == j) for j in range(dim))
                                 for i in range(dim))] * G.order,
                          validate=False)
    gen_canon = [probe._canonical_matrix(m) for m in gen_mats]
    mats = extend_from_generators(G, gen_canon, probe.matrix_product,
                                  probe._canonical_matrix(
                                      [[int(i == j) for j in range(dim)]
                                       for i in range(dim)]))
    if mats is None:
        raise InputError("generator matrices do not extend to a G-action")
    return TwistedModule(G, free_rank, moduli, mats, name=name)


# ---------------------------------------------------------------------------
# cocycles and classes
# ---------------------------------------------------------------------------

def _key_of(t: Tuple[int, ...]) -> str:
    return ",".join(str(g) for g in t)


def _tuple_of(key: str, degree: int, order: int) -> Tuple[int, ...]:
    parts = key.split(",") if key else []
    if len(parts) != degree:
        raise InputError(f"cocycle key {key!r} does not have {degree} entries")
    try:
        t = tuple(int(p) for p in parts)
    except ValueError:
        raise InputError(f"cocycle key {key!r} is not a tuple of integers")
    for g in t:
        if not (0 <= g < order):
            raise InputError(f"cocycle key {key!r} indexes outside the group")
    return t


def cocycle_to_dict(alpha: CocycleTable) -> dict:
    """Scalar cocycle file for mu_N-valued cochains (single torsion summand)."""
    M = alpha.module
    if M.free_rank != 0 or len(M.moduli) != 1:
        raise InputError("scalar cocycle files need a single Z_N coefficient "
                         "summand; use an extension dump for vector values")
    values = {_key_of(t): v[0] for t, v in sorted(alpha.values.items())}
    return {"degree": alpha.degree, "modulus": M.moduli[0], "values": values}


def cocycle_from_dict(G: FiniteGroup, data: dict,
                      phi: Union[Sequence[int], TwistedModule]) -> CocycleTable:
    """A mu_N-valued cochain from a cocycle file, with the action from phi."""
    if not isinstance(data, dict):
        raise InputError("cocycle data must be a JSON object")
    check_schema(data)
    degree = _require(data, "degree", int, "cocycle file")
    if isinstance(degree, bool) or degree < 1:
        raise InputError("cocycle 'degree' must be a positive integer")
    modulus = _require(data, "modulus", int, "cocycle file")
    if isinstance(modulus, bool) or modulus < 2:
        raise InputError("cocycle 'modulus' must be an integer >= 2")
    raw = data.get("values", {})
    if not isinstance(raw, dict):
        raise InputError("cocycle 'values' must be an object")
    M = mu_module(G, epsilon_of(phi, G), modulus)
    values: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for key, v in raw.items():
        t = _tuple_of(key, degree, G.order)
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"cocycle value at {key!r} must be an integer")
        values[t] = (v,)
    return CocycleTable(degree, M, values)


def vector_cocycle_to_dict(beta: CocycleTable) -> dict:
    """Vector-valued cochain block (used for kernels and representatives)."""
    values = {_key_of(t): list(v) for t, v in sorted(beta.values.items())}
    return {"degree": beta.degree,
            "free_rank": beta.module.free_rank,
            "moduli": list(beta.module.moduli),
            "values": values}


def vector_cocycle_from_dict(M: TwistedModule, data: dict) -> CocycleTable:
    if not isinstance(data, dict):
        raise InputError("kernel cocycle data must be a JSON object")
    degree = _require(data, "degree", int, "kernel cocycle")
    raw = data.get("values", {})
    if not isinstance(raw, dict):
        raise InputError("kernel cocycle 'values' must be an object")
    G = M.group
    values: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for key, v in raw.items():
        t = _tuple_of(key, degree, G.order)
        if isinstance(v, int) and not isinstance(v, bool):
            vec: Sequence[int] = (v,)
        else:
            vec = _int_list(v, f"kernel cocycle value at {key!r}")
        if len(vec) != M.dim:
            raise InputError(f"kernel cocycle value at {key!r} must have "
                             f"{M.dim} coordinates")
        values[t] = tuple(vec)
    return CocycleTable(degree, M, values)


def class_to_dict(H: CohomologyGroup,
                  alpha: Optional[CocycleTable] = None) -> dict:
    """Invariant factors, plus the coordinates of a class when one is given."""
    out = {"invariants": list(H.invariants)}
    if alpha is not None:
        out["coordinates"] = list(H.coordinates(alpha))
    return out


# ---------------------------------------------------------------------------
# extensions
# ---------------------------------------------------------------------------

def extension_to_dict(ext: ExtensionData) -> dict:
    return {"group": group_to_dict(ext.group),
            "module": module_to_spec(ext.module),
            "beta": vector_cocycle_to_dict(ext.beta),
            "gamma": {"cayley": [list(row) for row in ext.gamma.table],
                      "name": ext.gamma.name},
            "inclusion": list(ext.inclusion),
            "projection": list(ext.projection),
            "section": list(ext.section)}


def extension_from_dict(data: dict,
                        cfg: Optional[RunConfig] = None) -> ExtensionData:
    """Rebuild an extension from its dump and verify the recorded tables."""
    cfg = cfg or DEFAULT_CONFIG
    if not isinstance(data, dict):
        raise InputError("extension data must be a JSON object")
    check_schema(data)
    G = group_from_dict(_require(data, "group", dict, "extension dump"), cfg)
    M = module_from_spec(G, _require(data, "module", dict, "extension dump"))
    beta = vector_cocycle_from_dict(
        M, _require(data, "beta", dict, "extension dump"))
    ext = build_extension(G, M, beta, cfg)
    recorded = data.get("gamma")
    if recorded is not None:
        table = _require(recorded, "cayley", list, "extension 'gamma'")
        if len(table) != ext.gamma.order:
            raise InputError("extension dump 'gamma' order does not match "
                             "the rebuilt extension")
        for a, row in enumerate(table):
            if _int_list(row, "gamma row") != list(ext.gamma.table[a]):
                raise InputError("extension dump 'gamma' table does not "
                                 "match the rebuilt extension")
    for key, want in (("inclusion", ext.inclusion),
                      ("projection", ext.projection),
                      ("section", ext.section)):
        got = data.get(key)
        if got is not None and _int_list(got, key) != list(want):
            raise InputError(f"extension dump {key!r} does not match the "
                             "rebuilt extension")
    return ext


# ---------------------------------------------------------------------------
# representation-group results
# ---------------------------------------------------------------------------

def repgroup_result_to_dict(result: RepGroupResult) -> dict:
    out = {"order": result.gamma.order,
           "fingerprint": result.fingerprint.as_dict(),
           "report": result.report.as_dict(),
           "witness": extension_to_dict(result.extension)}
    if result.identified_as is not None:
        out["identified_as"] = result.identified_as
    return out
