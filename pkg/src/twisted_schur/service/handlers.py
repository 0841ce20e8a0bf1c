"""Operation handlers shared by the HTTP service and the in-process CLI.

Each handler takes an already-parsed JSON payload (a plain dict) plus a run
configuration and returns a JSON-ready dict carrying the schema marker.
Validation failures raise InputError, budget overruns ResourceError, and
violated mathematical preconditions PreconditionError; both frontends map
those to their own status codes.
"""

from typing import List, Optional

from ..config import DEFAULT_CONFIG, RunConfig
from ..errors import InputError
from ..gmodules import epsilon_of, sign_module
from ..cohomology import cohomology_group, twisted_multiplier
from ..geometry import heisenberg_demo
from ..groups import FiniteGroup
from ..repgroups import twisted_representation_groups
from ..semiprojective import (lift_over_extension, regular_semiprojective_rep,
                              rep_from_dict, rep_to_dict)
from ..formats import (attach_schema, check_schema, cocycle_from_dict,
                       extension_from_dict, group_from_dict, group_to_dict,
                       module_from_spec, repgroup_result_to_dict,
                       vector_cocycle_to_dict)

__all__ = [
    "handle_multiplier",
    "handle_repgroups",
    "handle_cohomology",
    "handle_regular_rep",
    "handle_lift",
    "handle_heisenberg",
]


def _get(payload: dict, key: str, what: str):
    if not isinstance(payload, dict):
        raise InputError(f"{what} payload must be a JSON object")
    if key not in payload or payload[key] is None:
        raise InputError(f"{what} payload needs {key!r}")
    return payload[key]


def _group_of(payload: dict, what: str, cfg: RunConfig) -> FiniteGroup:
    return group_from_dict(_get(payload, "group", what), cfg)


def _action_of(payload: dict, G: FiniteGroup, what: str) -> List[int]:
    action = _get(payload, "action", what)
    if not isinstance(action, (list, tuple)) or not action:
        raise InputError(f"{what} 'action' must be a nonempty list of +-1 "
                         "signs (one per group generator, or per element)")
    if len(action) not in (len(G.generators), G.order):
        raise InputError(
            f"{what} 'action' length {len(action)} matches neither the "
            f"generator count ({len(G.generators)}) nor the group order "
            f"({G.order})")
    return list(epsilon_of([int(v) for v in action], G))


def handle_multiplier(payload: dict,
                      cfg: Optional[RunConfig] = None) -> dict:
    """Invariant factors of the twisted multiplier H^2(G, C*_phi)."""
    cfg = cfg or DEFAULT_CONFIG
    check_schema(payload)
    G = _group_of(payload, "multiplier", cfg)
    eps = _action_of(payload, G, "multiplier")
    H = twisted_multiplier(G, eps, cfg)
    return attach_schema({
        "group": {"name": G.name, "order": G.order},
        "action": eps,
        "invariants": list(H.invariants),
        "order": H.order,
    })


def handle_repgroups(payload: dict,
                     cfg: Optional[RunConfig] = None) -> dict:
    """All phi-twisted representation groups, with witness extensions."""
    cfg = cfg or DEFAULT_CONFIG
    check_schema(payload)
    G = _group_of(payload, "repgroups", cfg)
    eps = _action_of(payload, G, "repgroups")
    H = twisted_multiplier(G, eps, cfg)
    results = twisted_representation_groups(G, eps, cfg)
    return attach_schema({
        "group": {"name": G.name, "order": G.order},
        "action": eps,
        "multiplier": list(H.invariants),
        "count": len(results),
        "results": [repgroup_result_to_dict(r) for r in results],
    })


def handle_cohomology(payload: dict,
                      cfg: Optional[RunConfig] = None) -> dict:
    """Invariant factors of H^n(G, M), optionally with representatives."""
    cfg = cfg or DEFAULT_CONFIG
    check_schema(payload)
    G = _group_of(payload, "cohomology", cfg)
    degree = _get(payload, "degree", "cohomology")
    if isinstance(degree, bool) or not isinstance(degree, int):
        raise InputError("cohomology 'degree' must be an integer")
    coeff = _get(payload, "coefficients", "cohomology")
    if not isinstance(coeff, dict):
        raise InputError("cohomology 'coefficients' must be an object with "
                         "'sign' or 'module'")
    if ("sign" in coeff) == ("module" in coeff):
        raise InputError("cohomology 'coefficients' needs exactly one of "
                         "'sign' or 'module'")
    if "sign" in coeff:
        M = sign_module(G, [int(v) for v in coeff["sign"]])
    else:
        M = module_from_spec(G, coeff["module"])
    H = cohomology_group(G, M, degree, cfg)
    out = {
        "group": {"name": G.name, "order": G.order},
        "degree": degree,
        "module": {"free_rank": M.free_rank, "moduli": list(M.moduli)},
        "invariants": list(H.invariants),
        "order": H.order,
    }
    if payload.get("reps"):
        out["representatives"] = [vector_cocycle_to_dict(rep)
                                  for rep in H.representatives]
    return attach_schema(out)


def handle_regular_rep(payload: dict,
                       cfg: Optional[RunConfig] = None) -> dict:
    """The regular semi-projective representation of a twisted 2-cocycle.

    The emitted representation file embeds the group and the action so that
    it is self-contained for a later lift.
    """
    cfg = cfg or DEFAULT_CONFIG
    check_schema(payload)
    G = _group_of(payload, "regular-rep", cfg)
    eps = _action_of(payload, G, "regular-rep")
    alpha = cocycle_from_dict(G, _get(payload, "cocycle", "regular-rep"), eps)
    rep = regular_semiprojective_rep(G, alpha, phi=eps, cfg=cfg)
    out = {"group": group_to_dict(G), "action": eps}
    out.update(rep_to_dict(rep))
    return attach_schema(out)


def handle_lift(payload: dict, cfg: Optional[RunConfig] = None) -> dict:
    """Lift a semi-projective representation over an extension.

    An unliftable class is not an error: the response carries
    ``success: false`` plus the obstruction (the cocycle class and the
    transgression image it misses).
    """
    cfg = cfg or DEFAULT_CONFIG
    check_schema(payload)
    rep_data = _get(payload, "rep", "lift")
    if not isinstance(rep_data, dict):
        raise InputError("lift 'rep' must be a representation file object")
    check_schema(rep_data)
    G = group_from_dict(_get(rep_data, "group", "representation file"), cfg)
    phi = rep_data.get("action")
    if phi is not None:
        phi = list(epsilon_of([int(v) for v in phi], G))
    f = rep_from_dict(G, rep_data, phi=phi)
    ext = extension_from_dict(_get(payload, "extension", "lift"), cfg)
    result = lift_over_extension(f, ext, cfg)
    out = result.as_dict()
    if result.success:
        out["rep"]["group"] = group_to_dict(ext.gamma)
        out["rep"]["action"] = [1 if e > 0 else -1
                                for e in result.rep.phi]
    return attach_schema(out)


def handle_heisenberg(payload: Optional[dict] = None,
                      cfg: Optional[RunConfig] = None) -> dict:
    """The order-2592 semilinear normalizer demo report."""
    cfg = cfg or DEFAULT_CONFIG
    if payload:
        check_schema(payload)
    return attach_schema(heisenberg_demo(cfg))
