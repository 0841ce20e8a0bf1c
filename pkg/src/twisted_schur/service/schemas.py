"""Pydantic request and response models for the HTTP service.

The models mirror the JSON file formats; deep semantic validation (group
axioms, cocycle identities, budgets) happens in the core package, so these
models only pin down the shapes.  Handlers never emit null-valued keys —
optional response fields are omitted, matching the in-process CLI output.
"""

from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field


class _Payload(BaseModel):
    """Base for request bodies: strict fields, optional schema marker."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_marker: Optional[str] = Field(default=None, alias="schema")

    def payload(self) -> dict:
        return self.model_dump(by_alias=True, exclude_none=True)


class GroupSpec(_Payload):
    """One of: permutation generators, a Cayley table, or a named family."""

    permutations: Optional[List[List[int]]] = None
    cayley: Optional[List[List[int]]] = None
    generators: Optional[List[int]] = None
    family: Optional[str] = None
    params: Optional[Dict[str, Any]] = None
    name: Optional[str] = None


class ModuleSpec(_Payload):
    free_rank: Optional[int] = None
    moduli: Optional[List[int]] = None
    action: Optional[Dict[str, List[List[int]]]] = None
    sign: Optional[List[int]] = None


class CocycleFile(_Payload):
    degree: int
    modulus: int
    values: Dict[str, int] = Field(default_factory=dict)


class VectorCocycleFile(_Payload):
    degree: int
    free_rank: Optional[int] = None
    moduli: Optional[List[int]] = None
    values: Dict[str, Union[int, List[int]]] = Field(default_factory=dict)


class GammaTable(_Payload):
    cayley: List[List[int]]
    name: Optional[str] = None


class ExtensionDump(_Payload):
    group: GroupSpec
    module: ModuleSpec
    beta: VectorCocycleFile
    gamma: Optional[GammaTable] = None
    inclusion: Optional[List[int]] = None
    projection: Optional[List[int]] = None
    section: Optional[List[int]] = None


class MonomialMapSpec(_Payload):
    perm: List[int]
    exps: List[int]
    conj: bool = False


class RepFile(_Payload):
    group: GroupSpec
    action: Optional[List[int]] = None
    modulus: int
    maps: Dict[str, MonomialMapSpec]


# ---- requests ----

class MultiplierRequest(_Payload):
    group: GroupSpec
    action: List[int]


class RepGroupsRequest(_Payload):
    group: GroupSpec
    action: List[int]


class CoefficientSpec(_Payload):
    sign: Optional[List[int]] = None
    module: Optional[ModuleSpec] = None


class CohomologyRequest(_Payload):
    group: GroupSpec
    degree: int
    coefficients: CoefficientSpec
    reps: bool = False


class RegularRepRequest(_Payload):
    group: GroupSpec
    action: List[int]
    cocycle: CocycleFile


class LiftRequest(_Payload):
    rep: RepFile
    extension: ExtensionDump


# ---- responses ----

class GroupInfo(BaseModel):
    name: str
    order: int


class MultiplierResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_marker: str = Field(alias="schema")
    group: GroupInfo
    action: List[int]
    invariants: List[int]
    order: int


class RepGroupEntry(BaseModel):
    order: int
    fingerprint: Dict[str, Any]
    report: Dict[str, Any]
    witness: Dict[str, Any]
    identified_as: Optional[str] = None


class RepGroupsResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_marker: str = Field(alias="schema")
    group: GroupInfo
    action: List[int]
    multiplier: List[int]
    count: int
    results: List[RepGroupEntry]


class CohomologyResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_marker: str = Field(alias="schema")
    group: GroupInfo
    degree: int
    module: Dict[str, Any]
    invariants: List[int]
    order: int
    representatives: Optional[List[Dict[str, Any]]] = None


class RepFileResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_marker: str = Field(alias="schema")
    group: Dict[str, Any]
    action: List[int]
    modulus: int
    maps: Dict[str, MonomialMapSpec]


class LiftResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_marker: str = Field(alias="schema")
    success: bool
    alpha_class: List[int]
    transgression_image: List[List[int]]
    detail: str
    character: Optional[List[int]] = None
    character_order: Optional[int] = None
    tau: Optional[Dict[str, List[int]]] = None
    rep: Optional[Dict[str, Any]] = None


class HeisenbergResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_marker: str = Field(alias="schema")
    closure_order: int
    scalar_order: int
    scalar_generator: str
    quotient_order: int
    stabilizer_order: int
    stabilizer_generator: str
    preserves: Dict[str, Dict[str, bool]]
    notes: str


class ErrorBody(BaseModel):
    type: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody
