"""Semi-projective representations by monomial semilinear maps.

A monomial semilinear map sends each basis vector to a root of unity times
another basis vector and optionally conjugates scalars; these maps represent
chosen preimages in GL of semi-projective representation values.  The module
provides the twisted regular representation attached to a 2-cocycle, exact
cocycle extraction, verification of the homomorphism-up-to-scalars property,
and the semi-linear lift of a representation over a compatible extension.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .config import DEFAULT_CONFIG, RunConfig
from .errors import InputError, PreconditionError
from .gmodules import (DualCharacter, TwistedModule, _as_epsilon,
                       dual_characters, is_equivariant_character, mu_module)
from .groups import FiniteGroup
from .cohomology import (CocycleTable, _mu_cocycle_context, bockstein_class,
                         solve_coboundary, twisted_multiplier)
from .extensions import ExtensionData, kernel_vectors, transgression

__all__ = [
    "MonomialSemilinearMap",
    "SemiProjectiveRep",
    "LiftResult",
    "regular_semiprojective_rep",
    "extract_cocycle",
    "verify_semiprojective",
    "lift_over_extension",
    "rep_to_dict",
    "rep_from_dict",
]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class MonomialSemilinearMap:
    """A monomial matrix with root-of-unity entries times an optional
    coordinatewise conjugation.

    The map sends basis vector ``e_j`` to ``zeta_N^exps[j] * e_{perm[j]}``
    and then, if ``conj`` is set, conjugates all scalars it is applied to.
    Instances are immutable; composition applies the right factor first and
    the left factor's automorphism to the right factor's scalars.
    """

    __slots__ = ("dimension", "perm", "exps", "conj", "modulus")

    def __init__(self, perm: Sequence[int], exps: Sequence[int],
                 conj: bool = False, modulus: int = 1):
        perm = tuple(int(p) for p in perm)
        d = len(perm)
        if d == 0:
            raise InputError("a monomial map needs dimension >= 1")
        if sorted(perm) != list(range(d)):
            raise InputError("perm must be a permutation of 0..d-1")
        if len(exps) != d:
            raise InputError("exps must have one entry per basis vector")
        if int(modulus) < 1:
            raise InputError("modulus must be >= 1")
        object.__setattr__(self, "dimension", d)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "modulus", int(modulus))
        object.__setattr__(self, "exps",
                           tuple(int(e) % self.modulus for e in exps))
        object.__setattr__(self, "conj", bool(conj))

    def __setattr__(self, name, value):
        raise AttributeError("MonomialSemilinearMap is immutable")

    # ---- constructors ----

    @classmethod
    def identity(cls, dimension: int, modulus: int = 1
                 ) -> "MonomialSemilinearMap":
        return cls(range(dimension), [0] * dimension, False, modulus)

    # ---- basic structure ----

    @property
    def epsilon(self) -> int:
        """The automorphism flag as a sign: -1 for conjugation, else +1."""
        return -1 if self.conj else 1

    def with_modulus(self, modulus: int) -> "MonomialSemilinearMap":
        """The same map with exponents rescaled to a multiple of the modulus."""
        if modulus % self.modulus:
            raise InputError("new modulus must be a multiple of the old one")
        k = modulus // self.modulus
        return MonomialSemilinearMap(self.perm, [e * k for e in self.exps],
                                     self.conj, modulus)

    def scale(self, exponent: int, modulus: Optional[int] = None
              ) -> "MonomialSemilinearMap":
        """This map multiplied by the scalar zeta_modulus^exponent."""
        modulus = self.modulus if modulus is None else int(modulus)
        if modulus < 1:
            raise InputError("modulus must be >= 1")
        n = _lcm(self.modulus, modulus)
        lifted = self.with_modulus(n)
        add = exponent * (n // modulus)
        return MonomialSemilinearMap(lifted.perm,
                                     [e + add for e in lifted.exps],
                                     lifted.conj, n)

    def compose(self, other: "MonomialSemilinearMap"
                ) -> "MonomialSemilinearMap":
        """self after other; self's automorphism acts on other's scalars."""
        if self.dimension != other.dimension:
            raise InputError("composed maps must share a dimension")
        n = _lcm(self.modulus, other.modulus)
        a, b = self.with_modulus(n), other.with_modulus(n)
        perm = tuple(a.perm[b.perm[j]] for j in range(self.dimension))
        exps = [a.epsilon * b.exps[j] + a.exps[b.perm[j]]
                for j in range(self.dimension)]
        return MonomialSemilinearMap(perm, exps, a.conj != b.conj, n)

    def inverse(self) -> "MonomialSemilinearMap":
        d = self.dimension
        perm = [0] * d
        exps = [0] * d
        for j in range(d):
            perm[self.perm[j]] = j
            exps[self.perm[j]] = -self.epsilon * self.exps[j]
        return MonomialSemilinearMap(perm, exps, self.conj, self.modulus)

    # ---- comparisons ----

    def _canonical(self) -> Tuple:
        g = self.modulus
        for e in self.exps:
            g = gcd(g, e)
        g = max(g, 1)
        return (self.dimension, self.perm,
                tuple(e // g for e in self.exps), self.modulus // g, self.conj)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonomialSemilinearMap)
                and self._canonical() == other._canonical())

    def __hash__(self) -> int:
        return hash(self._canonical())

    def is_identity(self) -> bool:
        return (self.perm == tuple(range(self.dimension))
                and not any(self.exps) and not self.conj)

    def scalar_difference(self, other: "MonomialSemilinearMap"
                          ) -> Optional[int]:
        """The exponent k with self = zeta^k * other, mod the lcm of the two
        moduli, or None if the maps do not differ by a scalar."""
        if (self.dimension != other.dimension or self.perm != other.perm
                or self.conj != other.conj):
            return None
        n = _lcm(self.modulus, other.modulus)
        a, b = self.with_modulus(n), other.with_modulus(n)
        k = (a.exps[0] - b.exps[0]) % n
        for j in range(1, self.dimension):
            if (a.exps[j] - b.exps[j]) % n != k:
                return None
        return k

    # ---- serialization and display ----

    def as_dict(self) -> dict:
        return {"perm": list(self.perm), "exps": list(self.exps),
                "conj": self.conj}

    def entries(self) -> Dict[Tuple[int, int], int]:
        """Nonzero matrix entries: (row, column) -> exponent of zeta_N."""
        return {(self.perm[j], j): self.exps[j]
                for j in range(self.dimension)}

    def __repr__(self) -> str:
        flag = "*" if self.conj else ""
        return (f"Monomial(d={self.dimension}, perm={list(self.perm)}, "
                f"exps={list(self.exps)} mod {self.modulus}){flag}")


class SemiProjectiveRep:
    """A semi-projective representation by chosen monomial representatives.

    ``maps[g]`` is the representative of the image of g; all maps share one
    dimension and are stored at the common modulus (the lcm of the input
    moduli).  The representative of the identity is normalized to
    the identity map; if the input value at the identity is not a scalar
    multiple of the identity the data cannot represent anything and is
    rejected.  The sign character ``phi`` records the induced action on
    scalars and must match the conjugation flags.
    """

    def __init__(self, group: FiniteGroup,
                 maps: Union[Sequence[MonomialSemilinearMap],
                             Dict[int, MonomialSemilinearMap]],
                 phi: Optional[Sequence[int]] = None):
        self.group = group
        if isinstance(maps, dict):
            try:
                maps = [maps[g] for g in range(group.order)]
            except KeyError as missing:
                raise InputError(f"no map given for element {missing}")
        maps = list(maps)
        if len(maps) != group.order:
            raise InputError("need exactly one map per group element")
        dims = {m.dimension for m in maps}
        if len(dims) != 1:
            raise InputError("all maps must share one dimension")
        self.dimension = dims.pop()
        modulus = 1
        for m in maps:
            modulus = _lcm(modulus, m.modulus)
        self.modulus = modulus
        maps = [m.with_modulus(modulus) for m in maps]
        ident = MonomialSemilinearMap.identity(self.dimension, modulus)
        if maps[0].scalar_difference(ident) is None:
            raise InputError(
                "the group identity must map to a scalar times the identity")
        maps[0] = ident
        self.maps: Tuple[MonomialSemilinearMap, ...] = tuple(maps)
        flags = [(-1 if m.conj else 1) for m in self.maps]
        if phi is None:
            self.phi = _as_epsilon(group, flags)
        else:
            self.phi = _as_epsilon(group, phi)
            if list(self.phi) != flags:
                raise InputError(
                    "conjugation flags do not match the declared action")

    def __call__(self, g: int) -> MonomialSemilinearMap:
        return self.maps[g]

    def __repr__(self) -> str:
        return (f"SemiProjectiveRep({self.group.name}, dim={self.dimension}, "
                f"modulus={self.modulus})")


def regular_semiprojective_rep(G: FiniteGroup, alpha: CocycleTable,
                               phi: Optional[Sequence[int]] = None,
                               cfg: Optional[RunConfig] = None
                               ) -> SemiProjectiveRep:
    """The twisted regular representation R of a normalized 2-cocycle.

    R(g) permutes the basis vector e_h to e_{gh} with scalar
    zeta_N^{-alpha(g, h)} and conjugates exactly when phi(g) = -1.  The
    attached cocycle equals alpha on the nose: extract_cocycle(R) == alpha.
    """
    del cfg  # uniform signature; the construction needs no budget
    if alpha.degree != 2:
        raise InputError("the regular representation needs a 2-cocycle")
    G2, N, eps = _mu_cocycle_context(alpha, phi)
    if G2 is not G and G2.content_hash() != G.content_hash():
        raise InputError("alpha is defined over a different group")
    if not alpha.is_cocycle():
        raise PreconditionError("alpha is not a twisted 2-cocycle")
    maps = []
    for g in range(G.order):
        perm = [G.mul(g, h) for h in range(G.order)]
        exps = [-alpha.value((g, h))[0] for h in range(G.order)]
        maps.append(MonomialSemilinearMap(perm, exps, eps[g] < 0, N))
    return SemiProjectiveRep(G, maps, phi=list(eps))


def extract_cocycle(f: SemiProjectiveRep) -> CocycleTable:
    """The unique 2-cocycle alpha with rep(gh) = alpha(g,h)*(rep(g) o rep(h)).

    Exponents are taken mod the representation's modulus; a pair of elements
    whose maps do not differ by a scalar means f is not semi-projective and is
    rejected.
    """
    G = f.group
    N = max(f.modulus, 2)  # mu_N needs N >= 2 even for scalar-free maps
    values: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for g in range(1, G.order):
        for h in range(1, G.order):
            k = f.maps[G.mul(g, h)].scalar_difference(
                f.maps[g].compose(f.maps[h]))
            if k is not None:
                k *= N // f.modulus
            if k is None:
                raise InputError(
                    f"not semi-projective: images of {g} and {h} compose "
                    "to a non-scalar multiple of the image of their product")
            if k:
                values[(g, h)] = (k,)
    alpha = CocycleTable(2, mu_module(G, list(f.phi), N), values)
    if not alpha.is_cocycle():
        raise AssertionError("extracted scalars violate the cocycle identity")
    return alpha


def verify_semiprojective(f: SemiProjectiveRep) -> bool:
    """Whether every pair of images composes to a scalar multiple of the
    image of the product (the conjugation flags then multiply correctly
    automatically, since a scalar difference requires equal flags)."""
    G = f.group
    for g in range(G.order):
        for h in range(G.order):
            if f.maps[G.mul(g, h)].scalar_difference(
                    f.maps[g].compose(f.maps[h])) is None:
                return False
    return True


@dataclass
class LiftResult:
    """Outcome of a semi-linear lift attempt over an extension.

    On success, ``rep`` is a genuine homomorphism of the extension group into
    monomial semilinear maps (no scalar slack) whose classes project to the
    input representation.  On failure, ``alpha_class`` names the obstruction:
    the class of the extracted cocycle, which lies outside the transgression
    image listed in ``transgression_image``.
    """

    success: bool
    rep: Optional[SemiProjectiveRep]
    character: Optional[Tuple[int, ...]]
    character_order: int
    tau: Optional[Dict[int, Fraction]]
    alpha_class: Tuple[int, ...]
    transgression_image: Tuple[Tuple[int, ...], ...]
    detail: str

    def as_dict(self) -> dict:
        out = {
            "success": self.success,
            "alpha_class": list(self.alpha_class),
            "transgression_image": [list(c) for c in self.transgression_image],
            "detail": self.detail,
        }
        if self.success:
            out["character"] = list(self.character)
            out["character_order"] = self.character_order
            out["tau"] = {str(g): [t.numerator, t.denominator]
                          for g, t in self.tau.items()}
            out["rep"] = rep_to_dict(self.rep)
        return out


def lift_over_extension(f: SemiProjectiveRep, ext: ExtensionData,
                        cfg: Optional[RunConfig] = None) -> LiftResult:
    """Lift f to a strict semi-linear representation of the extension group.

    The extracted cocycle class is matched against the transgression image of
    the extension's equivariant kernel characters; for a matching character
    lambda, a scalar correction tau with d(tau) = alpha + lambda(beta) turns
    gamma = a*s(g) |-> lambda(a)*tau(g)*rep(g) into a homomorphism.  Failure
    is reported exactly when no equivariant character matches, i.e. when the
    class lies outside the transgression image.
    """
    cfg = cfg or DEFAULT_CONFIG
    G = f.group
    if ext.group is not G and ext.group.content_hash() != G.content_hash():
        raise InputError("representation and extension use different groups")
    eps = list(f.phi)
    alpha = extract_cocycle(f)
    alpha_class = bockstein_class(alpha, eps, cfg)
    mult = twisted_multiplier(G, eps, cfg)

    image: List[Tuple[int, ...]] = []
    matches: List[DualCharacter] = []
    for lam in dual_characters(ext.module.moduli):
        if not is_equivariant_character(lam, ext.module, eps):
            continue
        image.append(transgression(lam, ext, eps, cfg))
        matches.append(lam)

    for lam in matches:
        tau = _solve_for_character(f, ext, alpha, lam, eps, cfg)
        if tau is None:
            continue
        rep = _assemble_lift(f, ext, lam, tau, eps)
        return LiftResult(
            success=True, rep=rep, character=lam.exponents,
            character_order=lam.target_order, tau=tau,
            alpha_class=alpha_class,
            transgression_image=tuple(sorted(set(image))),
            detail="lift found: class "
                   f"{list(alpha_class)} is in the transgression image")
    return LiftResult(
        success=False, rep=None, character=None, character_order=0, tau=None,
        alpha_class=alpha_class,
        transgression_image=tuple(sorted(set(image))),
        detail="no lift: no equivariant character of the kernel transgresses "
               f"to the class {list(alpha_class)} of H^2 "
               f"(invariants {list(mult.invariants)}); the image covers "
               f"{len(set(image))} of {mult.order} classes")


def _solve_for_character(f: SemiProjectiveRep, ext: ExtensionData,
                         alpha: CocycleTable, lam: DualCharacter,
                         eps: Sequence[int], cfg: RunConfig
                         ) -> Optional[Dict[int, Fraction]]:
    """tau with d(tau) = alpha + lambda(beta) over C*, or None."""
    G = f.group
    n_alpha = alpha.module.moduli[0]
    n0 = _lcm(n_alpha, lam.target_order)
    mu = mu_module(G, list(eps), n0)
    values: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for g in range(1, G.order):
        for h in range(1, G.order):
            e = (alpha.value((g, h))[0] * (n0 // n_alpha)
                 + lam.value_on(ext.beta.value((g, h)))
                 * (n0 // lam.target_order))
            if e % n0:
                values[(g, h)] = (e,)
    return solve_coboundary(CocycleTable(2, mu, values), list(eps), cfg)


def _assemble_lift(f: SemiProjectiveRep, ext: ExtensionData,
                   lam: DualCharacter, tau: Dict[int, Fraction],
                   eps: Sequence[int]) -> SemiProjectiveRep:
    """Build and fully verify F(a*s(g)) = lambda(a)*tau(g)*rep(g)."""
    G = f.group
    gamma = ext.gamma
    modulus = _lcm(f.modulus, lam.target_order)
    for t in tau.values():
        modulus = _lcm(modulus, t.denominator)
    avecs = kernel_vectors(ext.module.moduli)
    maps: List[MonomialSemilinearMap] = []
    for x in range(gamma.order):
        a_idx, g = ext.decompose(x)
        t = tau.get(g, Fraction(0))
        e = (lam.value_on(avecs[a_idx]) * (modulus // lam.target_order)
             + int(t * modulus))
        maps.append(f.maps[g].with_modulus(modulus).scale(e))
    phi_gamma = [eps[ext.projection[x]] for x in range(gamma.order)]
    rep = SemiProjectiveRep(gamma, maps, phi=phi_gamma)
    for x in range(gamma.order):
        for y in range(gamma.order):
            if rep.maps[gamma.mul(x, y)] != rep.maps[x].compose(rep.maps[y]):
                raise AssertionError("lift is not a strict homomorphism")
        if rep.maps[x].scalar_difference(
                f.maps[ext.projection[x]].with_modulus(rep.modulus)) is None:
            raise AssertionError("lift does not project to the input")
    return rep


# ---------------------------------------------------------------------------
# representation files
# ---------------------------------------------------------------------------

def rep_to_dict(f: SemiProjectiveRep) -> dict:
    """JSON form: {"modulus": N, "maps": {"g": {perm, exps, conj}}}."""
    return {"modulus": f.modulus,
            "maps": {str(g): f.maps[g].as_dict()
                     for g in range(f.group.order)}}


def rep_from_dict(G: FiniteGroup, data: dict,
                  phi: Optional[Sequence[int]] = None) -> SemiProjectiveRep:
    """Rebuild a representation of G from its JSON form."""
    if not isinstance(data, dict) or "maps" not in data:
        raise InputError("representation data needs a 'maps' table")
    modulus = data.get("modulus", 1)
    if not isinstance(modulus, int) or modulus < 1:
        raise InputError("representation modulus must be a positive integer")
    raw = data["maps"]
    if not isinstance(raw, dict):
        raise InputError("'maps' must be an object keyed by element index")
    maps: Dict[int, MonomialSemilinearMap] = {}
    for key, entry in raw.items():
        try:
            g = int(key)
        except (TypeError, ValueError):
            raise InputError(f"map key {key!r} is not an element index")
        if not (0 <= g < G.order):
            raise InputError(f"map key {g} out of range for |G|={G.order}")
        if not isinstance(entry, dict):
            raise InputError(f"map entry for {g} must be an object")
        try:
            maps[g] = MonomialSemilinearMap(
                entry["perm"], entry["exps"], entry.get("conj", False),
                modulus)
        except KeyError as missing:
            raise InputError(f"map entry for {g} lacks field {missing}")
    if len(maps) != G.order:
        raise InputError(
            f"need maps for all {G.order} elements, got {len(maps)}")
    return SemiProjectiveRep(G, maps, phi=phi)
