"""Extensions of a finite group by a finite abelian kernel.

An extension 1 -> A -> Gamma -> G -> 1 with abelian kernel is described by a
G-module structure on A together with a normalized A-valued 2-cocycle beta;
the total group multiplies as (a, g) * (b, h) = (a + g*b + beta(g, h), gh).
This module enumerates module structures, builds the extension group with its
inclusion / projection / section maps, computes transgression images of
kernel characters, and tests the stem property.
"""

from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .cohomology import CocycleTable, bockstein_class, twisted_multiplier
from .config import DEFAULT_CONFIG, RunConfig
from .errors import InputError, ResourceError
from .gmodules import (DualCharacter, TwistedModule, epsilon_of,
                       is_equivariant_character, mu_module)
from .groups import FiniteGroup, extend_from_generators


def kernel_vectors(moduli: Sequence[int]) -> List[Tuple[int, ...]]:
    """All elements of (+)_i Z_{m_i} as coordinate tuples, row-major."""
    return list(itertools.product(*(range(int(m)) for m in moduli)))


@dataclass(eq=False)
class ExtensionData:
    """A built extension 1 -> A -> Gamma -> G -> 1.

    ``inclusion[a]`` is the Gamma-index of (a, 1), ``projection[x]`` the
    G-index under the quotient map, and ``section[g]`` the Gamma-index of
    (0, g); kernel elements are indexed row-major over ``module.moduli``.
    Gamma-element x corresponds to the pair (x // |G|, x % |G|).
    """

    group: FiniteGroup
    module: TwistedModule
    beta: CocycleTable
    gamma: FiniteGroup
    inclusion: Tuple[int, ...]
    projection: Tuple[int, ...]
    section: Tuple[int, ...]

    @property
    def kernel_size(self) -> int:
        return len(self.inclusion)

    def element_index(self, a_idx: int, g_idx: int) -> int:
        return a_idx * self.group.order + g_idx

    def decompose(self, x: int) -> Tuple[int, int]:
        return divmod(x, self.group.order)

    def content_hash(self) -> str:
        import hashlib

        h = hashlib.sha256()
        h.update(self.group.content_hash().encode())
        h.update(self.module.content_hash().encode())
        h.update(self.beta.content_hash().encode())
        return h.hexdigest()

    def __repr__(self) -> str:
        return (f"ExtensionData(|A|={self.kernel_size}, G={self.group.name}, "
                f"|Gamma|={self.gamma.order})")


def build_extension(G: FiniteGroup, module: TwistedModule, beta: CocycleTable,
                    cfg: Optional[RunConfig] = None) -> ExtensionData:
    """Build the extension group from a normalized 2-cocycle beta.

    The cocycle is verified (non-cocycles are rejected as invalid input), the
    Cayley table is assembled from the twisted product, and the construction
    identities (projection * section = id, conjugation by section(g) acts as
    g*, section products differ by inclusion(beta)) are checked in full.
    """
    cfg = cfg or DEFAULT_CONFIG
    if module.group is not G and \
            module.group.content_hash() != G.content_hash():
        raise InputError("kernel module is defined over a different group")
    if module.free_rank:
        raise InputError("extension kernel must be finite (free rank 0)")
    if beta.module is not module and \
            beta.module.content_hash() != module.content_hash():
        raise InputError("beta takes values in a different module")
    if beta.degree != 2:
        raise InputError("beta must be a 2-cochain")
    if not beta.is_cocycle():
        raise InputError("beta is not a 2-cocycle for this action")

    moduli = module.moduli
    avecs = kernel_vectors(moduli)
    aidx = {v: i for i, v in enumerate(avecs)}
    n_a, n_g = len(avecs), G.order
    size = n_a * n_g
    if size > cfg.max_group_order:
        raise ResourceError(
            f"extension order {size} exceeds max_group_order="
            f"{cfg.max_group_order}")

    act = [[aidx[module.act(g, v)] for v in avecs] for g in range(n_g)]
    add = [[aidx[module.add(u, v)] for v in avecs] for u in avecs]
    bidx = [[aidx[beta.value((g, h))] for h in range(n_g)] for g in range(n_g)]

    tbl = G.table
    zero_row = array("i", [0]) * size
    rows: List[array] = []
    for a in range(n_a):
        add_a = add[a]
        for g in range(n_g):
            act_g, b_g, t_g = act[g], bidx[g], tbl[g]
            row = array("i", zero_row)
            j = 0
            for b in range(n_a):
                c_base = add_a[act_g[b]]
                add_c = add[c_base]
                for h in range(n_g):
                    row[j] = add_c[b_g[h]] * n_g + t_g[h]
                    j += 1
            rows.append(row)

    k = len(moduli)
    gens: List[int] = []
    for i in range(k):
        unit = tuple(int(j == i) for j in range(k))
        gens.append(aidx[unit] * n_g)
    gens.extend(G.generators)  # (0, g) sits at index g

    gamma = FiniteGroup(rows, generators=gens, name=f"{G.name}.ext")

    inclusion = tuple(a * n_g for a in range(n_a))
    projection = tuple(x % n_g for x in range(size))
    section = tuple(range(n_g))

    for g in range(n_g):
        if projection[section[g]] != g:
            raise AssertionError("projection * section is not the identity")
        for a in range(n_a):
            if gamma.conj(section[g], inclusion[a]) != inclusion[act[g][a]]:
                raise AssertionError(
                    "conjugation by section(g) does not realize the action")
        for h in range(n_g):
            lhs = gamma.mul(section[g], section[h])
            rhs = gamma.mul(inclusion[bidx[g][h]], section[tbl[g][h]])
            if lhs != rhs:
                raise AssertionError(
                    "section products do not realize the cocycle")
    if set(inclusion) != {x for x in range(size) if projection[x] == 0}:
        raise AssertionError("inclusion image is not the kernel of projection")

    return ExtensionData(G, module, beta, gamma, inclusion, projection,
                         section)


def enumerate_module_structures(G: FiniteGroup, moduli: Sequence[int],
                                cfg: Optional[RunConfig] = None
                                ) -> List[TwistedModule]:
    """All G-module structures on A = (+)_i Z_{m_i}.

    Aut(A) is enumerated by brute force over candidate generator images
    (columns of integer matrices respecting the moduli) filtered to
    bijections; the structures are exactly the homomorphisms G -> Aut(A),
    found by generator images and extended over the whole Cayley table.
    """
    cfg = cfg or DEFAULT_CONFIG
    moduli = tuple(int(m) for m in moduli)
    for m in moduli:
        if m < 2:
            raise InputError("kernel moduli must be >= 2")
    size = 1
    for m in moduli:
        size *= m
    if size > cfg.max_module_order:
        raise ResourceError(
            f"|A| = {size} exceeds max_module_order={cfg.max_module_order}")

    k = len(moduli)
    if k == 0:
        trivial = TwistedModule(G, 0, (), [()] * G.order, name="A")
        return [trivial]

    avecs = kernel_vectors(moduli)
    candidates: List[List[Tuple[int, ...]]] = []
    for j in range(k):
        cands = [v for v in avecs
                 if all((moduli[j] * v[i]) % moduli[i] == 0 for i in range(k))]
        candidates.append(cands)

    auts: List[Tuple[Tuple[int, ...], ...]] = []
    for cols in itertools.product(*candidates):
        mat = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
        images = set()
        for v in avecs:
            images.add(tuple(
                sum(mat[i][j] * v[j] for j in range(k)) % moduli[i]
                for i in range(k)))
        if len(images) == size:
            auts.append(mat)
    auts.sort()

    ident = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))

    def mat_mul(a, b):
        return tuple(tuple(
            sum(a[i][l] * b[l][j] for l in range(k)) % moduli[i]
            for j in range(k)) for i in range(k))

    n_gens = len(G.generators)
    total = len(auts) ** n_gens
    if total > 500000:
        raise ResourceError(
            f"|Aut(A)|^{n_gens} = {total} generator-image tuples exceed the "
            "enumeration budget")

    structures: List[TwistedModule] = []
    for images in itertools.product(auts, repeat=n_gens):
        full = extend_from_generators(G, list(images), mat_mul, ident)
        if full is None:
            continue
        structures.append(TwistedModule(G, 0, moduli, list(full), name="A"))
    return structures


def transgression(lam: DualCharacter, ext: ExtensionData, phi,
                  cfg: Optional[RunConfig] = None) -> Tuple[int, ...]:
    """Coordinates of tra(lam) = [lam o beta] in twisted_multiplier(G, phi).

    ``lam`` must be an equivariant character of the kernel; the image depends
    only on the cohomology class of beta.
    """
    cfg = cfg or DEFAULT_CONFIG
    G = ext.group
    eps = epsilon_of(phi, G)
    if not is_equivariant_character(lam, ext.module, list(eps)):
        raise InputError("character is not equivariant for this action")
    mult = twisted_multiplier(G, list(eps), cfg)
    N = lam.target_order
    if N == 1:
        return mult.zero_coordinates()
    mu = mu_module(G, list(eps), N)
    values: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for t, vec in ext.beta.values.items():
        e = lam.value_on(vec)
        if e:
            values[t] = (e,)
    return bockstein_class(CocycleTable(2, mu, values), list(eps), cfg)


def is_stem(ext: ExtensionData) -> bool:
    """Whether the kernel is central in Gamma and inside [Gamma, Gamma]."""
    gamma = ext.gamma
    incl = set(ext.inclusion)
    return incl <= set(gamma.center()) and incl <= set(gamma.derived_subgroup())
