"""Monomial semilinear maps, regular representations, cocycle extraction,
and lifting over extensions."""

import itertools
import random

import pytest

from conftest import all_sign_characters

from twisted_schur.cohomology import CocycleTable, h2_class_representatives
from twisted_schur.errors import InputError
from twisted_schur.extensions import build_extension
from twisted_schur.gmodules import finite_module, mu_module
from twisted_schur.groups import (cyclic_group, dihedral_group,
                                  direct_product, is_isomorphic)
from twisted_schur.semiprojective import (MonomialSemilinearMap,
                                          SemiProjectiveRep, extract_cocycle,
                                          lift_over_extension,
                                          regular_semiprojective_rep,
                                          rep_from_dict, rep_to_dict,
                                          verify_semiprojective)


@pytest.fixture()
def order2_case():
    """The order-2 base case: conjugation action, alpha(g,g) = -1."""
    G = cyclic_group(2)
    mu = mu_module(G, [-1], 2)
    alpha = CocycleTable(2, mu, {(1, 1): (1,)})
    return G, alpha, regular_semiprojective_rep(G, alpha)


def test_map_algebra():
    a = MonomialSemilinearMap((1, 0), (0, 1), conj=True, modulus=2)
    ident = MonomialSemilinearMap.identity(2, 2)
    assert a.compose(a.inverse()) == ident
    # a^2 = -id: the scalar is tracked exactly
    assert a.compose(a).scalar_difference(ident) == 1
    # moduli are harmonized on composition
    b = MonomialSemilinearMap((0, 1), (1, 0), modulus=4)
    ab = a.compose(b)
    assert ab.modulus == 4 and ab.conj
    maps = [a, ident, a.inverse(), b]
    for x, y, w in itertools.product(maps, repeat=3):
        assert x.compose(y).compose(w) == x.compose(y.compose(w))


def test_map_validation():
    with pytest.raises(InputError):
        MonomialSemilinearMap((0, 0), (0, 0))
    with pytest.raises(InputError):
        MonomialSemilinearMap((0, 1), (0,))
    with pytest.raises(InputError):
        MonomialSemilinearMap((0,), (0,), modulus=0)
    a = MonomialSemilinearMap((1, 0), (0, 1), modulus=2)
    with pytest.raises(AttributeError):
        a.modulus = 4
    with pytest.raises(InputError):
        a.with_modulus(3)  # not a multiple


def test_regular_rep_of_the_order2_case(order2_case):
    G, alpha, f = order2_case
    r1 = f.maps[1]
    assert r1.perm == (1, 0)
    assert tuple(r1.exps) == (0, 1)
    assert r1.conj and r1.modulus == 2
    assert verify_semiprojective(f)
    assert extract_cocycle(f) == alpha


def test_lift_over_the_order4_extension(order2_case):
    G, alpha, f = order2_case
    A = finite_module(G, [2], None)
    beta = CocycleTable(2, A, {(1, 1): (1,)})
    ext = build_extension(G, A, beta)
    assert is_isomorphic(ext.gamma, cyclic_group(4))[0]

    result = lift_over_extension(f, ext)
    assert result.success
    lifted_gen = result.rep.maps[ext.section[1]]
    assert lifted_gen == f.maps[1]
    # the kernel generator maps to -id
    minus_id = result.rep.maps[ext.inclusion[1]]
    ident = MonomialSemilinearMap.identity(2, minus_id.modulus)
    assert minus_id.scalar_difference(ident) == minus_id.modulus // 2


def test_nontrivial_class_fails_over_the_split_extension(order2_case):
    G, alpha, f = order2_case
    A = finite_module(G, [2], None)
    split = build_extension(G, A, CocycleTable(2, A, {}))
    result = lift_over_extension(f, split)
    assert not result.success
    assert any(result.alpha_class)
    assert tuple(result.alpha_class) not in set(result.transgression_image)
    assert result.rep is None and result.character is None


def test_trivial_class_lifts_over_the_split_extension(order2_case):
    G, _, _ = order2_case
    mu = mu_module(G, [-1], 2)
    trivial = CocycleTable(2, mu, {})
    f0 = regular_semiprojective_rep(G, trivial, phi=[1, -1])
    A = finite_module(G, [2], None)
    split = build_extension(G, A, CocycleTable(2, A, {}))
    result = lift_over_extension(f0, split)
    assert result.success
    assert not any(result.character or ())


def test_extract_regular_roundtrip_random():
    rng = random.Random(7)
    pool = [cyclic_group(2), cyclic_group(3), cyclic_group(4),
            cyclic_group(6), dihedral_group(3), dihedral_group(4),
            cyclic_group(8),
            direct_product(cyclic_group(2), cyclic_group(2))]
    for _ in range(20):
        G = pool[rng.randrange(len(pool))]
        N = rng.choice([2, 3, 4, 5, 6, 7, 8])
        eps = rng.choice(all_sign_characters(G))
        mu = mu_module(G, eps, N)
        reps = h2_class_representatives(G, mu)
        alpha = reps[rng.randrange(len(reps))]
        shift = CocycleTable(1, mu, {(g,): (rng.randrange(N),)
                                     for g in range(1, G.order)})
        shifted = alpha + shift.coboundary()
        assert shifted.is_cocycle()
        f = regular_semiprojective_rep(G, shifted, phi=eps)
        assert extract_cocycle(f) == shifted, (G.name, N, eps)


def test_rep_file_round_trip(order2_case):
    G, _, f = order2_case
    back = rep_from_dict(G, rep_to_dict(f))
    assert all(back.maps[g] == f.maps[g] for g in range(G.order))


def test_non_semiprojective_collection_is_rejected(order2_case):
    G, _, f = order2_case
    bad_maps = list(f.maps)
    # identity perm with exps (0, 1) mod 4: its square has exps (0, 2),
    # which is not a scalar multiple of the identity
    bad_maps[1] = MonomialSemilinearMap((0, 1), (0, 1), False, 4)
    fbad = SemiProjectiveRep(G, bad_maps)
    assert not verify_semiprojective(fbad)
    with pytest.raises(InputError):
        extract_cocycle(fbad)


def test_identity_must_be_scalar():
    G = cyclic_group(2)
    swap = MonomialSemilinearMap((1, 0), (0, 0), modulus=2)
    with pytest.raises(InputError):
        SemiProjectiveRep(G, [swap, swap])
    # declared action must match the conjugation flags
    conj_map = MonomialSemilinearMap((1, 0), (0, 1), conj=True, modulus=2)
    ident = MonomialSemilinearMap.identity(2, 2)
    with pytest.raises(InputError):
        SemiProjectiveRep(G, [ident, conj_map], phi=[1, 1])
