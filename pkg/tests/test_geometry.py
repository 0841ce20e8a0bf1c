"""Semilinear matrices, group closure, complex lattices, and the demo
report over exact cyclotomic arithmetic."""

import random
from fractions import Fraction

import pytest

from twisted_schur.cyclotomic import CyclotomicField
from twisted_schur.errors import (InputError, PreconditionError,
                                  ResourceError)
from twisted_schur.geometry import (ComplexLattice, SemilinearMatrix,
                                    heisenberg_generators, lattice_from_dict,
                                    lattice_scalar_stabilizer,
                                    lattice_to_dict, matrix_from_dict,
                                    matrix_to_dict, preserves_lattice,
                                    schroedinger_matrices,
                                    semilinear_group_closure)

F3 = CyclotomicField(3)
Z = F3.zeta()


def test_compose_applies_conjugation_to_the_right_factor():
    A = SemilinearMatrix(F3, [[Z, 0], [0, 1]], conj=True)
    B = SemilinearMatrix(F3, [[0, 1], [Z, 0]])
    AB = A.compose(B)
    assert AB.conj is True
    assert AB.rows[0][1] == Z and AB.rows[1][0] == Z * Z
    assert AB.rows[0][0].is_zero() and AB.rows[1][1].is_zero()


def test_matrix_algebra_random_identities():
    rng = random.Random(7)
    A = SemilinearMatrix(F3, [[Z, 0], [0, 1]], conj=True)
    B = SemilinearMatrix(F3, [[0, 1], [Z, 0]])
    pool = [A, B, A.compose(B), SemilinearMatrix.identity(F3, 2),
            SemilinearMatrix.scalar(F3, 2, -Z, conj=True)]
    for _ in range(40):
        x, y, w = (rng.choice(pool) for _ in range(3))
        assert (x.compose(y)).compose(w) == x.compose(y.compose(w))
    for _ in range(20):
        x, y = rng.choice(pool), rng.choice(pool)
        v = [F3.element([Fraction(rng.randint(-2, 2)),
                         Fraction(rng.randint(-2, 2))]) for _ in range(2)]
        assert x.compose(y).apply(v) == x.apply(y.apply(v))
    linear = [B, SemilinearMatrix(F3, [[1, Z], [0, Z]]),
              SemilinearMatrix.identity(F3, 2)]
    for x in linear:
        for y in linear:
            assert x.compose(y).determinant() == \
                x.determinant() * y.determinant()


def test_schroedinger_closure_27_3_9():
    rho_g, rho_h, rho_k = schroedinger_matrices()
    G, elements = semilinear_group_closure([rho_g, rho_h, rho_k],
                                           name="schroedinger")
    assert G.order == 27
    scalars = [m for m in elements
               if not m.conj and m.scalar_value() is not None]
    assert len(scalars) == 3
    assert G.order // len(scalars) == 9
    # extra-special invariants of the closure
    assert len(G.center()) == 3 and G.exponent() == 3
    # the Cayley table agrees with matrix composition everywhere
    for a in range(27):
        for b in range(27):
            assert elements[G.mul(a, b)] == elements[a].compose(elements[b])


def test_closure_error_taxonomy():
    rho = schroedinger_matrices()
    with pytest.raises(InputError):
        semilinear_group_closure([])
    with pytest.raises(PreconditionError):
        semilinear_group_closure([SemilinearMatrix(F3, [[1, 0], [1, 0]])])
    with pytest.raises(ResourceError):
        semilinear_group_closure(list(rho), max_order=20)
    with pytest.raises(InputError):
        SemilinearMatrix(F3, [[1, 0], [0, 1]]).compose(
            SemilinearMatrix(CyclotomicField(4), [[1, 0], [0, 1]]))


def test_lattice_membership_and_stabilizers():
    F4 = CyclotomicField(4)
    i = F4.zeta()
    gauss = ComplexLattice(F4, [[F4.one()], [i]])
    assert gauss.contains([3 - 2 * i])
    assert not gauss.contains([F4.element([Fraction(1, 2), Fraction(0)])])
    st = lattice_scalar_stabilizer(gauss)
    assert st.order == 4 and st.generator == i

    narrow = ComplexLattice(F4, [[F4.one()], [2 * i]])
    st2 = lattice_scalar_stabilizer(narrow)
    assert st2.order == 2 and st2.generator == -F4.one()

    eisenstein = ComplexLattice(F3, [[F3.one()], [Z]])
    st3 = lattice_scalar_stabilizer(eisenstein)
    assert st3.order == 6
    assert st3.generator == 1 + Z  # the primitive sixth root in this basis
    # |generator| = 1 exactly: mu * conj(mu) = 1
    assert (st3.generator * st3.generator.conjugate()).is_one()


def test_lattice_from_generators_and_preservation():
    eisenstein = ComplexLattice(F3, [[F3.one()], [Z]])
    redundant = ComplexLattice.from_generators(
        F3, [[1], [Z], [1 + Z], [3 * Z]])
    for v in ([1], [Z], [1 + Z], [Z * Z]):
        assert redundant.contains(v) and eisenstein.contains(v)

    rotation = SemilinearMatrix.scalar(F3, 1, 1 + Z)
    assert preserves_lattice(rotation, eisenstein)
    conj_map = SemilinearMatrix(F3, [[F3.one()]], conj=True)
    assert preserves_lattice(conj_map, eisenstein)
    # preservation is closed under composition
    both = rotation.compose(conj_map)
    assert preserves_lattice(both, eisenstein)
    stretch = SemilinearMatrix.scalar(F3, 1, F3.coerce(2))
    assert not preserves_lattice(stretch, eisenstein)


def test_serialization_round_trips():
    A = SemilinearMatrix(F3, [[Z, 0], [0, 1]], conj=True)
    B = SemilinearMatrix(F3, [[0, 1], [Z, 0]])
    AB = A.compose(B)
    assert matrix_from_dict(matrix_to_dict(AB)) == AB
    eisenstein = ComplexLattice(F3, [[F3.one()], [Z]])
    back = lattice_from_dict(lattice_to_dict(eisenstein))
    assert back.basis == eisenstein.basis
    assert back.field.conductor == 3


def test_demo_report(heisenberg_report):
    report = heisenberg_report["report"]
    assert report["closure_order"] == 2592
    assert report["scalar_order"] == 6
    assert report["quotient_order"] == 432
    assert report["stabilizer_order"] == 6
    assert report["scalar_generator"] == "1 + z3"
    for j in (1, 2, 3, 4):
        for lattice in ("lambda1", "lambda2"):
            assert report["preserves"][f"C{j}"][lattice] is True
    assert "out of scope" in report["notes"]


def test_demo_generators_are_invertible_and_preserve_lattices():
    generators, lam1, lam2 = heisenberg_generators()
    assert len(generators) == 4
    for g in generators:
        assert not g.determinant().is_zero()
        assert preserves_lattice(g, lam1)
        assert preserves_lattice(g, lam2)
    stab = lattice_scalar_stabilizer(lam1)
    assert stab.order == 6
    assert (stab.generator * stab.generator.conjugate()).is_one()
