"""Semilinear matrix groups over cyclotomic fields and complex lattices.

A semilinear matrix is an exact matrix over Q(zeta_n) together with an
automorphism flag (identity or complex conjugation); products apply the left
factor's automorphism to the right factor's entries.  Finite groups of such
maps are enumerated by breadth-first closure with canonical-form hashing, and
lattices (Z-spans of an R-basis of C^d) support exact preservation tests and
scalar stabilizers.
"""

from array import array
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .config import DEFAULT_CONFIG, RunConfig
from .errors import InputError, PreconditionError, ResourceError
from .groups import FiniteGroup
from .intlinalg import LatticeBuilder, bareiss_determinant
from .cyclotomic import (CyclotomicField, CyclotomicNumber,
                         number_from_coeff_list)

__all__ = [
    "SemilinearMatrix",
    "ComplexLattice",
    "ScalarStabilizer",
    "semilinear_compose",
    "semilinear_group_closure",
    "preserves_lattice",
    "lattice_scalar_stabilizer",
    "heisenberg_demo",
    "heisenberg_generators",
    "schroedinger_matrices",
    "matrix_to_dict",
    "matrix_from_dict",
    "lattice_to_dict",
    "lattice_from_dict",
]


class SemilinearMatrix:
    """A d x d matrix over Q(zeta_n) with an automorphism flag.

    The map acts on column vectors by v |-> A * eps(v) where eps is complex
    conjugation when ``conj`` is set; accordingly the product rule is
    (A, eps_A) * (B, eps_B) = (A * eps_A(B), eps_A eps_B).
    """

    __slots__ = ("field", "rows", "conj", "dimension", "_key")

    def __init__(self, field: CyclotomicField, rows: Sequence[Sequence],
                 conj: bool = False):
        d = len(rows)
        if d == 0:
            raise InputError("a matrix needs dimension >= 1")
        parsed = []
        for row in rows:
            if len(row) != d:
                raise InputError("matrix must be square")
            parsed.append(tuple(field.coerce(x) for x in row))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", tuple(parsed))
        object.__setattr__(self, "conj", bool(conj))
        object.__setattr__(self, "dimension", d)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("SemilinearMatrix is immutable")

    # ---- constructors ----

    @classmethod
    def identity(cls, field: CyclotomicField, d: int) -> "SemilinearMatrix":
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for j in range(d)]
                           for i in range(d)])

    @classmethod
    def scalar(cls, field: CyclotomicField, d: int, value,
               conj: bool = False) -> "SemilinearMatrix":
        v = field.coerce(value)
        zero = field.zero()
        return cls(field, [[v if i == j else zero for j in range(d)]
                           for i in range(d)], conj)

    # ---- algebra ----

    def _check_compatible(self, other: "SemilinearMatrix") -> None:
        if not isinstance(other, SemilinearMatrix):
            raise InputError("expected a semilinear matrix")
        if self.dimension != other.dimension:
            raise InputError("semilinear product needs equal dimensions")
        if self.field.conductor != other.field.conductor:
            raise InputError("semilinear product needs one cyclotomic field")

    def compose(self, other: "SemilinearMatrix") -> "SemilinearMatrix":
        """(A, eps_A) * (B, eps_B) = (A * eps_A(B), eps_A eps_B)."""
        self._check_compatible(other)
        d = self.dimension
        rhs = [[(x.conjugate() if self.conj else x) for x in row]
               for row in other.rows]
        zero = self.field.zero()
        out = []
        for i in range(d):
            arow = self.rows[i]
            orow = []
            for j in range(d):
                acc = zero
                for k in range(d):
                    a = arow[k]
                    if not a.is_zero():
                        b = rhs[k][j]
                        if not b.is_zero():
                            acc = acc + a * b
                orow.append(acc)
            out.append(orow)
        return SemilinearMatrix(self.field, out, self.conj != other.conj)

    __mul__ = compose

    def apply(self, vector: Sequence) -> Tuple[CyclotomicNumber, ...]:
        """The image of a column vector: A * eps(v)."""
        if len(vector) != self.dimension:
            raise InputError("vector length does not match the dimension")
        vec = [self.field.coerce(x) for x in vector]
        if self.conj:
            vec = [x.conjugate() for x in vec]
        out = []
        for row in self.rows:
            acc = self.field.zero()
            for a, x in zip(row, vec):
                if not a.is_zero() and not x.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def determinant(self) -> CyclotomicNumber:
        """Determinant of the matrix part, by exact Gaussian elimination."""
        d = self.dimension
        work = [list(row) for row in self.rows]
        det = self.field.one()
        for c in range(d):
            pivot = next((r for r in range(c, d) if not work[r][c].is_zero()),
                         None)
            if pivot is None:
                return self.field.zero()
            if pivot != c:
                work[c], work[pivot] = work[pivot], work[c]
                det = -det
            det = det * work[c][c]
            inv = work[c][c].inverse()
            for r in range(c + 1, d):
                factor = work[r][c] * inv
                if not factor.is_zero():
                    for j in range(c, d):
                        work[r][j] = work[r][j] - factor * work[c][j]
        return det

    def scalar_value(self) -> Optional[CyclotomicNumber]:
        """The scalar s when the matrix part is s * identity, else None."""
        s = self.rows[0][0]
        for i in range(self.dimension):
            for j in range(self.dimension):
                x = self.rows[i][j]
                if i == j:
                    if x != s:
                        return None
                elif not x.is_zero():
                    return None
        return s

    # ---- comparisons ----

    def key(self) -> Tuple:
        """Canonical hashable form (exact coefficients plus the flag)."""
        k = self._key
        if k is None:
            k = (self.conj, self.field.conductor,
                 tuple(x.key() for row in self.rows for x in row))
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other) -> bool:
        return isinstance(other, SemilinearMatrix) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        flag = " * conj" if self.conj else ""
        return f"SemilinearMatrix({self.dimension}x{self.dimension}{flag})"


def semilinear_compose(a: SemilinearMatrix,
                       b: SemilinearMatrix) -> SemilinearMatrix:
    """Product a * b with the left automorphism applied to b's entries."""
    return a.compose(b)


def semilinear_group_closure(gens: Sequence[SemilinearMatrix],
                             max_order: Optional[int] = None,
                             cfg: Optional[RunConfig] = None,
                             name: str = "closure",
                             validate: Optional[bool] = None
                             ) -> Tuple[FiniteGroup, List[SemilinearMatrix]]:
    """Breadth-first closure of the generated group, with its Cayley table.

    Returns the abstract group and the element list; element i of the group
    is the matrix elements[i], with the identity at index 0 and BFS order
    fixed by the generator order.  Exceeding ``max_order`` (default: the
    configured closure budget) raises a resource error.
    """
    cfg = cfg or DEFAULT_CONFIG
    if max_order is None:
        max_order = cfg.max_closure_order
    if not gens:
        raise InputError("closure needs at least one generator")
    field = gens[0].field
    d = gens[0].dimension
    for g in gens:
        if g.field.conductor != field.conductor or g.dimension != d:
            raise InputError("generators must share dimension and field")
        if g.determinant().is_zero():
            raise PreconditionError("closure generators must be invertible")

    ident = SemilinearMatrix.identity(field, d)
    elements: List[SemilinearMatrix] = [ident]
    index: Dict[Tuple, int] = {ident.key(): 0}
    parents: List[Tuple[int, int]] = [(-1, -1)]  # b = elements[p] * gens[gi]
    sigma: List[List[int]] = [[] for _ in gens]  # right-translation tables
    frontier = 0
    while frontier < len(elements):
        x = elements[frontier]
        for gi, g in enumerate(gens):
            y = x.compose(g)
            k = y.key()
            idx = index.get(k)
            if idx is None:
                idx = len(elements)
                if idx >= max_order:
                    raise ResourceError(
                        f"group closure exceeded max_order={max_order}")
                index[k] = idx
                elements.append(y)
                parents.append((frontier, gi))
            sigma[gi].append(idx)
        frontier += 1

    size = len(elements)
    rows: List[array] = [array("i", range(size))]
    for a in range(1, size):
        row = array("i", [0]) * size
        row[0] = a
        for b in range(1, size):
            p, gi = parents[b]
            row[b] = sigma[gi][row[p]]
        rows.append(row)
    gen_indices = [sigma[gi][0] for gi in range(len(gens))]
    if validate is None:
        validate = size <= 512  # the construction itself certifies the axioms
    group = FiniteGroup(rows, generators=gen_indices, name=name,
                        validate=validate)
    return group, elements


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

class ComplexLattice:
    """The Z-span of 2d vectors forming an R-basis of C^d.

    Entries live in an imaginary quadratic cyclotomic field (conductor 3, 4
    or 6), where {1, zeta} is an R-basis of C: real coordinates of lattice
    vectors are then rational and all tests are exact.  The 2d x 2d rational
    coordinate matrix must be nonsingular.
    """

    def __init__(self, field: CyclotomicField,
                 basis: Sequence[Sequence[CyclotomicNumber]]):
        if field.degree != 2 or field.conductor < 3:
            raise InputError(
                "complex lattices need an imaginary quadratic cyclotomic "
                "field (conductor 3, 4 or 6)")
        if not basis:
            raise InputError("lattice basis must be nonempty")
        d = len(basis[0])
        if len(basis) != 2 * d:
            raise InputError(
                f"a rank-{2 * d} lattice in C^{d} needs exactly {2 * d} "
                "basis vectors")
        vecs = []
        for v in basis:
            if len(v) != d:
                raise InputError("basis vectors must share one length")
            vecs.append(tuple(field.coerce(x) for x in v))
        self.field = field
        self.dimension = d
        self.basis: Tuple[Tuple[CyclotomicNumber, ...], ...] = tuple(vecs)
        # column i = real coordinates of basis vector i
        mat = [[self.basis[i][j].coeffs[part] for i in range(2 * d)]
               for j in range(d) for part in (0, 1)]
        self._inverse = _invert_rational(mat)
        if self._inverse is None:
            raise InputError("lattice basis is not R-linearly independent")

    @classmethod
    def from_generators(cls, field: CyclotomicField,
                        generators: Sequence[Sequence]) -> "ComplexLattice":
        """The lattice spanned by any finite generating set (a Z-basis is
        computed by Hermite reduction of the rational coordinate vectors)."""
        if field.degree != 2 or field.conductor < 3:
            raise InputError(
                "complex lattices need an imaginary quadratic cyclotomic "
                "field (conductor 3, 4 or 6)")
        if not generators:
            raise InputError("lattice generators must be nonempty")
        d = len(generators[0])
        coerced = []
        for v in generators:
            if len(v) != d:
                raise InputError("generators must share one length")
            coerced.append([field.coerce(x) for x in v])
        den = 1
        for v in coerced:
            for x in v:
                for c in x.coeffs:
                    den = lcm(den, c.denominator)
        rows = []
        for v in coerced:
            row = []
            for x in v:
                row.append(int(x.coeffs[0] * den))
                row.append(int(x.coeffs[1] * den))
            rows.append(row)
        builder = LatticeBuilder(2 * d)
        builder.add_all(rows)
        if builder.rank() != 2 * d:
            raise InputError(
                "generators do not span a full-rank lattice in C^d")
        basis = []
        for row in builder.basis():
            vec = []
            for j in range(d):
                vec.append(field.element([Fraction(row[2 * j], den),
                                          Fraction(row[2 * j + 1], den)]))
            basis.append(vec)
        return cls(field, basis)

    def coordinates_of(self, vector: Sequence) -> List[Fraction]:
        """Exact rational coordinates of a vector in the lattice basis."""
        if len(vector) != self.dimension:
            raise InputError("vector length does not match the dimension")
        vec = [self.field.coerce(x) for x in vector]
        real = []
        for x in vec:
            real.append(x.coeffs[0])
            real.append(x.coeffs[1])
        return [sum((r * v for r, v in zip(row, real)), Fraction(0))
                for row in self._inverse]

    def contains(self, vector: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.coordinates_of(vector))

    def __repr__(self) -> str:
        return (f"ComplexLattice(C^{self.dimension}, "
                f"Q(zeta_{self.field.conductor}))")


def _invert_rational(mat: List[List[Fraction]]) -> Optional[List[List[Fraction]]]:
    """Inverse of a square rational matrix, or None if singular."""
    n = len(mat)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j))
                                          for j in range(n)]
            for i, row in enumerate(mat)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if work[r][c]), None)
        if pivot is None:
            return None
        work[c], work[pivot] = work[pivot], work[c]
        inv = 1 / work[c][c]
        work[c] = [x * inv for x in work[c]]
        for r in range(n):
            if r != c and work[r][c]:
                f = work[r][c]
                work[r] = [x - f * y for x, y in zip(work[r], work[c])]
    return [row[n:] for row in work]


def preserves_lattice(m: SemilinearMatrix, L: ComplexLattice) -> bool:
    """Whether m maps L onto L: every basis image has integer coordinates
    and the integer coordinate matrix has determinant +-1."""
    if m.dimension != L.dimension:
        raise InputError("matrix and lattice dimensions differ")
    if m.field.conductor != L.field.conductor:
        raise InputError("matrix and lattice fields differ")
    cols = []
    for b in L.basis:
        coords = L.coordinates_of(m.apply(b))
        if any(c.denominator != 1 for c in coords):
            return False
        cols.append([int(c) for c in coords])
    n = len(cols)
    integer_matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
    return abs(bareiss_determinant(integer_matrix)) == 1


@dataclass
class ScalarStabilizer:
    """The cyclic group of roots of unity preserving a lattice."""

    order: int
    generator: CyclotomicNumber
    elements: List[CyclotomicNumber]

    def __repr__(self) -> str:
        return f"ScalarStabilizer(order={self.order}, gen={self.generator!r})"


def lattice_scalar_stabilizer(L: ComplexLattice) -> ScalarStabilizer:
    """All roots of unity mu of the ambient field with mu * L = L.

    Scalars of modulus other than one can never stabilize a lattice, and the
    stabilizer is a subgroup of the cyclic group of roots of unity of the
    field, hence cyclic; the generator returned is the canonical primitive
    root zeta_m for the stabilizer order m.
    """
    field = L.field
    kept = []
    for mu in field.roots_of_unity():
        mat = SemilinearMatrix.scalar(field, L.dimension, mu)
        if preserves_lattice(mat, L):
            kept.append(mu)
    m = len(kept)
    n = field.conductor
    big = lcm(2, n)
    zeta_big = field.zeta() if n % 2 == 0 else -field.zeta((n + 1) // 2)
    generator = zeta_big ** (big // m)
    if generator.key() not in {x.key() for x in kept}:
        raise AssertionError("stabilizer is not the expected cyclic subgroup")
    elements = [generator ** k for k in range(m)]
    if {x.key() for x in elements} != {x.key() for x in kept}:
        raise AssertionError("stabilizer elements do not form a cyclic group")
    return ScalarStabilizer(m, generator, elements)


# ---------------------------------------------------------------------------
# the Heisenberg demo
# ---------------------------------------------------------------------------

def schroedinger_matrices(field: Optional[CyclotomicField] = None
                          ) -> Tuple[SemilinearMatrix, SemilinearMatrix,
                                     SemilinearMatrix]:
    """The three-dimensional representation matrices of the Heisenberg group
    of order 27 (a cyclic basis permutation, a diagonal character matrix, and
    the central scalar zeta_3)."""
    field = field or CyclotomicField(3)
    z = field.zeta()
    one, zero = field.one(), field.zero()
    rho_g = SemilinearMatrix(field, [[zero, zero, one],
                                     [one, zero, zero],
                                     [zero, one, zero]])
    rho_h = SemilinearMatrix(field, [[one, zero, zero],
                                     [zero, z * z, zero],
                                     [zero, zero, z]])
    rho_k = SemilinearMatrix.scalar(field, 3, z)
    return rho_g, rho_h, rho_k


def heisenberg_generators() -> Tuple[List[SemilinearMatrix],
                                     ComplexLattice, ComplexLattice]:
    """The four normalizer generators and the two lattices of the demo."""
    field = CyclotomicField(3)
    z = field.zeta()
    one, zero = field.one(), field.zero()
    u = (1 + 2 * z) / 3
    c1 = SemilinearMatrix(field, [[z, zero, zero],
                                  [zero, z * z, zero],
                                  [zero, zero, one]])
    mu = -u
    c2 = SemilinearMatrix(field, [[mu, mu * z ** 2, mu * z ** 2],
                                  [mu * z ** 2, mu, mu * z ** 2],
                                  [mu * z ** 2, mu * z ** 2, mu]])
    c3 = SemilinearMatrix(field, [[u, u, u],
                                  [u, u * z ** 2, u * z],
                                  [u, u * z, u * z ** 2]])
    c4 = SemilinearMatrix(field, [[one, zero, zero],
                                  [zero, one, zero],
                                  [zero, zero, one]], conj=True)
    gens = [c1, c2, c3, c4]

    std = []
    for j in range(3):
        e = [zero] * 3
        e[j] = one
        std.append(list(e))
        ze = [zero] * 3
        ze[j] = z
        std.append(list(ze))
    lam1 = ComplexLattice.from_generators(field, std + [[u, u, u]])
    lam2 = ComplexLattice.from_generators(field, std + [[u, u, u],
                                                        [u, -u, zero]])
    return gens, lam1, lam2


def heisenberg_demo(cfg: Optional[RunConfig] = None) -> dict:
    """Order-2592 normalizer demo: closure order, scalar subgroup, quotient,
    and per-generator lattice preservation, all by exact arithmetic."""
    cfg = cfg or DEFAULT_CONFIG
    gens, lam1, lam2 = heisenberg_generators()
    names = ["C1", "C2", "C3", "C4"]
    group, elements = semilinear_group_closure(gens, cfg=cfg,
                                               name="N(rho,Lambda)")
    scalars = [m for m in elements
               if not m.conj and m.scalar_value() is not None]
    scalar_gen = max(
        scalars,
        key=lambda mat: (mat.scalar_value().multiplicative_order(cap=group.order)
                         or 0))
    stab = lattice_scalar_stabilizer(lam1)
    preserves = {
        name: {"lambda1": preserves_lattice(g, lam1),
               "lambda2": preserves_lattice(g, lam2)}
        for name, g in zip(names, gens)
    }
    return {
        "closure_order": group.order,
        "scalar_order": len(scalars),
        "scalar_generator": repr(scalar_gen.scalar_value()),
        "quotient_order": group.order // len(scalars),
        "stabilizer_order": stab.order,
        "stabilizer_generator": repr(stab.generator),
        "preserves": preserves,
        "notes": ("degree-1 cohomology of the order-432 quotient and the "
                  "order-2592 group is out of scope at this scale and is "
                  "not reproduced here"),
    }


# ---------------------------------------------------------------------------
# matrix and lattice files
# ---------------------------------------------------------------------------

def matrix_to_dict(m: SemilinearMatrix) -> dict:
    return {"conductor": m.field.conductor,
            "dimension": m.dimension,
            "conj": m.conj,
            "entries": [[x.to_coeff_list() for x in row] for row in m.rows]}


def matrix_from_dict(data: dict) -> SemilinearMatrix:
    if not isinstance(data, dict):
        raise InputError("matrix data must be an object")
    try:
        n = int(data["conductor"])
        entries = data["entries"]
    except (KeyError, TypeError, ValueError):
        raise InputError("matrix data needs 'conductor' and 'entries'")
    field = CyclotomicField(n)
    if not isinstance(entries, list) or not entries:
        raise InputError("matrix entries must be a nonempty list of rows")
    rows = []
    for row in entries:
        rows.append([number_from_coeff_list(field, x) for x in row])
    return SemilinearMatrix(field, rows, bool(data.get("conj", False)))


def lattice_to_dict(L: ComplexLattice) -> dict:
    return {"conductor": L.field.conductor,
            "dimension": L.dimension,
            "basis": [[x.to_coeff_list() for x in vec] for vec in L.basis]}


def lattice_from_dict(data: dict) -> ComplexLattice:
    if not isinstance(data, dict):
        raise InputError("lattice data must be an object")
    try:
        n = int(data["conductor"])
        basis = data["basis"]
    except (KeyError, TypeError, ValueError):
        raise InputError("lattice data needs 'conductor' and 'basis'")
    field = CyclotomicField(n)
    if not isinstance(basis, list) or not basis:
        raise InputError("lattice basis must be a nonempty list")
    vecs = []
    for vec in basis:
        vecs.append([number_from_coeff_list(field, x) for x in vec])
    return ComplexLattice(field, vecs)
