"""G-modules with mixed free/torsion underlying group and integer actions.

A module is M = Z^r (+) Z_m1 (+) ... (+) Z_mk with coordinates ordered free
first, then torsion; the G-action is a list of integer matrices acting on
column vectors.  Torsion rows are kept reduced mod their modulus; a torsion
coordinate never maps into a free one.
"""
from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import InputError, PreconditionError
from .groups import FiniteGroup, extend_from_generators

ACTION_FULL_LIMIT = 64
ACTION_SAMPLES = 10000

Matrix = Tuple[Tuple[int, ...], ...]


class TwistedModule:
    """A finitely generated abelian group with a G-action by matrices."""

    def __init__(self, group: FiniteGroup, free_rank: int, moduli: Sequence[int],
                 action: Sequence[Sequence[Sequence[int]]], name: str = "M",
                 validate: bool = True):
        if free_rank < 0:
            raise InputError("free rank must be >= 0")
        for m in moduli:
            if not isinstance(m, int) or m < 2:
                raise InputError("torsion moduli must be integers >= 2")
        self.group = group
        self.free_rank = free_rank
        self.moduli: Tuple[int, ...] = tuple(int(m) for m in moduli)
        self.dim = free_rank + len(self.moduli)
        self.name = name
        if len(action) != group.order:
            raise InputError("action must assign one matrix per group element")
        self.action: List[Matrix] = [self._canonical_matrix(m) for m in action]
        self._hash: Optional[str] = None
        if validate:
            self._validate()

    # ---- canonical forms ----

    def _coord_modulus(self, i: int) -> int:
        return 0 if i < self.free_rank else self.moduli[i - self.free_rank]

    def _canonical_matrix(self, mat: Sequence[Sequence[int]]) -> Matrix:
        if len(mat) != self.dim:
            raise InputError(f"action matrix must be {self.dim}x{self.dim}")
        rows = []
        for i, row in enumerate(mat):
            if len(row) != self.dim:
                raise InputError(f"action matrix must be {self.dim}x{self.dim}")
            m = self._coord_modulus(i)
            rows.append(tuple(int(v) % m if m else int(v) for v in row))
        return tuple(rows)

    def reduce_vector(self, vec: Sequence[int]) -> Tuple[int, ...]:
        if len(vec) != self.dim:
            raise InputError(f"module vector must have length {self.dim}")
        out = []
        for i, v in enumerate(vec):
            m = self._coord_modulus(i)
            out.append(int(v) % m if m else int(v))
        return tuple(out)

    def act(self, g: int, vec: Sequence[int]) -> Tuple[int, ...]:
        mat = self.action[g]
        return self.reduce_vector([sum(mat[i][j] * vec[j] for j in range(self.dim))
                                   for i in range(self.dim)])

    def matrix_product(self, a: Matrix, b: Matrix) -> Matrix:
        d = self.dim
        return self._canonical_matrix(
            [[sum(a[i][k] * b[k][j] for k in range(d)) for j in range(d)]
             for i in range(d)])

    # ---- validation ----

    def _well_defined(self, mat: Matrix) -> bool:
        r = self.free_rank
        for i in range(self.dim):
            mi = self._coord_modulus(i)
            for j in range(r, self.dim):
                mj = self.moduli[j - r]
                v = mat[i][j]
                if mi == 0:
                    if v != 0:
                        return False  # torsion never maps into the free part
                elif (v * mj) % mi:
                    return False
        return True

    def _validate(self) -> None:
        d = self.dim
        ident = self._canonical_matrix(
            [[int(i == j) for j in range(d)] for i in range(d)])
        if self.action[0] != ident:
            raise PreconditionError("action of the identity is not the identity matrix")
        for g, mat in enumerate(self.action):
            if not self._well_defined(mat):
                raise PreconditionError(
                    f"action matrix of element {g} is not a well-defined endomorphism")
        n = self.group.order
        t = self.group.table
        if n <= ACTION_FULL_LIMIT:
            pairs = ((a, b) for a in range(n) for b in range(n))
        else:
            rng = random.Random(0x707)
            pairs = ((rng.randrange(n), rng.randrange(n))
                     for _ in range(ACTION_SAMPLES))
        for a, b in pairs:
            if self.matrix_product(self.action[a], self.action[b]) \
                    != self.action[t[a][b]]:
                raise PreconditionError("action is not a homomorphism to Aut(M)")
        for g in range(n):
            if self.matrix_product(self.action[g], self.action[self.group.inv(g)]) \
                    != ident:
                raise PreconditionError(f"action of element {g} is not invertible")

    # ---- structure ----

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def size(self) -> int:
        if not self.is_finite:
            raise InputError("module is infinite")
        s = 1
        for m in self.moduli:
            s *= m
        return s

    def is_trivial_action(self) -> bool:
        return all(mat == self.action[0] for mat in self.action)

    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.dim

    def add(self, u: Sequence[int], v: Sequence[int]) -> Tuple[int, ...]:
        return self.reduce_vector([a + b for a, b in zip(u, v)])

    def sub(self, u: Sequence[int], v: Sequence[int]) -> Tuple[int, ...]:
        return self.reduce_vector([a - b for a, b in zip(u, v)])

    def scale(self, k: int, v: Sequence[int]) -> Tuple[int, ...]:
        return self.reduce_vector([k * a for a in v])

    def content_hash(self) -> str:
        if self._hash is None:
            h = hashlib.sha256()
            h.update(self.group.content_hash().encode())
            h.update(repr((self.free_rank, self.moduli, self.action)).encode())
            self._hash = h.hexdigest()
        return self._hash

    def __repr__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z{m}" for m in self.moduli]
        return f"TwistedModule({self.name}: {' + '.join(parts) or '0'} over {self.group.name})"


def _as_epsilon(G: FiniteGroup, phi: Union[Sequence[int], "TwistedModule"]) -> Tuple[int, ...]:
    """Normalize a sign datum to the full tuple of +-1 per element."""
    if isinstance(phi, TwistedModule):
        if phi.free_rank == 1 and not phi.moduli:
            return tuple(mat[0][0] for mat in phi.action)
        raise InputError("expected a rank-one sign module")
    vals = [int(v) for v in phi]
    for v in vals:
        if v not in (1, -1):
            raise InputError("sign values must be +1 or -1")
    if len(vals) == G.order:
        eps = vals
        if eps[0] != 1:
            raise PreconditionError("sign of the identity must be +1")
        t = G.table
        for a in range(G.order):
            for b in range(G.order):
                if eps[t[a][b]] != eps[a] * eps[b]:
                    raise PreconditionError("sign map is not a homomorphism")
        return tuple(eps)
    if len(vals) == len(G.generators):
        ext = extend_from_generators(G, vals, lambda x, y: x * y, 1)
        if ext is None:
            raise PreconditionError(
                "sign values on the generators do not extend to a homomorphism")
        return tuple(ext)
    raise InputError(
        f"sign data must have one entry per generator ({len(G.generators)}) "
        f"or per element ({G.order}); got {len(vals)}")


def sign_module(G: FiniteGroup, phi: Union[Sequence[int], TwistedModule]
                ) -> TwistedModule:
    """The G-module Z_phi: free rank one, g acting by the sign phi(g)."""
    eps = _as_epsilon(G, phi)
    mod = TwistedModule(G, 1, (), [((e,),) for e in eps],
                        name="Z_phi" if any(e < 0 for e in eps) else "Z",
                        validate=False)
    mod.epsilon = eps  # type: ignore[attr-defined]
    return mod


def epsilon_of(module_or_phi, G: Optional[FiniteGroup] = None) -> Tuple[int, ...]:
    if isinstance(module_or_phi, TwistedModule):
        return _as_epsilon(module_or_phi.group, module_or_phi)
    if G is None:
        raise InputError("a group is required to interpret raw sign data")
    return _as_epsilon(G, module_or_phi)


def finite_module(G: FiniteGroup, moduli: Sequence[int],
                  action: Union[Dict[int, Sequence], Sequence, None] = None,
                  name: str = "A") -> TwistedModule:
    """Finite coefficient module (+) Z_mi with the action given on generators
    (one matrix per group generator) or on every element."""
    moduli = tuple(int(m) for m in moduli)
    k = len(moduli)
    ident = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    if action is None:
        mats = [ident] * G.order
        return TwistedModule(G, 0, moduli, mats, name=name)
    if isinstance(action, dict):
        if set(action.keys()) != set(range(len(G.generators))):
            raise InputError("action dict must be keyed by generator position 0..k-1")
        action = [action[i] for i in range(len(G.generators))]
    action = list(action)
    probe = TwistedModule(G, 0, moduli, [ident] * G.order, validate=False)
    if len(action) == G.order:
        mats = [probe._canonical_matrix(m) for m in action]
    elif len(action) == len(G.generators):
        gen_mats = [probe._canonical_matrix(m) for m in action]
        mats = extend_from_generators(G, gen_mats, probe.matrix_product, ident)
        if mats is None:
            raise PreconditionError(
                "generator matrices do not extend to a homomorphism to Aut(A)")
    else:
        raise InputError(
            f"action must give one matrix per generator ({len(G.generators)}) "
            f"or per element ({G.order}); got {len(action)}")
    return TwistedModule(G, 0, moduli, mats, name=name)


def mu_module(G: FiniteGroup, phi: Union[Sequence[int], TwistedModule],
              N: int) -> TwistedModule:
    """Z_N with g acting by the sign phi(g): exponents of mu_N-valued cochains."""
    if N < 2:
        raise InputError("mu_module needs N >= 2")
    eps = _as_epsilon(G, phi)
    mod = TwistedModule(G, 0, (N,), [((e % N,),) for e in eps],
                        name=f"Z{N}_phi", validate=False)
    mod.epsilon = eps  # type: ignore[attr-defined]
    return mod


@dataclass(frozen=True)
class DualCharacter:
    """Character of A = (+) Z_mi into mu_N, N = lcm(m_i), stored by exponents.

    The value on a = (a_1..a_k) is zeta_N ** (sum_i exponents[i]*a_i mod N).
    """

    target_order: int
    exponents: Tuple[int, ...]

    def value_on(self, vec: Sequence[int]) -> int:
        if len(vec) != len(self.exponents):
            raise InputError("character applied to a vector of the wrong length")
        return sum(e * v for e, v in zip(self.exponents, vec)) % self.target_order

    @property
    def is_trivial(self) -> bool:
        return all(e % self.target_order == 0 for e in self.exponents)

    def __str__(self) -> str:
        return f"chi{list(self.exponents)}/{self.target_order}"


def _lcm(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        g, a = out, v
        while a:
            g, a = a, g % a
        out = out * v // g
    return out


def dual_characters(moduli: Sequence[int]) -> List[DualCharacter]:
    """All characters of (+) Z_mi, enumerated deterministically.

    Character j of Z_mi sends the i-th generator to zeta_N^(t_i * N/m_i);
    the list runs over all tuples (t_i) in row-major order.
    """
    moduli = tuple(int(m) for m in moduli)
    for m in moduli:
        if m < 2:
            raise InputError("moduli must be >= 2")
    if not moduli:
        return [DualCharacter(1, ())]
    N = _lcm(moduli)
    chars = []
    for ts in itertools.product(*(range(m) for m in moduli)):
        chars.append(DualCharacter(
            N, tuple(t * (N // m) for t, m in zip(ts, moduli))))
    return chars


def is_equivariant_character(chi: DualCharacter, A_action: TwistedModule,
                             phi: Union[Sequence[int], TwistedModule]) -> bool:
    """Whether chi(g*a) = chi(a)^phi(g) for all g in G and a in A.

    Checked on group generators and module generators, which suffices since
    both sides are multiplicative in g and additive in a.
    """
    if A_action.free_rank:
        raise InputError("equivariance is defined for finite coefficient modules")
    if len(chi.exponents) != A_action.dim:
        raise InputError("character does not match the module rank")
    G = A_action.group
    eps = _as_epsilon(G, phi)
    N = chi.target_order
    for g in G.generators:
        mat = A_action.action[g]
        for j in range(A_action.dim):
            lhs = chi.value_on([mat[i][j] for i in range(A_action.dim)])
            rhs = (eps[g] * chi.exponents[j]) % N
            if lhs != rhs:
                return False
    return True
