"""Group cohomology over twisted modules via the normalized bar complex.

Cochains in degree n are functions on n-tuples of non-identity elements
(tuples containing the identity implicitly map to zero);  the differential is

  (d tau)(g1..gn) = g1 * tau(g2..gn)
                    + sum_{j=1}^{n-1} (-1)^j tau(g1, .., g_j g_{j+1}, .., gn)
                    + (-1)^n tau(g1..g_{n-1})

with terms dropped when a merged tuple contains the identity.  H^n(G, M) is
computed exactly as X / (im d + L) where X is the integer cocycle lattice and
L the lattice of torsion relations, using sparse Smith normal form.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .config import DEFAULT_CONFIG, RunConfig
from .errors import InputError, PreconditionError, ResourceError
from .gmodules import TwistedModule, mu_module, sign_module, _as_epsilon
from .groups import FiniteGroup
from .intlinalg import (LatticeBuilder, SparseIntMatrix, invert_unimodular,
                        kernel_basis, smith_normal_form, solve_exact,
                        solve_integer_columns)

MAX_DEGREE = 4


def tuple_count(order: int, degree: int) -> int:
    return (order - 1) ** degree


def tuples_iter(order: int, degree: int) -> Iterable[Tuple[int, ...]]:
    """Non-identity tuples in lexicographic order."""
    return itertools.product(range(1, order), repeat=degree)


def tuple_index(t: Sequence[int], order: int) -> int:
    idx = 0
    for g in t:
        idx = idx * (order - 1) + (g - 1)
    return idx


def check_budget(G: FiniteGroup, degree: int, cfg: RunConfig) -> None:
    """Every materialized cochain degree must fit in the configured budget."""
    size = tuple_count(G.order, degree)
    if size > cfg.max_cochain_basis:
        raise ResourceError(
            f"cochain basis in degree {degree} has {size} tuples, exceeding "
            f"the budget max_cochain_basis={cfg.max_cochain_basis}")


class CocycleTable:
    """A normalized n-cochain with values in a twisted module.

    ``values`` maps non-identity tuples to module vectors; omitted tuples and
    tuples containing the identity have value zero.
    """

    def __init__(self, degree: int, module: TwistedModule,
                 values: Dict[Tuple[int, ...], Sequence[int]]):
        if degree < 0:
            raise InputError("cochain degree must be >= 0")
        self.degree = degree
        self.module = module
        n = module.group.order
        canon: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        for t, vec in values.items():
            t = tuple(int(g) for g in t)
            if len(t) != degree:
                raise InputError(f"tuple {t} does not have length {degree}")
            for g in t:
                if not (0 <= g < n):
                    raise InputError(f"tuple entry {g} out of range")
            if 0 in t:
                continue  # normalized: value at identity-containing tuples is 0
            v = module.reduce_vector(vec)
            if any(v):
                canon[t] = v
        self.values = canon

    @property
    def group(self) -> FiniteGroup:
        return self.module.group

    def value(self, t: Sequence[int]) -> Tuple[int, ...]:
        t = tuple(t)
        if 0 in t:
            return self.module.zero()
        return self.values.get(t, self.module.zero())

    # ---- linear structure ----

    def __add__(self, other: "CocycleTable") -> "CocycleTable":
        self._compatible(other)
        keys = set(self.values) | set(other.values)
        return CocycleTable(self.degree, self.module,
                            {t: self.module.add(self.value(t), other.value(t))
                             for t in keys})

    def __sub__(self, other: "CocycleTable") -> "CocycleTable":
        self._compatible(other)
        keys = set(self.values) | set(other.values)
        return CocycleTable(self.degree, self.module,
                            {t: self.module.sub(self.value(t), other.value(t))
                             for t in keys})

    def scale(self, k: int) -> "CocycleTable":
        return CocycleTable(self.degree, self.module,
                            {t: self.module.scale(k, v)
                             for t, v in self.values.items()})

    def _compatible(self, other: "CocycleTable") -> None:
        if self.degree != other.degree or \
                self.module.content_hash() != other.module.content_hash():
            raise InputError("cochains live on different complexes")

    def __eq__(self, other) -> bool:
        return (isinstance(other, CocycleTable) and self.degree == other.degree
                and self.module.content_hash() == other.module.content_hash()
                and self.values == other.values)

    # ---- flat coordinates (tuple-major, module coordinate minor) ----

    def to_flat(self) -> List[int]:
        n = self.group.order
        d = self.module.dim
        flat = [0] * (tuple_count(n, self.degree) * d)
        for t, vec in self.values.items():
            base = tuple_index(t, n) * d
            for i, v in enumerate(vec):
                flat[base + i] = v
        return flat

    @classmethod
    def from_flat(cls, module: TwistedModule, degree: int,
                  flat: Sequence[int]) -> "CocycleTable":
        n = module.group.order
        d = module.dim
        if len(flat) != tuple_count(n, degree) * d:
            raise InputError("flat vector has the wrong length")
        values = {}
        for idx, t in enumerate(tuples_iter(n, degree)):
            vec = flat[idx * d:(idx + 1) * d]
            if any(vec):
                values[t] = vec
        return cls(degree, module, values)

    # ---- differential ----

    def coboundary(self) -> "CocycleTable":
        """d(self), a cochain of degree+1, evaluated in the module (reduced)."""
        G = self.group
        M = self.module
        out: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        n = self.degree
        for t in tuples_iter(G.order, n + 1):
            acc = list(M.act(t[0], self.value(t[1:])))
            sign = 1
            for j in range(1, n + 1):  # inner terms (-1)^j, j = 1..n
                sign = -sign
                merged = t[:j - 1] + (G.mul(t[j - 1], t[j]),) + t[j + 1:]
                mv = self.value(merged)
                for i in range(M.dim):
                    acc[i] += sign * mv[i]
            sign = -sign  # final term carries (-1)^(n+1)
            lv = self.value(t[:-1])
            for i in range(M.dim):
                acc[i] += sign * lv[i]
            vec = M.reduce_vector(acc)
            if any(vec):
                out[t] = vec
        return CocycleTable(n + 1, M, out)

    def is_cocycle(self) -> bool:
        return not self.coboundary().values

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(self.module.content_hash().encode())
        h.update(repr((self.degree, sorted(self.values.items()))).encode())
        return h.hexdigest()

    def __repr__(self) -> str:
        return (f"CocycleTable(degree={self.degree}, module={self.module.name}, "
                f"nonzero={len(self.values)})")


def coboundary_matrix(G: FiniteGroup, M: TwistedModule, degree: int,
                      cfg: Optional[RunConfig] = None) -> SparseIntMatrix:
    """Integer matrix of d : C^(degree-1) -> C^degree (flat coordinates).

    Rows of torsion coordinates are only meaningful modulo the coordinate
    modulus (the relation lattice m_i * e_(t,i) is adjoined wherever the
    matrix is used); their entries are therefore stored as symmetric
    representatives in (-m/2, m/2], which keeps the matrices unit-rich and
    the Smith reduction free of gcd mixing.
    """
    cfg = cfg or DEFAULT_CONFIG
    if degree < 1:
        raise InputError("coboundary_matrix needs degree >= 1")
    if M.group is not G and M.group.content_hash() != G.content_hash():
        raise InputError("module is not over the given group")
    check_budget(G, degree, cfg)
    n = degree
    order = G.order
    d = M.dim
    rows = tuple_count(order, n) * d
    cols = tuple_count(order, n - 1) * d
    mat = SparseIntMatrix(rows, cols)
    data = mat.data

    def bump(r: int, c: int, v: int) -> None:
        row = data.setdefault(r, {})
        nv = row.get(c, 0) + v
        if nv:
            row[c] = nv
        else:
            del row[c]

    last_sign = -1 if n % 2 else 1
    for t in tuples_iter(order, n):
        rbase = tuple_index(t, order) * d
        # first term: g1 * tau(g2..gn)
        cbase = tuple_index(t[1:], order) * d
        act = M.action[t[0]]
        for i in range(d):
            for j in range(d):
                v = act[i][j]
                if v:
                    bump(rbase + i, cbase + j, v)
        # inner terms (-1)^j at merged tuples
        sign = 1
        for j in range(1, n):
            sign = -sign
            merged = G.mul(t[j - 1], t[j])
            if merged == 0:
                continue  # normalized complex: that value is 0
            s = t[:j - 1] + (merged,) + t[j + 1:]
            cbase = tuple_index(s, order) * d
            for i in range(d):
                bump(rbase + i, cbase + i, sign)
        # last term: (-1)^n tau(g1..g_{n-1})
        cbase = tuple_index(t[:-1], order) * d
        for i in range(d):
            bump(rbase + i, cbase + i, last_sign)
    if M.moduli:
        free = M.free_rank
        for r, row in data.items():
            i = r % d
            if i < free:
                continue
            m = M.moduli[i - free]
            half = m // 2
            for c in list(row):
                v = row[c] % m
                if v > half:
                    v -= m
                if v:
                    row[c] = v
                else:
                    del row[c]
    for r in [r for r, row in data.items() if not row]:
        del data[r]
    return mat


def _cocycle_lattice_basis(G: FiniteGroup, M: TwistedModule, n: int,
                           cfg: RunConfig) -> List[List[int]]:
    """Canonical basis (HNF rows) of X = {x in Z^F : d(x) lies in the
    degree-(n+1) relation lattice}."""
    order = G.order
    d = M.dim
    free = M.free_rank
    k = len(M.moduli)
    D = coboundary_matrix(G, M, n + 1, cfg)
    F = D.cols
    if k:
        up_tuples = tuple_count(order, n + 1)
        B = SparseIntMatrix(D.rows, F + up_tuples * k,
                            {r: dict(row) for r, row in D.data.items()})
        for idx in range(up_tuples):
            for ci, m in enumerate(M.moduli):
                B.data.setdefault(idx * d + free + ci, {})[F + idx * k + ci] = m
        raw = [vec[:F] for vec in kernel_basis(B)]
    else:
        raw = [list(vec) for vec in kernel_basis(D)]
    lb = LatticeBuilder(F)
    lb.add_all(raw)
    return lb.basis()


class CohomologyGroup:
    """H^n(G, M) with invariant factors, representatives and class coordinates.

    invariants are the nontrivial invariant factors (each > 1) in divisibility
    order; representatives[i] generates the i-th cyclic summand.
    """

    def __init__(self, group: FiniteGroup, module: TwistedModule, degree: int,
                 diag_full: Tuple[int, ...], kb_rows: List[List[int]],
                 u_dense: List[List[int]], representatives: List[CocycleTable],
                 label: str = ""):
        self.group = group
        self.module = module
        self.degree = degree
        self.diag_full = tuple(diag_full)
        self.kb_rows = kb_rows
        self.u_dense = u_dense
        self.invariants = tuple(d for d in diag_full if d > 1)
        self.representatives = representatives
        self.label = label or f"H^{degree}({group.name}, {module.name})"

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariants

    def zero_coordinates(self) -> Tuple[int, ...]:
        return (0,) * len(self.invariants)

    def coordinates(self, table: CocycleTable) -> Tuple[int, ...]:
        """SNF class coordinates of a cocycle: i-th entry is mod invariants[i]."""
        if table.degree != self.degree:
            raise InputError("cocycle degree does not match the cohomology group")
        if table.module.content_hash() != self.module.content_hash():
            raise InputError("cocycle module does not match the cohomology group")
        if not table.is_cocycle():
            raise PreconditionError("table is not a cocycle")
        if not self.invariants:
            return ()
        flat = table.to_flat()
        s = len(self.kb_rows)
        A = [[self.kb_rows[j][i] for j in range(s)] for i in range(len(flat))]
        sol = solve_integer_columns(A, [[v] for v in flat], "class coordinates")
        c = [sol[i][0] for i in range(s)]
        z = [sum(self.u_dense[i][k] * c[k] for k in range(s)) for i in range(s)]
        return tuple(z[i] % self.diag_full[i]
                     for i in range(s) if self.diag_full[i] > 1)

    def representative(self, coords: Sequence[int]) -> CocycleTable:
        """A cocycle in the class with the given SNF coordinates."""
        if len(coords) != len(self.invariants):
            raise InputError("coordinate tuple has the wrong length")
        out = CocycleTable(self.degree, self.module, {})
        for k, rep in zip(coords, self.representatives):
            if k:
                out = out + rep.scale(k)
        return out

    def describe(self) -> str:
        if not self.invariants:
            return "trivial"
        return " x ".join(f"Z{d}" for d in self.invariants)

    def __repr__(self) -> str:
        return f"CohomologyGroup({self.label} = {self.describe()})"


_CACHE: Dict[Tuple[str, str, int], CohomologyGroup] = {}


def _disk_cache_path(cfg: RunConfig, key: Tuple[str, str, int]) -> Optional[str]:
    if not cfg.cache_dir:
        return None
    return os.path.join(cfg.cache_dir, f"coh_{key[0][:16]}_{key[1][:16]}_{key[2]}.json")


def _to_cache_dict(result: CohomologyGroup) -> dict:
    return {
        "schema": "twisted-schur/1",
        "degree": result.degree,
        "diag_full": list(result.diag_full),
        "kb_rows": [list(r) for r in result.kb_rows],
        "u_dense": [list(r) for r in result.u_dense],
        "representatives": [rep.to_flat() for rep in result.representatives],
    }


def _from_cache_dict(G: FiniteGroup, M: TwistedModule, n: int,
                     payload: dict) -> Optional[CohomologyGroup]:
    try:
        if payload.get("schema") != "twisted-schur/1" or payload["degree"] != n:
            return None
        reps = [CocycleTable.from_flat(M, n, flat)
                for flat in payload["representatives"]]
        return CohomologyGroup(G, M, n, tuple(payload["diag_full"]),
                               [list(r) for r in payload["kb_rows"]],
                               [list(r) for r in payload["u_dense"]], reps)
    except (KeyError, TypeError, ValueError, InputError):
        return None


def cohomology_group(G: FiniteGroup, M: TwistedModule, n: int,
                     cfg: Optional[RunConfig] = None,
                     label: str = "") -> CohomologyGroup:
    """Compute H^n(G, M) exactly.  Results are cached by content hashes."""
    cfg = cfg or DEFAULT_CONFIG
    if not 1 <= n <= MAX_DEGREE:
        raise InputError(f"cohomology degree must be between 1 and {MAX_DEGREE}")
    key = (G.content_hash(), M.content_hash(), n)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    path = _disk_cache_path(cfg, key)
    if path and os.path.exists(path):
        try:
            with open(path) as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError):
            payload = None
        if payload:
            result = _from_cache_dict(G, M, n, payload)
            if result is not None:
                if label:
                    result.label = label
                _CACHE[key] = result
                return result

    check_budget(G, n + 1, cfg)
    basis = _cocycle_lattice_basis(G, M, n, cfg)
    s = len(basis)
    order = G.order
    d = M.dim
    free = M.free_rank
    if s == 0:
        result = CohomologyGroup(G, M, n, (), [], [], [], label)
    else:
        F = tuple_count(order, n) * d
        # generators of the trivial classes: coboundaries and torsion relations
        D_down = coboundary_matrix(G, M, n, cfg)
        img_cols: List[List[int]] = [D_down.column(c) for c in range(D_down.cols)]
        if M.moduli:
            for idx in range(tuple_count(order, n)):
                for ci, m in enumerate(M.moduli):
                    vec = [0] * F
                    vec[idx * d + free + ci] = m
                    img_cols.append(vec)
        A = [[basis[j][i] for j in range(s)] for i in range(F)]
        B = [[col[i] for col in img_cols] for i in range(F)]
        Y = solve_integer_columns(A, B, "image lattice in cocycle coordinates")
        snf = smith_normal_form(SparseIntMatrix.from_dense(Y), need_u=True,
                                need_v=False)
        if snf.rank < s:
            raise PreconditionError(
                "cohomology group has unexpected free rank; the module action "
                "does not define a finite cohomology problem")
        diag_full = snf.diagonal
        u_dense = snf.U.to_dense()
        u_inv = invert_unimodular(snf.U).to_dense()
        reps = []
        for i in range(s):
            if diag_full[i] > 1:
                vec = [sum(u_inv[k][i] * basis[k][j] for k in range(s))
                       for j in range(F)]
                rep = CocycleTable.from_flat(M, n, vec)
                if not rep.is_cocycle():
                    raise AssertionError("representative failed the cocycle check")
                reps.append(rep)
        result = CohomologyGroup(G, M, n, diag_full, basis, u_dense, reps, label)
        # internal consistency: representative i has coordinates e_i
        for i, rep in enumerate(reps):
            expect = tuple(1 if j == i else 0 for j in range(len(reps)))
            if result.coordinates(rep) != expect:
                raise AssertionError("representative coordinates are inconsistent")
    if label:
        result.label = label
    _CACHE[key] = result
    if path:
        try:
            os.makedirs(cfg.cache_dir, exist_ok=True)
            tmp = path + ".tmp"
            with open(tmp, "w") as fh:
                json.dump(_to_cache_dict(result), fh)
            os.replace(tmp, path)
        except OSError:
            pass
    return result


def twisted_multiplier(G: FiniteGroup,
                       phi: Union[Sequence[int], TwistedModule],
                       cfg: Optional[RunConfig] = None) -> CohomologyGroup:
    """H^2(G, C*_phi) computed as H^3(G, Z_phi)."""
    sign = phi if isinstance(phi, TwistedModule) else sign_module(G, phi)
    return cohomology_group(G, sign, 3, cfg,
                            label=f"H^2({G.name}, C*_phi) ~ H^3({G.name}, Z_phi)")


def h2_class_representatives(G: FiniteGroup, M: TwistedModule,
                             cfg: Optional[RunConfig] = None
                             ) -> List[CocycleTable]:
    """One normalized 2-cocycle per class of H^2(G, M), in lexicographic order
    of SNF class coordinates."""
    coh = cohomology_group(G, M, 2, cfg)
    out = []
    for coords in itertools.product(*(range(d) for d in coh.invariants)):
        out.append(coh.representative(coords))
    return out


def _mu_cocycle_context(alpha: CocycleTable,
                        phi: Optional[Union[Sequence[int], TwistedModule]]):
    M = alpha.module
    if M.free_rank != 0 or len(M.moduli) != 1:
        raise InputError("alpha must take values in a single Z_N (mu_N exponents)")
    N = M.moduli[0]
    G = M.group
    if phi is None:
        eps = getattr(M, "epsilon", None)
        if eps is None:
            raise InputError("phi is required when the module does not carry signs")
    else:
        eps = _as_epsilon(G, phi)
        for g in range(G.order):
            if (eps[g] - M.action[g][0][0]) % N:
                raise InputError("phi disagrees with the action on the values of alpha")
    return G, N, tuple(eps)


def bockstein_class(alpha: CocycleTable,
                    phi: Optional[Union[Sequence[int], TwistedModule]] = None,
                    cfg: Optional[RunConfig] = None) -> Tuple[int, ...]:
    """Class of a mu_N-valued 2-cocycle in H^2(G, C*_phi) = H^3(G, Z_phi).

    Lifts the exponents to Z, takes the twisted coboundary and divides by N;
    the result is independent of the lift and of the cocycle's class
    representative.
    """
    cfg = cfg or DEFAULT_CONFIG
    if alpha.degree != 2:
        raise InputError("bockstein_class expects a 2-cocycle")
    G, N, eps = _mu_cocycle_context(alpha, phi)
    if not alpha.is_cocycle():
        raise PreconditionError("alpha is not a twisted 2-cocycle mod N")
    H3 = twisted_multiplier(G, list(eps), cfg)

    def av(t: Tuple[int, int]) -> int:
        if 0 in t:
            return 0
        v = alpha.values.get(t)
        return v[0] if v else 0

    tbl = G.table
    b_values: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for t in tuples_iter(G.order, 3):
        g1, g2, g3 = t
        total = (eps[g1] * av((g2, g3)) - av((tbl[g1][g2], g3))
                 + av((g1, tbl[g2][g3])) - av((g1, g2)))
        if total % N:
            raise AssertionError("Bockstein numerator not divisible by N")
        if total:
            b_values[t] = (total // N,)
    b = CocycleTable(3, H3.module, b_values)
    if not b.is_cocycle():
        raise AssertionError("Bockstein image failed the cocycle check")
    return H3.coordinates(b)


def solve_coboundary(alpha: CocycleTable,
                     phi: Optional[Union[Sequence[int], TwistedModule]] = None,
                     cfg: Optional[RunConfig] = None
                     ) -> Optional[Dict[int, Fraction]]:
    """A 1-cochain tau into C* (fractional exponents g -> tau_g, meaning
    exp(2 pi i tau_g)) with d_phi(tau) = alpha, or None if alpha is not a
    twisted coboundary over C*.

    Denominators of the returned exponents divide N * d_max where d_max is the
    largest invariant factor of the degree-2 coboundary matrix.
    """
    cfg = cfg or DEFAULT_CONFIG
    if alpha.degree != 2:
        raise InputError("solve_coboundary expects a 2-cocycle")
    G, N, eps = _mu_cocycle_context(alpha, phi)
    cls = bockstein_class(alpha, list(eps), cfg)
    if any(cls):
        return None
    order = G.order
    sign = sign_module(G, list(eps))

    def av(t: Tuple[int, int]) -> int:
        if 0 in t:
            return 0
        v = alpha.values.get(t)
        return v[0] if v else 0

    D2 = coboundary_matrix(G, sign, 2, cfg)
    snf = smith_normal_form(D2, need_u=True, need_v=True)
    target = [Fraction(av(t), N) for t in tuples_iter(order, 2)]
    # w = U * target; rows past the rank must be integral (solvability)
    w = [Fraction(0)] * D2.rows
    for r, row in snf.U.data.items():
        w[r] = sum(v * target[c] for c, v in row.items())
    z = [Fraction(0)] * D2.cols
    for i, dno in enumerate(snf.diagonal):
        z[i] = w[i] / dno
    for i in range(snf.rank, D2.rows):
        if w[i].denominator != 1:
            raise AssertionError("solvability violated despite vanishing Bockstein")
    y = [Fraction(0)] * D2.cols
    for r, row in snf.V.data.items():
        y[r] = sum(v * z[c] for c, v in row.items() if c < snf.rank)
    tau = {g: y[tuple_index((g,), order)] % 1 for g in range(1, order)}
    # verify: eps(g) tau(h) - tau(gh) + tau(g) = a(g,h)/N  (mod 1)
    for g in range(1, order):
        for h in range(1, order):
            gh = G.table[g][h]
            lhs = eps[g] * tau[h] - (tau[gh] if gh else 0) + tau[g]
            if (lhs - Fraction(av((g, h)), N)) % 1 != 0:
                raise AssertionError("coboundary witness failed verification")
    return tau
