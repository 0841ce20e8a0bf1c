"""Finite groups as explicit Cayley tables with deterministic element order.

Conventions, fixed once and used everywhere:

* elements are integers 0..n-1 and index 0 is the identity;
* ``table[a][b]`` is the product a*b;
* groups built from generators order their elements by breadth-first closure
  (identity first, then products in discovery order), so identical generator
  input yields an identical table;
* direct products index (a, b) as a*|H| + b (row-major).
"""
from __future__ import annotations

import hashlib
import random
from array import array
from math import gcd
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .config import DEFAULT_CONFIG, RunConfig
from .errors import InputError, PreconditionError, ResourceError

ASSOC_FULL_LIMIT = 64     # full associativity check up to this order
ASSOC_SAMPLES = 10000     # random triples above it


def _factorize(n: int) -> Dict[int, int]:
    fac: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fac[d] = fac.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        fac[n] = fac.get(n, 0) + 1
    return fac


def _int_log(p: int, n: int) -> int:
    k = 0
    while p ** k < n:
        k += 1
    if p ** k != n:
        raise AssertionError(f"{n} is not a power of {p}")
    return k


def abelian_invariants_from_orders(orders: Sequence[int]) -> Tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an abelian group from its element orders.

    A finite abelian group is determined by how many elements satisfy x^m = 1
    for each m; per prime p the counts give the conjugate of the partition of
    p-exponents.
    """
    n = len(orders)
    if n == 1:
        return ()
    parts: Dict[int, List[int]] = {}
    for p, e in _factorize(n).items():
        # s_k = log_p #{x : x^(p^k) = 1}
        s = [_int_log(p, sum(1 for o in orders if (p ** k) % o == 0))
             for k in range(e + 1)]
        c = [s[k] - s[k - 1] for k in range(1, e + 1)]  # #parts >= k
        lam = []
        for j in range(1, (c[0] if c else 0) + 1):
            lam.append(max(k + 1 for k in range(len(c)) if c[k] >= j))
        parts[p] = sorted(lam, reverse=True)  # descending p-exponents
    width = max(len(v) for v in parts.values())
    factors_desc = []
    for i in range(width):
        d = 1
        for p, lam in parts.items():
            if i < len(lam):
                d *= p ** lam[i]
        factors_desc.append(d)
    return tuple(reversed(factors_desc))  # ascending divisibility chain


@dataclass(frozen=True)
class GroupFingerprint:
    """Cheap isomorphism invariants used for filtering and reporting."""

    order: int
    exponent: int
    abelianization: Tuple[int, ...]
    center_order: int
    derived_order: int
    class_sizes: Tuple[int, ...]
    order_histogram: Tuple[Tuple[int, int], ...]

    def key(self) -> tuple:
        return (self.order, self.exponent, self.abelianization, self.center_order,
                self.derived_order, self.class_sizes, self.order_histogram)

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "exponent": self.exponent,
            "abelianization": list(self.abelianization),
            "center_order": self.center_order,
            "derived_order": self.derived_order,
            "class_sizes": list(self.class_sizes),
            "order_histogram": [list(p) for p in self.order_histogram],
        }


class FiniteGroup:
    """Immutable finite group given by its Cayley table."""

    def __init__(self, table: Sequence[Sequence[int]],
                 generators: Optional[Sequence[int]] = None,
                 name: str = "G", validate: bool = True):
        n = len(table)
        if n == 0:
            raise InputError("a group has at least one element")
        self.order = n
        self.table: List[array] = []
        for r, row in enumerate(table):
            if len(row) != n:
                raise InputError(f"Cayley table row {r} has wrong length")
            arow = array("i", row)
            for v in arow:
                if not (0 <= v < n):
                    raise InputError(f"Cayley table entry out of range in row {r}")
            self.table.append(arow)
        self.name = name
        if validate:
            self._validate_structure()
        self.inverse: List[int] = [self.table[a].index(0) for a in range(n)]
        if generators is None:
            generators = self._greedy_generators()
        else:
            generators = [int(g) for g in generators]
            for g in generators:
                if not (0 <= g < n):
                    raise InputError("generator index out of range")
            if len(self._closure(generators)) != n:
                raise PreconditionError("given generators do not generate the group")
        self.generators: List[int] = list(generators)
        self._fingerprint: Optional[GroupFingerprint] = None
        self._hash: Optional[str] = None

    # ---- construction-time checks ----

    def _validate_structure(self) -> None:
        n = self.order
        full = set(range(n))
        for a in range(n):
            if self.table[0][a] != a or self.table[a][0] != a:
                raise PreconditionError("index 0 is not a two-sided identity")
        for a in range(n):
            if set(self.table[a]) != full:
                raise PreconditionError(f"row {a} is not a permutation")
        cols = [set() for _ in range(n)]
        for a in range(n):
            row = self.table[a]
            for b in range(n):
                cols[b].add(row[b])
        for b in range(n):
            if cols[b] != full:
                raise PreconditionError(f"column {b} is not a permutation")
        for a in range(n):
            if 0 not in self.table[a]:
                raise PreconditionError(f"element {a} has no inverse")
        t = self.table
        if n <= ASSOC_FULL_LIMIT:
            for a in range(n):
                ta = t[a]
                for b in range(n):
                    tab = ta[b]
                    tb = t[b]
                    for c in range(n):
                        if t[tab][c] != ta[tb[c]]:
                            raise PreconditionError("multiplication is not associative")
        else:
            rng = random.Random(0xA55)
            for _ in range(ASSOC_SAMPLES):
                a, b, c = (rng.randrange(n) for _ in range(3))
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise PreconditionError("multiplication is not associative")

    # ---- basic operations ----

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverse[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        result, base = 0, a
        while k:
            if k & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            k >>= 1
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def element_orders(self) -> List[int]:
        return [self.element_order(a) for a in range(self.order)]

    def exponent(self) -> int:
        e = 1
        for o in set(self.element_orders()):
            e = e * o // _gcd(e, o)
        return e

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def _closure(self, seeds: Sequence[int]) -> List[int]:
        """Subgroup generated by seeds, as a sorted element list (BFS)."""
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in seeds:
                    y = self.table[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def subgroup_closure(self, seeds: Sequence[int]) -> List[int]:
        return self._closure(list(seeds))

    def _greedy_generators(self) -> List[int]:
        gens: List[int] = []
        have = {0}
        while len(have) < self.order:
            x = next(i for i in range(self.order) if i not in have)
            gens.append(x)
            have = set(self._closure(gens))
        return gens

    # ---- structural invariants ----

    def center(self) -> List[int]:
        t = self.table
        return [a for a in range(self.order)
                if all(t[a][b] == t[b][a] for b in range(self.order))]

    def conjugacy_classes(self) -> List[List[int]]:
        seen = [False] * self.order
        classes = []
        for x in range(self.order):
            if seen[x]:
                continue
            orbit = {self.conj(g, x) for g in range(self.order)}
            for y in orbit:
                seen[y] = True
            classes.append(sorted(orbit))
        return classes

    def derived_subgroup(self) -> List[int]:
        t = self.table
        comms = set()
        for a in range(self.order):
            for b in range(self.order):
                comms.add(t[t[a][b]][t[self.inverse[a]][self.inverse[b]]])
        return self._closure(sorted(comms))

    def coset_labels(self, subgroup: Sequence[int]) -> List[int]:
        """Left-coset label of each element: the minimal member of its coset."""
        labels = [-1] * self.order
        for x in range(self.order):
            if labels[x] >= 0:
                continue
            coset = sorted(self.table[x][d] for d in subgroup)
            lead = coset[0]
            for y in coset:
                labels[y] = lead
        return labels

    def quotient_element_orders(self, normal_subgroup: Sequence[int]) -> List[int]:
        labels = self.coset_labels(normal_subgroup)
        orders = []
        for r in sorted(set(labels)):
            k, x = 1, r
            while labels[x] != 0:
                x = self.table[x][r]
                k += 1
            orders.append(k)
        return orders

    def abelianization_invariants(self) -> Tuple[int, ...]:
        return abelian_invariants_from_orders(
            self.quotient_element_orders(self.derived_subgroup()))

    def content_hash(self) -> str:
        if self._hash is None:
            h = hashlib.sha256()
            h.update(str(self.order).encode())
            for row in self.table:
                h.update(row.tobytes())
            self._hash = h.hexdigest()
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def fingerprint(G: FiniteGroup) -> GroupFingerprint:
    """Isomorphism-invariant profile of G (cached on the group)."""
    if G._fingerprint is None:
        orders = G.element_orders()
        exp = 1
        for o in set(orders):
            exp = exp * o // _gcd(exp, o)
        hist = tuple(sorted(Counter(orders).items()))
        G._fingerprint = GroupFingerprint(
            order=G.order,
            exponent=exp,
            abelianization=G.abelianization_invariants(),
            center_order=len(G.center()),
            derived_order=len(G.derived_subgroup()),
            class_sizes=tuple(sorted(len(c) for c in G.conjugacy_classes())),
            order_histogram=hist,
        )
    return G._fingerprint


# ---------------------------------------------------------------------------
# deterministic closure of abstract generators into a Cayley table
# ---------------------------------------------------------------------------

def closure_table(generators: Sequence, compose: Callable, identity,
                  max_order: int, name: str = "G"):
    """BFS-close ``generators`` under ``compose`` and build the Cayley table.

    Elements must be hashable and equal iff identical as group elements.
    Only |G|*#gens compositions are performed; the rest of the table is filled
    by the parent decomposition b = parent(b)*gen, so
    a*b = (a*parent(b))*gen comes from earlier columns.

    Returns (elements, table, generator_indices).
    """
    elems = [identity]
    index = {identity: 0}
    parent: List[Tuple[int, int]] = [(-1, -1)]  # (parent index, generator slot)
    gencol: List[List[int]] = []  # gencol[i][k] = index of elems[i]*generators[k]
    i = 0
    while i < len(elems):
        cols = []
        for k, g in enumerate(generators):
            x = compose(elems[i], g)
            j = index.get(x)
            if j is None:
                j = len(elems)
                if j >= max_order:
                    raise ResourceError(
                        f"closure exceeded the configured maximum order {max_order}")
                index[x] = j
                elems.append(x)
                parent.append((i, k))
            cols.append(j)
        gencol.append(cols)
        i += 1
    n = len(elems)
    zero_row = array("i", [0]) * n
    table: List[array] = []
    # column 0 is multiplication by the identity
    for a in range(n):
        row = array("i", zero_row)
        row[0] = a
        table.append(row)
    for b in range(1, n):
        p, k = parent[b]
        for a in range(n):
            table[a][b] = gencol[table[a][p]][k]
    gen_indices = []
    for g in generators:
        gi = index.get(g)
        if gi is None:
            raise AssertionError("generator missing from its own closure")
        gen_indices.append(gi)
    return elems, table, gen_indices


def _group_from_model(generators: Sequence, compose: Callable, identity,
                      max_order: int, name: str) -> FiniteGroup:
    elems, table, gen_idx = closure_table(generators, compose, identity,
                                          max_order, name)
    gens = [g for g in gen_idx if g != 0]
    G = FiniteGroup(table, generators=gens, name=name)
    G.model_elements = elems  # type: ignore[attr-defined]
    return G


def from_permutation_generators(perms: Sequence[Sequence[int]],
                                cfg: Optional[RunConfig] = None,
                                name: str = "permgroup") -> FiniteGroup:
    """Group generated by zero-based one-line permutations of {0..m-1}."""
    cfg = cfg or DEFAULT_CONFIG
    if perms:
        m = len(perms[0])
        tperms = []
        for p in perms:
            tp = tuple(int(x) for x in p)
            if len(tp) != m:
                raise InputError("permutations must act on the same number of points")
            if sorted(tp) != list(range(m)):
                raise InputError(f"{list(p)} is not a permutation of 0..{m-1}")
            tperms.append(tp)
    else:
        m, tperms = 1, []
    ident = tuple(range(m))

    def compose(p, q):  # (p*q)(i) = p[q[i]]
        return tuple(p[i] for i in q)

    return _group_from_model(tperms, compose, ident, cfg.max_group_order, name)


def cyclic_group(n: int, cfg: Optional[RunConfig] = None) -> FiniteGroup:
    if n < 1:
        raise InputError("cyclic order must be >= 1")
    gens = [1] if n > 1 else []
    return _group_from_model(gens, lambda a, b: (a + b) % n, 0,
                             (cfg or DEFAULT_CONFIG).max_group_order, f"Z{n}")


def dihedral_group(n: int, cfg: Optional[RunConfig] = None) -> FiniteGroup:
    """Dihedral group of order 2n, generators [s, t] with s^2 = t^n = 1,
    s t s^-1 = t^-1.  Elements are s^j t^i."""
    if n < 1:
        raise InputError("dihedral parameter must be >= 1")

    def compose(x, y):
        j1, i1 = x
        j2, i2 = y
        return ((j1 + j2) % 2, ((i1 if j2 == 0 else -i1) + i2) % n)

    return _group_from_model([(1, 0), (0, 1 % n)], compose, (0, 0),
                             (cfg or DEFAULT_CONFIG).max_group_order, f"D{n}")


def generalized_quaternion_group(order: int, cfg: Optional[RunConfig] = None
                                 ) -> FiniteGroup:
    """Generalized quaternion group Q_order, order a power of two >= 8.

    Generators [a, b] with a^(order/2) = 1, b^2 = a^(order/4), b a b^-1 = a^-1.
    """
    if order < 8 or order & (order - 1):
        raise InputError("generalized quaternion order must be a power of two >= 8")
    n2 = order // 2

    def compose(x, y):
        i1, j1 = x
        i2, j2 = y
        i = i1 + (i2 if j1 == 0 else -i2)
        if j1 and j2:
            i += n2 // 2
        return (i % n2, (j1 + j2) % 2)

    return _group_from_model([(1, 0), (0, 1)], compose, (0, 0),
                             (cfg or DEFAULT_CONFIG).max_group_order, f"Q{order}")


def semidihedral_group(order: int, cfg: Optional[RunConfig] = None) -> FiniteGroup:
    """Semidihedral group of 2-power order >= 16: b a b^-1 = a^(order/4 - 1)."""
    if order < 16 or order & (order - 1):
        raise InputError("semidihedral order must be a power of two >= 16")
    n2 = order // 2
    m = n2 // 2 - 1

    def compose(x, y):
        i1, j1 = x
        i2, j2 = y
        return ((i1 + i2 * (m if j1 else 1)) % n2, (j1 + j2) % 2)

    return _group_from_model([(1, 0), (0, 1)], compose, (0, 0),
                             (cfg or DEFAULT_CONFIG).max_group_order, f"SD{order}")


def metacyclic_group(m: int, r: int, k: int,
                     cfg: Optional[RunConfig] = None) -> FiniteGroup:
    """Metacyclic group <a, b | a^m = b^r = 1, b a b^-1 = a^k> of order m*r."""
    if m < 2 or r < 2 or not 0 < k < m:
        raise InputError("metacyclic parameters require m, r >= 2 and 0 < k < m")
    if gcd(k, m) != 1 or pow(k, r, m) != 1:
        raise InputError("metacyclic twist k must be a unit mod m with k^r = 1")

    def compose(x, y):
        i1, j1 = x
        i2, j2 = y
        return ((i1 + i2 * pow(k, j1, m)) % m, (j1 + j2) % r)

    return _group_from_model([(1, 0), (0, 1)], compose, (0, 0),
                             (cfg or DEFAULT_CONFIG).max_group_order,
                             f"MC({m},{r},{k})")


def heisenberg27_group(cfg: Optional[RunConfig] = None) -> FiniteGroup:
    """Heisenberg group of order 27 (exponent 3), generators [g, h, k] with
    [g, h] = k central."""

    def compose(x, y):
        return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3,
                (x[2] + y[2] + x[0] * y[1]) % 3)

    return _group_from_model([(1, 0, 0), (0, 1, 0), (0, 0, 1)], compose,
                             (0, 0, 0), (cfg or DEFAULT_CONFIG).max_group_order,
                             "He3")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Direct product with element (a, b) at index a*|H| + b."""
    n, m = G.order, H.order
    zero_row = array("i", [0]) * (n * m)
    table = []
    for a in range(n):
        ga = G.table[a]
        for b in range(m):
            hb = H.table[b]
            row = array("i", zero_row)
            for c in range(n):
                base = ga[c] * m
                off = c * m
                for d in range(m):
                    row[off + d] = base + hb[d]
            table.append(row)
    gens = [g * m for g in G.generators] + list(H.generators)
    return FiniteGroup(table, generators=gens, name=f"{G.name} x {H.name}",
                       validate=False)


_FAMILIES = ("cyclic", "dihedral", "generalized_quaternion", "semidihedral",
             "heisenberg27", "direct_product")


def standard_group(family: str, params: Optional[dict] = None,
                   cfg: Optional[RunConfig] = None) -> FiniteGroup:
    """Construct a named family member; see _FAMILIES for the choices."""
    params = dict(params or {})
    cfg = cfg or DEFAULT_CONFIG

    def need(key):
        if key not in params:
            raise InputError(f"family {family!r} needs parameter {key!r}")
        v = params[key]
        if not isinstance(v, int):
            raise InputError(f"parameter {key!r} must be an integer")
        return v

    if family == "cyclic":
        return cyclic_group(need("n"), cfg)
    if family == "dihedral":
        return dihedral_group(need("n"), cfg)
    if family == "generalized_quaternion":
        return generalized_quaternion_group(need("order"), cfg)
    if family == "semidihedral":
        return semidihedral_group(need("order"), cfg)
    if family == "heisenberg27":
        return heisenberg27_group(cfg)
    if family == "direct_product":
        factors = params.get("factors")
        if not isinstance(factors, (list, tuple)) or len(factors) < 2:
            raise InputError("family 'direct_product' needs a 'factors' list "
                             "of at least two group specs")
        built = []
        for spec in factors:
            if not isinstance(spec, dict) or "family" not in spec:
                raise InputError("each direct_product factor must be a "
                                 "{'family': ..., 'params': ...} spec")
            built.append(standard_group(spec["family"], spec.get("params"), cfg))
        out = built[0]
        for H in built[1:]:
            out = direct_product(out, H)
        return out
    raise InputError(f"unknown group family {family!r}; "
                     f"known families: {', '.join(_FAMILIES)}")


# ---------------------------------------------------------------------------
# isomorphism testing (optionally label-preserving)
# ---------------------------------------------------------------------------

def extend_from_generators(G: FiniteGroup, images: Sequence, mul_img: Callable,
                           identity_img):
    """Extend generator images to a map on all of G, or None if inconsistent.

    Checks f(x*g) = f(x)*f(g) for every element x and generator g, which makes
    any successful extension a homomorphism into the (associative) image.
    """
    if len(images) != len(G.generators):
        raise InputError("one image per generator is required")
    vals: List = [None] * G.order
    vals[0] = identity_img
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            fx = vals[x]
            for gi, g in enumerate(G.generators):
                y = G.table[x][g]
                img = mul_img(fx, images[gi])
                if vals[y] is None:
                    vals[y] = img
                    nxt.append(y)
                elif vals[y] != img:
                    return None
        frontier = nxt
    return vals


def is_isomorphic(G: FiniteGroup, H: FiniteGroup,
                  labels: Optional[Tuple[Sequence, Sequence]] = None,
                  cfg: Optional[RunConfig] = None
                  ) -> Tuple[bool, Optional[List[int]]]:
    """Isomorphism test with witness; ``labels=(lG, lH)`` restricts to
    label-preserving isomorphisms.

    Returns (True, mapping) with mapping[x] the image of x, or (False, None).
    """
    cfg = cfg or DEFAULT_CONFIG
    if max(G.order, H.order) > cfg.max_iso_order:
        raise ResourceError(
            f"isomorphism test beyond budget: order {max(G.order, H.order)} "
            f"> max_iso_order {cfg.max_iso_order}")
    if G.order != H.order:
        return False, None
    if fingerprint(G) != fingerprint(H):
        return False, None
    n = G.order
    if labels is not None:
        lG, lH = labels
        if len(lG) != n or len(lH) != n:
            raise InputError("labels must assign one value per element")
    else:
        lG = lH = [0] * n

    ordG, ordH = G.element_orders(), H.element_orders()
    cszG = [0] * n
    for cl in G.conjugacy_classes():
        for x in cl:
            cszG[x] = len(cl)
    cszH = [0] * n
    for cl in H.conjugacy_classes():
        for x in cl:
            cszH[x] = len(cl)
    profG = [(ordG[x], cszG[x], lG[x]) for x in range(n)]
    profH = [(ordH[x], cszH[x], lH[x]) for x in range(n)]
    if Counter(profG) != Counter(profH):
        return False, None

    gens = G.generators
    candidates = [[y for y in range(n) if profH[y] == profG[g]] for g in gens]

    def try_extend(images: List[int]) -> Optional[List[Optional[int]]]:
        """Partial closure of the first len(images) generators; None on clash."""
        vals: List[Optional[int]] = [None] * n
        vals[0] = 0
        used = {0}
        frontier = [0]
        act = gens[: len(images)]
        while frontier:
            nxt = []
            for x in frontier:
                fx = vals[x]
                for gi, g in enumerate(act):
                    y = G.table[x][g]
                    img = H.table[fx][images[gi]]
                    if vals[y] is None:
                        if img in used or lG[y] != lH[img]:
                            return None
                        vals[y] = img
                        used.add(img)
                        nxt.append(y)
                    elif vals[y] != img:
                        return None
            frontier = nxt
        return vals

    def dfs(i: int, images: List[int]) -> Optional[List[int]]:
        if i == len(gens):
            vals = try_extend(images)
            if vals is None or any(v is None for v in vals):
                return None
            return [v for v in vals]  # type: ignore[misc]
        for y in candidates[i]:
            images.append(y)
            if try_extend(images) is not None:
                result = dfs(i + 1, images)
                if result is not None:
                    return result
            images.pop()
        return None

    mapping = dfs(0, [])
    if mapping is None:
        return False, None
    # independent verification of the witness
    assert sorted(mapping) == list(range(n))
    for a in range(n):
        for b in range(n):
            if mapping[G.table[a][b]] != H.table[mapping[a]][mapping[b]]:
                raise AssertionError("isomorphism witness failed verification")
    for x in range(n):
        if lG[x] != lH[mapping[x]]:
            raise AssertionError("isomorphism witness is not label-preserving")
    return True, mapping


def identify_group(G: FiniteGroup, cfg: Optional[RunConfig] = None) -> Optional[str]:
    """Best-effort human-readable identification of small groups."""
    cfg = cfg or DEFAULT_CONFIG
    if G.order > cfg.max_iso_order:
        return None
    if G.is_abelian():
        inv = abelian_invariants_from_orders(G.element_orders())
        return " x ".join(f"Z{d}" for d in inv) if inv else "Z1"
    n = G.order
    candidates: List[Tuple[str, Callable[[], FiniteGroup]]] = []
    if n % 2 == 0:
        candidates.append((f"dihedral({n // 2})", lambda: dihedral_group(n // 2, cfg)))
    if n >= 8 and n & (n - 1) == 0:
        candidates.append((f"generalized_quaternion({n})",
                           lambda: generalized_quaternion_group(n, cfg)))
    if n >= 16 and n & (n - 1) == 0:
        candidates.append((f"semidihedral({n})", lambda: semidihedral_group(n, cfg)))
    if n == 27:
        candidates.append(("heisenberg27", lambda: heisenberg27_group(cfg)))
    if n % 2 == 0 and n // 2 >= 6 and n // 2 % 2 == 0:
        candidates.append((f"dihedral({n // 4}) x Z2",
                           lambda: direct_product(dihedral_group(n // 4, cfg),
                                                  cyclic_group(2, cfg))))
    if n % 8 == 0 and n // 2 >= 8 and (n // 2) & (n // 2 - 1) == 0:
        candidates.append((f"generalized_quaternion({n // 2}) x Z2",
                           lambda: direct_product(
                               generalized_quaternion_group(n // 2, cfg),
                               cyclic_group(2, cfg))))
    if n % 4 == 0 and n // 4 >= 3:
        m = n // 4
        for k in range(2, m):
            if gcd(k, m) == 1 and pow(k, 4, m) == 1:
                candidates.append((f"metacyclic({m},4,{k})",
                                   lambda k=k: metacyclic_group(m, 4, k, cfg)))
    for label, build in candidates:
        try:
            ok, _ = is_isomorphic(G, build(), cfg=cfg)
        except (InputError, ResourceError):
            continue
        if ok:
            return label
    return None
