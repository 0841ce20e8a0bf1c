"""Seeded invariant suites runnable from the CLI (`selftest`).

Each suite prints one PASS/FAIL line; the runner returns True only if every
suite passed.  The seed comes from the run configuration, so identical seeds
give identical suites.
"""

import random
import sys
import time
from typing import Callable, List, Optional, TextIO

from .config import DEFAULT_CONFIG, RunConfig
from .cohomology import CocycleTable, cohomology_group
from .cyclotomic import CyclotomicField
from .geometry import semilinear_group_closure, schroedinger_matrices
from .gmodules import mu_module, sign_module
from .groups import cyclic_group, dihedral_group, direct_product
from .intlinalg import (SparseIntMatrix, bareiss_determinant,
                        smith_normal_form)
from .semiprojective import extract_cocycle, regular_semiprojective_rep

__all__ = ["run_selftest"]


def _random_sparse(rng: random.Random, rows: int, cols: int) -> List[List[int]]:
    mat = [[0] * cols for _ in range(rows)]
    for _ in range(max(1, rows * cols // 3)):
        mat[rng.randrange(rows)][rng.randrange(cols)] = rng.randint(-9, 9)
    return mat


def _mat_mul(a: List[List[int]], b: List[List[int]]) -> List[List[int]]:
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            out[i][j] = sum(a[i][t] * b[t][j] for t in range(k))
    return out


def _suite_snf(rng: random.Random, cfg: RunConfig) -> None:
    for _ in range(25):
        rows = rng.randint(1, 10)
        cols = rng.randint(1, 10)
        dense = _random_sparse(rng, rows, cols)
        snf = smith_normal_form(SparseIntMatrix.from_dense(dense),
                                need_u=True, need_v=True)
        u = snf.U.to_dense()
        v = snf.V.to_dense()
        assert abs(bareiss_determinant(u)) == 1, "U is not unimodular"
        assert abs(bareiss_determinant(v)) == 1, "V is not unimodular"
        prod = _mat_mul(_mat_mul(u, dense), v)
        for i in range(rows):
            for j in range(cols):
                want = snf.diagonal[i] if i == j and i < len(snf.diagonal) else 0
                assert prod[i][j] == want, "U*M*V is not the SNF diagonal"
        for i in range(len(snf.diagonal) - 1):
            assert snf.diagonal[i + 1] % snf.diagonal[i] == 0, \
                "diagonal is not a divisibility chain"


def _group_pool(cfg: RunConfig):
    Z2 = cyclic_group(2, cfg)
    return [cyclic_group(n, cfg) for n in (2, 3, 4)] + \
        [dihedral_group(3, cfg), direct_product(Z2, Z2)]


def _random_sign(rng: random.Random, G) -> List[int]:
    for _ in range(20):
        vals = [rng.choice((1, -1)) for _ in G.generators]
        try:
            sign_module(G, vals)
        except Exception:
            continue
        return vals
    return [1] * len(G.generators)


def _suite_coboundary(rng: random.Random, cfg: RunConfig) -> None:
    pool = _group_pool(cfg)
    for _ in range(12):
        G = rng.choice(pool)
        N = rng.choice((2, 3, 4))
        M = mu_module(G, _random_sign(rng, G), N)
        for degree in (1, 2):
            values = {}
            for _ in range(rng.randint(1, 6)):
                t = tuple(rng.randrange(1, G.order) for _ in range(degree))
                values[t] = (rng.randrange(N),)
            c = CocycleTable(degree, M, values)
            dc = c.coboundary()
            ddc = dc.coboundary()
            assert not ddc.values, "coboundary of a coboundary is nonzero"
            assert dc.is_cocycle(), "a coboundary failed the cocycle test"


def _suite_cyclic_oracle(rng: random.Random, cfg: RunConfig) -> None:
    # periodic-resolution values for Z_m: with trivial action on Z the odd
    # degrees vanish and the even ones are Z_m; with the sign action (m even)
    # the odd degrees are Z_2 and the even ones vanish.
    for m in (2, 3, 4):
        G = cyclic_group(m, cfg)
        Z = sign_module(G, [1])
        for n, want in ((1, ()), (2, (m,)), (3, ()), (4, (m,))):
            got = cohomology_group(G, Z, n, cfg).invariants
            assert got == want, f"H^{n}(Z{m}, Z) = {got}, expected {want}"
    for m in (2, 4):
        G = cyclic_group(m, cfg)
        Zs = sign_module(G, [-1])
        for n, want in ((1, (2,)), (2, ()), (3, (2,)), (4, ())):
            got = cohomology_group(G, Zs, n, cfg).invariants
            assert got == want, f"H^{n}(Z{m}, Z_sign) = {got}, expected {want}"


def _suite_extract_regular(rng: random.Random, cfg: RunConfig) -> None:
    pool = _group_pool(cfg)
    for _ in range(10):
        G = rng.choice(pool)
        N = rng.choice((2, 3, 4))
        eps = _random_sign(rng, G)
        M = mu_module(G, eps, N)
        chain = CocycleTable(
            1, M, {(g,): (rng.randrange(N),) for g in range(1, G.order)})
        alpha = chain.coboundary()
        assert alpha.is_cocycle()
        rep = regular_semiprojective_rep(G, alpha, cfg=cfg)
        assert extract_cocycle(rep) == alpha, \
            "extract o regular is not the identity"


def _suite_cyclotomic(rng: random.Random, cfg: RunConfig) -> None:
    for n in (5, 8, 12):
        field = CyclotomicField(n)

        def rand_elt():
            return field.element([rng.randint(-3, 3)
                                  for _ in range(field.degree)])

        for _ in range(8):
            a, b, c = rand_elt(), rand_elt(), rand_elt()
            assert (a + b) * c == a * c + b * c, "distributivity failed"
            assert (a * b).conjugate() == a.conjugate() * b.conjugate(), \
                "conjugation is not multiplicative"
            if not a.is_zero():
                assert a * a.inverse() == field.one(), "inverse failed"
        zeta = field.zeta()
        assert zeta ** n == field.one(), "zeta^n != 1"
        roots = field.roots_of_unity()
        expected = n if n % 2 == 0 else 2 * n
        assert len(roots) == expected, "wrong number of roots of unity"


def _suite_closure(rng: random.Random, cfg: RunConfig) -> None:
    G, elems = semilinear_group_closure(list(schroedinger_matrices()),
                                        cfg=cfg, name="schroedinger")
    assert G.order == 27, f"Schroedinger closure has order {G.order}"
    scalars = [m for m in elems
               if not m.conj and m.scalar_value() is not None]
    assert len(scalars) == 3, "Schroedinger scalar subgroup is not <zeta_3>"
    for _ in range(200):
        a, b = rng.randrange(27), rng.randrange(27)
        assert elems[G.mul(a, b)] == elems[a].compose(elems[b]), \
            "element dictionary disagrees with the Cayley table"


_SUITES: List[tuple] = [
    ("smith-normal-form", _suite_snf),
    ("coboundary-squares-to-zero", _suite_coboundary),
    ("cyclic-cohomology-oracle", _suite_cyclic_oracle),
    ("extract-regular-roundtrip", _suite_extract_regular),
    ("cyclotomic-arithmetic", _suite_cyclotomic),
    ("semilinear-closure", _suite_closure),
]


def run_selftest(cfg: Optional[RunConfig] = None,
                 stream: Optional[TextIO] = None) -> bool:
    """Run every suite; print one line per suite; True iff all passed."""
    cfg = cfg or DEFAULT_CONFIG
    stream = stream or sys.stdout
    all_ok = True
    for name, suite in _SUITES:
        rng = random.Random(f"{cfg.seed}:{name}")  # string seeding is stable
        start = time.perf_counter()
        try:
            suite(rng, cfg)
        except AssertionError as exc:
            all_ok = False
            stream.write(f"{name}: FAIL ({exc})\n")
            continue
        elapsed = time.perf_counter() - start
        stream.write(f"{name}: PASS ({elapsed:.2f}s)\n")
    stream.write("selftest: " + ("PASS" if all_ok else "FAIL") + "\n")
    return all_ok
