"""Acceptance suite: five end-to-end criteria.

Each criterion prints exactly one PASS/FAIL line on the real stdout (so the
lines survive pytest's capture) and is otherwise an ordinary test: any
failing assertion marks the criterion FAIL and fails the test.
"""

import itertools
import random
import sys
import time
from contextlib import contextmanager

from conftest import D4_ACTIONS, all_sign_characters

from twisted_schur.cohomology import (CocycleTable, bockstein_class,
                                      cohomology_group,
                                      h2_class_representatives,
                                      twisted_multiplier)
from twisted_schur.extensions import build_extension, is_stem
from twisted_schur.gmodules import (epsilon_of, finite_module, mu_module,
                                    sign_module)
from twisted_schur.groups import (cyclic_group, dihedral_group,
                                  direct_product, generalized_quaternion_group,
                                  is_isomorphic, semidihedral_group)
from twisted_schur.intlinalg import (SparseIntMatrix, bareiss_determinant,
                                     smith_normal_form)
from twisted_schur.repgroups import (satisfies_criterion,
                                     twisted_representation_groups)
from twisted_schur.semiprojective import (extract_cocycle,
                                          lift_over_extension,
                                          regular_semiprojective_rep)


@contextmanager
def criterion(index, label, note=None):
    ok = False
    try:
        yield
        ok = True
    finally:
        detail = (note or {}).get("detail", "")
        extra = f" ({detail})" if detail else ""
        sys.__stdout__.write(
            f"\n[acceptance {index}] {label}: "
            f"{'PASS' if ok else 'FAIL'}{extra}\n")
        sys.__stdout__.flush()


# ---------------------------------------------------------------------------
# criterion 1: the order-2 base case, exactly and fast
# ---------------------------------------------------------------------------

def test_criterion_1_order2_base_case():
    note = {}
    start = time.perf_counter()
    with criterion(1, "order-2 base case: multiplier, representation group, "
                      "exact lift", note):
        G = cyclic_group(2)
        H = twisted_multiplier(G, [-1])
        assert H.invariants == (2,)

        results = twisted_representation_groups(G, [-1])
        assert len(results) == 1
        witness = results[0]
        assert witness.gamma.order == 4
        assert is_isomorphic(witness.gamma, cyclic_group(4))[0]
        assert witness.identified_as == "Z4"

        mu = mu_module(G, [-1], 2)
        alpha = CocycleTable(2, mu, {(1, 1): (1,)})
        assert alpha.is_cocycle()
        f = regular_semiprojective_rep(G, alpha)
        lift = lift_over_extension(f, witness.extension)
        assert lift.success, lift.detail

        # the lifted generator image must be [[0,-1],[1,0]] followed by
        # conjugation, up to renumbering the two basis vectors
        gen = witness.extension.section[1]
        m = lift.rep.maps[gen]
        assert m.conj and m.dimension == 2 and m.modulus % 2 == 0
        half = m.modulus // 2
        entries = {(m.perm[j], j): m.exps[j] for j in range(2)}
        assert entries in ({(1, 0): 0, (0, 1): half},
                           {(0, 1): 0, (1, 0): half}), entries

        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"took {elapsed:.2f}s"
        note["detail"] = f"{elapsed:.2f}s"


# ---------------------------------------------------------------------------
# criterion 2: the dihedral-8 table for all four sign actions
# ---------------------------------------------------------------------------

EXPECTED_D4 = {
    (1, 1): ((2,), 3, 16),
    (-1, -1): ((2, 2), 2, 32),
    (1, -1): ((2, 2), 4, 32),
    (-1, 1): ((2, 2), 3, 32),
}


def test_criterion_2_dihedral_table(d4_sweep):
    note = {}
    with criterion(2, "dihedral-8 table: multipliers Z2/Z2^2 and "
                      "3/2/4/3 representation groups", note):
        G = d4_sweep["group"]
        for signs, (invariants, count, order) in EXPECTED_D4.items():
            H = twisted_multiplier(G, list(signs))
            assert H.invariants == invariants, (signs, H.invariants)
            rows = d4_sweep["rows"][signs]
            assert len(rows) == count, (signs, len(rows))
            for r in rows:
                assert r.gamma.order == order == G.order * H.order

        # the three trivial-action groups are pairwise non-isomorphic and
        # are exactly the dihedral, semidihedral, quaternion groups of
        # order 16
        trivial = d4_sweep["rows"][(1, 1)]
        for i in range(3):
            for j in range(i + 1, 3):
                assert not is_isomorphic(trivial[i].gamma,
                                         trivial[j].gamma)[0]
        for target in (dihedral_group(8), semidihedral_group(16),
                       generalized_quaternion_group(16)):
            hits = sum(is_isomorphic(r.gamma, target)[0] for r in trivial)
            assert hits == 1, target.name

        assert d4_sweep["elapsed"] <= 600.0, d4_sweep["elapsed"]
        note["detail"] = f"{d4_sweep['elapsed']:.0f}s for all four actions"


# ---------------------------------------------------------------------------
# criterion 3: the order-2592 semilinear closure demo
# ---------------------------------------------------------------------------

def test_criterion_3_semilinear_demo(heisenberg_report):
    note = {}
    with criterion(3, "order-2592 semilinear closure demo", note):
        r = heisenberg_report["report"]
        assert r["closure_order"] == 2592
        assert r["scalar_order"] == 6
        assert r["quotient_order"] == 432
        assert r["stabilizer_order"] == 6
        # the stabilizer generator is the primitive sixth root 1 + zeta_3
        assert r["stabilizer_generator"] == "1 + z3"
        assert r["scalar_generator"] == "1 + z3"
        for j in (1, 2, 3, 4):
            for lattice in ("lambda1", "lambda2"):
                assert r["preserves"][f"C{j}"][lattice] is True
        assert "out of scope" in r["notes"]
        assert heisenberg_report["elapsed"] < 30.0, heisenberg_report["elapsed"]
        note["detail"] = f"{heisenberg_report['elapsed']:.1f}s"


# ---------------------------------------------------------------------------
# criterion 4: property suites
# ---------------------------------------------------------------------------

def _random_vector(rng, module):
    width = module.free_rank + len(module.moduli)
    return tuple(rng.randint(-4, 4) for _ in range(width))


def _random_cochain(rng, G, module, degree):
    values = {}
    for args in itertools.product(range(1, G.order), repeat=degree):
        if rng.random() < 0.5:
            values[args] = _random_vector(rng, module)
    return CocycleTable(degree, module, values)


def _suite_chain(rng):
    """d(d(c)) = 0 for random cochains over random modules."""
    pool = [cyclic_group(2), cyclic_group(4), cyclic_group(6),
            dihedral_group(3), dihedral_group(4),
            direct_product(cyclic_group(2), cyclic_group(2))]
    checked = 0
    for _ in range(30):
        G = rng.choice(pool)
        eps = rng.choice(all_sign_characters(G))
        kind = rng.randrange(3)
        if kind == 0:
            M = sign_module(G, eps)
        elif kind == 1:
            M = mu_module(G, eps, rng.choice([2, 3, 4]))
        else:
            M = finite_module(G, rng.choice([(2,), (4,), (2, 2)]), None)
        degree = rng.choice([1, 2])
        c = _random_cochain(rng, G, M, degree)
        dd = c.coboundary().coboundary()
        assert dd == CocycleTable(degree + 2, M, {}), (G.name, degree)
        checked += 1
    assert checked == 30


def _mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B)))
             for j in range(len(B[0]))] for i in range(len(A))]


def _suite_snf(rng):
    """U*M*V = diag with unimodular U, V and a divisibility chain."""
    for trial in range(100):
        rows = rng.randrange(1, 9)
        cols = rng.randrange(1, 9)
        dense = [[rng.randint(-9, 9) if rng.random() < 0.6 else 0
                  for _ in range(cols)] for _ in range(rows)]
        res = smith_normal_form(SparseIntMatrix.from_dense(dense))
        assert (res.rows, res.cols) == (rows, cols)
        U, V = res.U.to_dense(), res.V.to_dense()
        assert abs(bareiss_determinant(U)) == 1
        assert abs(bareiss_determinant(V)) == 1
        product = _mat_mul(_mat_mul(U, dense), V)
        diag = [[res.diagonal[i] if (i == j and i < len(res.diagonal)) else 0
                 for j in range(cols)] for i in range(rows)]
        assert product == diag, trial
        d = [x for x in res.diagonal if x]
        assert len(d) == res.rank
        assert all(x > 0 for x in d)
        assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


def _expected_cyclic(m, signed, degree):
    if signed:
        return (2,) if degree % 2 == 1 else ()
    return (m,) if degree % 2 == 0 else ()


def _suite_cyclic_oracle():
    """Degrees 1-4 against the closed form from the periodic resolution:

    trivial action on the integers: H^odd = 0, H^even = Z_m;
    sign action (m even): H^odd = Z_2, H^even = 0.
    """
    seen = []
    for m in range(2, 9):
        G = cyclic_group(m)
        actions = [[1]] + ([[-1]] if m % 2 == 0 else [])
        for signs in actions:
            M = sign_module(G, signs)
            signed = signs == [-1]
            for degree in (1, 2, 3, 4):
                H = cohomology_group(G, M, degree)
                want = _expected_cyclic(m, signed, degree)
                assert H.invariants == want, (m, signs, degree, H.invariants)
            seen.append((G, list(epsilon_of(signs, G))))
    return seen


def _suite_exponent(cyclic_pairs, d4):
    """Every invariant of a computed degree-3 group divides the group order."""
    pairs = list(cyclic_pairs)
    Z2 = cyclic_group(2)
    pairs.append((Z2, [1, 1]))
    pairs.append((Z2, [1, -1]))
    for signs in D4_ACTIONS:
        pairs.append((d4, list(epsilon_of(list(signs), d4))))
    for G, eps in pairs:
        H = cohomology_group(G, sign_module(G, eps), 3)
        assert all(G.order % m == 0 for m in H.invariants), (G.name, eps)


def _suite_extract_regular(rng):
    """extract(regular(alpha)) == alpha exactly, on random instances."""
    pool = [cyclic_group(2), cyclic_group(3), cyclic_group(4),
            cyclic_group(6), dihedral_group(3), dihedral_group(4),
            cyclic_group(8),
            direct_product(cyclic_group(2), cyclic_group(2))]
    for trial in range(50):
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
        assert extract_cocycle(f) == shifted, (trial, G.name, N)


def _check_lifts(G, signs, results):
    """Completeness and soundness of lifting over every witness extension."""
    eps = list(epsilon_of(signs, G))
    H = twisted_multiplier(G, eps)
    N = H.invariants[-1] if H.invariants else 2
    class_reps = h2_class_representatives(G, mu_module(G, eps, N))
    lifts = 0
    for r in results:
        gamma = r.extension.gamma
        assert gamma.order == G.order * H.order  # the predicted order
        for alpha in class_reps:
            f = regular_semiprojective_rep(G, alpha, phi=eps)
            res = lift_over_extension(f, r.extension)
            # completeness: every class lifts over a representation group
            assert res.success, (signs, res.detail, res.alpha_class)
            F = res.rep
            # soundness: a strict homomorphism...
            for x in range(gamma.order):
                fx = F.maps[x]
                for y in range(gamma.order):
                    assert fx.compose(F.maps[y]) == F.maps[gamma.mul(x, y)]
                # ...projecting to f up to scalars
                proj = r.extension.projection[x]
                assert fx.scalar_difference(f.maps[proj]) is not None
            lifts += 1
    return lifts


def _suite_bockstein(rng):
    """The connecting-map class is unchanged by coboundary shifts."""
    cases = [(cyclic_group(2), [-1], 2), (cyclic_group(4), [-1], 2),
             (dihedral_group(4), [1, -1], 2), (cyclic_group(4), [1], 4)]
    for G, signs, N in cases:
        eps = list(epsilon_of(signs, G))
        mu = mu_module(G, eps, N)
        for alpha in h2_class_representatives(G, mu):
            baseline = bockstein_class(alpha)
            for _ in range(5):
                shift = CocycleTable(1, mu, {(g,): (rng.randrange(N),)
                                             for g in range(1, G.order)})
                assert bockstein_class(alpha + shift.coboundary()) == baseline


def test_criterion_4_property_suites(d4_sweep):
    note = {}
    with criterion(4, "property suites: chain, SNF, cyclic oracle, exponent, "
                      "extract-regular, lifts, stem, order, bockstein", note):
        rng = random.Random(20260825)
        _suite_chain(rng)
        _suite_snf(rng)

        t0 = time.perf_counter()
        cyclic_pairs = _suite_cyclic_oracle()
        oracle_s = time.perf_counter() - t0

        G = d4_sweep["group"]
        _suite_exponent(cyclic_pairs, G)
        _suite_extract_regular(rng)

        t1 = time.perf_counter()
        Z2 = cyclic_group(2)
        lifts = 0
        z2_trivial = twisted_representation_groups(Z2, [1])
        z2_conj = twisted_representation_groups(Z2, [-1])
        lifts += _check_lifts(Z2, [1], z2_trivial)
        lifts += _check_lifts(Z2, [-1], z2_conj)
        for signs in D4_ACTIONS:
            lifts += _check_lifts(G, list(signs), d4_sweep["rows"][signs])
        lift_s = time.perf_counter() - t1

        # stem property of every trivial-action witness
        for r in z2_trivial + d4_sweep["rows"][(1, 1)]:
            assert is_stem(r.extension), r.fingerprint

        _suite_bockstein(rng)
        note["detail"] = (f"cyclic oracle {oracle_s:.0f}s, "
                          f"{lifts} lifts {lift_s:.0f}s")


# ---------------------------------------------------------------------------
# criterion 5: negative control
# ---------------------------------------------------------------------------

def test_criterion_5_negative_control():
    note = {}
    with criterion(5, "negative control: split order-4 extension rejected "
                      "on the H^1 condition", note):
        G = cyclic_group(2)
        A = finite_module(G, [2], None)
        split = build_extension(G, A, CocycleTable(2, A, {}))
        assert split.gamma.order == 4 and split.gamma.exponent() == 2
        report = satisfies_criterion(split, [-1])
        assert report.verdict is False
        assert report.cond_h1 is False
        # the other two conditions hold, so H^1 is the one doing the work
        assert report.cond_order is True
        assert report.cond_characters is True
        assert report.h1_base != report.h1_total
        data = report.as_dict()
        assert data["verdict"] is False and data["cond_h1"] is False
        note["detail"] = (f"h1_base={report.h1_base}, "
                          f"h1_total={report.h1_total}")
