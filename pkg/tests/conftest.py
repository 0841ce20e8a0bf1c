"""Shared fixtures and helpers for the test suite.

The dihedral sweep and the semilinear closure demo are the two expensive
computations; they are produced once per session (with their wall-clock
times, which the acceptance tests assert against) and shared by every module
that needs them.
"""

import itertools
import time

import pytest

from twisted_schur.config import DEFAULT_CONFIG
from twisted_schur.errors import PreconditionError
from twisted_schur.geometry import heisenberg_demo
from twisted_schur.gmodules import epsilon_of
from twisted_schur.groups import dihedral_group
from twisted_schur.repgroups import twisted_representation_groups

#: the four sign actions (phi(s), phi(t)) on the dihedral group of order 8
D4_ACTIONS = ((1, 1), (-1, -1), (1, -1), (-1, 1))


def all_sign_characters(G):
    """Every homomorphism G -> {1, -1}, as per-element sign lists."""
    out = []
    for signs in itertools.product((1, -1), repeat=len(G.generators)):
        try:
            eps = list(epsilon_of(list(signs), G))
        except PreconditionError:
            continue
        if eps not in out:
            out.append(eps)
    if not out:  # a group with no generators (the trivial group)
        out.append([1] * G.order)
    return out


@pytest.fixture(scope="session")
def d4_sweep():
    """Representation groups for all four sign actions on D4, with timing."""
    G = dihedral_group(4)
    rows = {}
    start = time.perf_counter()
    for signs in D4_ACTIONS:
        rows[signs] = twisted_representation_groups(G, list(signs))
    elapsed = time.perf_counter() - start
    return {"group": G, "rows": rows, "elapsed": elapsed}


@pytest.fixture(scope="session")
def heisenberg_report():
    """The order-2592 semilinear closure report, with timing."""
    start = time.perf_counter()
    report = heisenberg_demo(DEFAULT_CONFIG)
    elapsed = time.perf_counter() - start
    return {"report": report, "elapsed": elapsed}
