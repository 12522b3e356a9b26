"""Independent brute-force oracles used to freeze expected test values.

Everything in here recomputes results from first principles (scans over
relation tables, exhaustive candidate filtering, Kronecker products) so
the main library code paths are never the thing checking themselves.
"""

from __future__ import annotations

import itertools

import numpy as np


def brute_glb(leq: np.ndarray, xs: list[int]) -> int | None:
    """Greatest lower bound by scanning the relation table."""
    n = leq.shape[0]
    lower = [z for z in range(n) if all(leq[z, x] for x in xs)]
    greatest = [z for z in lower if all(leq[w, z] for w in lower)]
    if not greatest:
        return None
    assert len(greatest) == 1
    return greatest[0]


def brute_lub(leq: np.ndarray, xs: list[int]) -> int | None:
    """Least upper bound by scanning the relation table."""
    n = leq.shape[0]
    upper = [z for z in range(n) if all(leq[x, z] for x in xs)]
    least = [z for z in upper if all(leq[z, w] for w in upper)]
    if not least:
        return None
    assert len(least) == 1
    return least[0]


def brute_join_maps(source, target) -> set[tuple[int, ...]]:
    """Every join-preserving table, by filtering all |L2|^|L1| candidates."""
    n1, n2 = len(source), len(target)
    found = set()
    for table in itertools.product(range(n2), repeat=n1):
        if table[source.bottom] != target.bottom:
            continue
        if all(
            table[source.join2(x, y)] == target.join2(table[x], table[y])
            for x in range(n1)
            for y in range(x, n1)
        ):
            found.add(table)
    return found


def brute_meet_maps(source, target) -> set[tuple[int, ...]]:
    """Every meet-preserving table, by exhaustive filtering."""
    n1, n2 = len(source), len(target)
    found = set()
    for table in itertools.product(range(n2), repeat=n1):
        if table[source.top] != target.top:
            continue
        if all(
            table[source.meet2(x, y)] == target.meet2(table[x], table[y])
            for x in range(n1)
            for y in range(x, n1)
        ):
            found.add(table)
    return found


def kron_state(tv) -> np.ndarray:
    """The compound state vector assembled directly in the product space."""
    d1 = tv.left_basis.shape[0]
    d2 = tv.right_basis.shape[0]
    state = np.zeros(d1 * d2, dtype=complex)
    for i in range(tv.terms):
        state += tv.coefficients[i] * np.kron(tv.left_basis[:, i], tv.right_basis[:, i])
    return state
