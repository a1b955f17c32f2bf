"""Generators for relation families with prescribed dominating numbers.

ladder(n) is the n by n identity matrix: dominating number n, dual
dominating number 2 once n is at least 2.  c_n(n) and c_nk(n, k) are
recursive block constructions whose grids place an all-ones block on the
diagonal, an all-zeros block immediately to its right with wraparound, and
the previous stage everywhere else; they realize dominating number and
dual dominating number (n, n) and (n, k) respectively.
"""

from __future__ import annotations

from math import factorial

from .invariants import dominating_number, dual_dominating_number
from .relation import MAX_SIDE, CapacityError, Relation


def ladder(n: int) -> Relation:
    if not (1 <= n <= MAX_SIDE):
        raise CapacityError(f"ladder size must be 1..{MAX_SIDE}, got {n}")
    return Relation(n, n, tuple(1 << (n - 1 - i) for i in range(n)))


def _block_step(base: Relation, grid: int) -> Relation:
    """Assemble the grid of blocks around a square base relation."""
    s = base.n_minus
    assert base.n_plus == s
    ones = (1 << s) - 1
    rows = []
    for bi in range(grid):
        for r in range(s):
            word = 0
            for bj in range(grid):
                if bj == bi:
                    piece = ones
                elif bj == (bi + 1) % grid:
                    piece = 0
                else:
                    piece = base.rows[r]
                word = (word << s) | piece
            rows.append(word)
    return Relation(grid * s, grid * s, tuple(rows))


def c_n(n: int) -> Relation:
    """Self-dual family member of side n factorial; defined for n = 2..4."""
    if n < 2:
        raise ValueError(f"c_n needs n >= 2, got {n}")
    if factorial(n) > MAX_SIDE:
        raise CapacityError(
            f"c_n({n}) would have side {factorial(n)}, beyond the {MAX_SIDE} cap")
    r = ladder(2)
    for m in range(3, n + 1):
        # stage m has m block-rows of the previous (m-1)!-sized stage
        r = _block_step(r, m)
    return r


def c_nk(n: int, k: int) -> Relation:
    """Family member with dominating number n and dual dominating number k."""
    if not (2 <= k <= n):
        raise ValueError(f"c_nk needs 2 <= k <= n, got n={n}, k={k}")
    if n ** (k - 1) > MAX_SIDE:
        raise CapacityError(
            f"c_nk({n}, {k}) would have side {n ** (k - 1)}, beyond the {MAX_SIDE} cap")
    r = ladder(n)
    for _ in range(k - 2):
        r = _block_step(r, n)
    return r


def verify_family(r: Relation, expected_delta: int, expected_dual: int) -> None:
    """Solver check of a constructed relation's advertised invariants."""
    d = dominating_number(r)
    dd = dual_dominating_number(r)
    if (d, dd) != (expected_delta, expected_dual):
        raise AssertionError(
            f"construction invariant failed: delta={d}, dual={dd}, "
            f"expected ({expected_delta}, {expected_dual})")
