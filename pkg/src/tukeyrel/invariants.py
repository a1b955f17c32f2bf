"""Dominating numbers of a relation and of its dual, computed exactly.

The dominating number is the minimum number of columns whose neighborhoods
jointly cover every row; it is infinite exactly when some row is all-zero.
Computation is branch-and-bound set cover over column bitsets, which is
cheap at the sizes this package caps itself to.
"""

from __future__ import annotations

import math
from typing import Optional

from .relation import Relation, dual

INFINITE = math.inf

# DeltaValue: int for finite values, INFINITE (math.inf) otherwise.
DeltaValue = float | int


def delta_str(v: DeltaValue) -> str:
    return "inf" if v == INFINITE else str(int(v))


def dominates(r: Relation, family) -> bool:
    """True if the given columns jointly cover every row."""
    u = 0
    for j in family:
        if not (0 <= j < r.n_plus):
            raise IndexError(f"column {j} out of range")
        u |= r.col_word(j)
    return u == (1 << r.n_minus) - 1


def _greedy_cover_size(cols: list[int], full: int) -> Optional[int]:
    uncovered = full
    used = 0
    while uncovered:
        best = max(cols, key=lambda c: (c & uncovered).bit_count())
        if best & uncovered == 0:
            return None
        uncovered &= ~best
        used += 1
    return used


def _min_cover(cols: list[int], full: int) -> Optional[int]:
    """Exact minimum number of words from cols whose union is full."""
    ub = _greedy_cover_size(cols, full)
    if ub is None:
        return None
    best = ub
    # memo[uncovered] = fewest words already spent reaching this state
    memo: dict[int, int] = {}
    cover_of: dict[int, list[int]] = {}
    for row_bit in range(full.bit_length()):
        mask = 1 << row_bit
        if full & mask:
            cover_of[mask] = [c for c in cols if c & mask]

    def dfs(uncovered: int, used: int):
        nonlocal best
        if uncovered == 0:
            best = min(best, used)
            return
        seen = memo.get(uncovered)
        if seen is not None and seen <= used:
            return
        memo[uncovered] = used
        max_gain = max((c & uncovered).bit_count() for c in cols)
        if used + (uncovered.bit_count() + max_gain - 1) // max_gain >= best:
            return
        # branch on the hardest uncovered row: fewest columns can cover it
        pick_mask = None
        pick_count = None
        u = uncovered
        while u:
            mask = u & -u
            cnt = len(cover_of[mask])
            if pick_count is None or cnt < pick_count:
                pick_mask, pick_count = mask, cnt
            u &= u - 1
        cands = sorted(cover_of[pick_mask], key=lambda c: -(c & uncovered).bit_count())
        for c in cands:
            dfs(uncovered & ~c, used + 1)

    dfs(full, 0)
    return best


def dominating_number(r: Relation) -> DeltaValue:
    if any(row == 0 for row in r.rows):
        return INFINITE
    full = (1 << r.n_minus) - 1
    cols = sorted(set(r.col_word(j) for j in range(r.n_plus)), reverse=True)
    d = _min_cover(cols, full)
    assert d is not None  # no zero row, so the union of all columns is full
    return d


def dual_dominating_number(r: Relation) -> DeltaValue:
    return dominating_number(dual(r))


def min_dominating_family(r: Relation) -> Optional[tuple[int, ...]]:
    """Lexicographically least dominating column set of minimum size.

    None when the dominating number is infinite.
    """
    d = dominating_number(r)
    if d == INFINITE:
        return None
    full = (1 << r.n_minus) - 1
    cols = [r.col_word(j) for j in range(r.n_plus)]

    def completable(uncovered: int, start: int, budget: int) -> bool:
        if budget == 0:
            return uncovered == 0
        if uncovered == 0:
            return False  # a shorter cover would contradict minimality of d
        avail = [cols[j] for j in range(start, r.n_plus)]
        if not avail:
            return False
        max_gain = max((c & uncovered).bit_count() for c in avail)
        if max_gain == 0:
            return False
        if (uncovered.bit_count() + max_gain - 1) // max_gain > budget:
            return False
        for j in range(start, r.n_plus):
            if cols[j] & uncovered and completable(uncovered & ~cols[j], j + 1, budget - 1):
                return True
        return False

    family = []
    uncovered = full
    budget = int(d)
    start = 0
    while budget:
        for j in range(start, r.n_plus):
            if completable(uncovered & ~cols[j], j + 1, budget - 1):
                family.append(j)
                uncovered &= ~cols[j]
                start = j + 1
                budget -= 1
                break
        else:
            raise AssertionError("no completion found at committed prefix")
    assert dominates(r, family)
    return tuple(family)


def is_ladder(r: Relation) -> Optional[int]:
    """The side size if r is a permutation matrix, else None."""
    if r.n_minus != r.n_plus:
        return None
    if any(row.bit_count() != 1 for row in r.rows):
        return None
    if len(set(r.rows)) != r.n_minus:
        return None
    return r.n_minus
