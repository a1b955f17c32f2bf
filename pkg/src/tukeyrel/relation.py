"""Finite binary relations as 0/1 matrices with bitset rows.

A relation has two finite sides: minus points (rows) and plus points
(columns).  Row i holds a bitset over the columns, stored big-endian so
that column 0 is the most significant bit.  With that convention the
integer value of a row equals int(row_string, 2), and the concatenated
row words compare the same way the printed matrix does.

Sides are capped at 64 points so every bitset fits one machine word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Optional

MAX_SIDE = 64

# Exact canonicalization enumerates all column permutations; past 8 columns
# that is no longer cheap and we refuse rather than silently approximate.
CANONICAL_MAX_COLS = 8


class ParseError(ValueError):
    """Malformed relation text. Carries 1-based line and column when known."""

    def __init__(self, message: str, line: int, column: int | None = None):
        loc = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{message} ({loc})")
        self.line = line
        self.column = column


class CapacityError(ValueError):
    """Operation exceeds a documented size cap."""


def bit_of(word: int, index: int, width: int) -> int:
    """Bit for point `index` in a width-wide big-endian bitset word."""
    return (word >> (width - 1 - index)) & 1


def word_of(indices: Iterable[int], width: int) -> int:
    w = 0
    for i in indices:
        w |= 1 << (width - 1 - i)
    return w


def indices_of(word: int, width: int) -> tuple[int, ...]:
    return tuple(i for i in range(width) if (word >> (width - 1 - i)) & 1)


@dataclass(frozen=True)
class Relation:
    """Immutable binary relation on [n_minus] x [n_plus]."""

    n_minus: int
    n_plus: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not (1 <= self.n_minus <= MAX_SIDE):
            raise CapacityError(f"minus side must have 1..{MAX_SIDE} points, got {self.n_minus}")
        if not (1 <= self.n_plus <= MAX_SIDE):
            raise CapacityError(f"plus side must have 1..{MAX_SIDE} points, got {self.n_plus}")
        if len(self.rows) != self.n_minus:
            raise ValueError(f"expected {self.n_minus} rows, got {len(self.rows)}")
        limit = 1 << self.n_plus
        for i, r in enumerate(self.rows):
            if not (0 <= r < limit):
                raise ValueError(f"row {i} does not fit in {self.n_plus} columns")

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> "Relation":
        rows = list(rows)
        width = len(rows[0])
        return cls(len(rows), width, tuple(int(r, 2) for r in rows))

    def has_pair(self, i: int, j: int) -> bool:
        return bit_of(self.rows[i], j, self.n_plus) == 1

    def row_word(self, i: int) -> int:
        return self.rows[i]

    def col_word(self, j: int) -> int:
        """Column j as a bitset over rows (big-endian by row index)."""
        w = 0
        shift = self.n_plus - 1 - j
        for i, r in enumerate(self.rows):
            w |= ((r >> shift) & 1) << (self.n_minus - 1 - i)
        return w

    def column_words(self) -> tuple[int, ...]:
        return tuple(self.col_word(j) for j in range(self.n_plus))

    def row_strings(self) -> list[str]:
        return [format(r, f"0{self.n_plus}b") for r in self.rows]

    def pair_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def order(self) -> int:
        return max(self.n_minus, self.n_plus)


def parse_relation(text: str) -> Relation:
    """Parse the plain-text relation format.

    Line 1 holds `<n_minus> <n_plus>`; the next n_minus lines hold the 0/1
    matrix rows.  Lines starting with `#` and blank lines are skipped.
    """
    meaningful: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        meaningful.append((lineno, stripped))
    if not meaningful:
        raise ParseError("empty relation file", 1)

    header_line, header = meaningful[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be two integers", header_line)
    try:
        n_minus, n_plus = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("header must be two integers", header_line) from None
    for label, n in (("minus", n_minus), ("plus", n_plus)):
        if not (1 <= n <= MAX_SIDE):
            raise ParseError(f"{label} side must have 1..{MAX_SIDE} points, got {n}", header_line)

    body = meaningful[1:]
    if len(body) != n_minus:
        raise ParseError(f"expected {n_minus} matrix rows, found {len(body)}",
                         body[-1][0] if body else header_line)
    rows = []
    for lineno, line in body:
        if len(line) != n_plus:
            raise ParseError(f"row has {len(line)} entries, expected {n_plus}", lineno)
        for col, ch in enumerate(line):
            if ch not in "01":
                raise ParseError(f"matrix entries must be 0 or 1, got {ch!r}", lineno, col + 1)
        rows.append(int(line, 2))
    return Relation(n_minus, n_plus, tuple(rows))


def serialize_relation(r: Relation) -> str:
    return f"{r.n_minus} {r.n_plus}\n" + "\n".join(r.row_strings())


def dual(r: Relation) -> Relation:
    """Transpose of the Boolean negation: entry (j, i) = 1 - entry (i, j)."""
    full = (1 << r.n_minus) - 1
    rows = tuple(full ^ r.col_word(j) for j in range(r.n_plus))
    return Relation(r.n_plus, r.n_minus, rows)


def disjoint_union(a: Relation, b: Relation) -> Relation:
    """Block-diagonal sum: a's pairs first, b's pairs second, no cross pairs."""
    n_minus = a.n_minus + b.n_minus
    n_plus = a.n_plus + b.n_plus
    if n_minus > MAX_SIDE or n_plus > MAX_SIDE:
        raise CapacityError(f"combined sides {n_minus}x{n_plus} exceed the {MAX_SIDE} cap")
    rows = tuple(r << b.n_plus for r in a.rows) + tuple(b.rows)
    return Relation(n_minus, n_plus, rows)


def induced_subrelation(r: Relation, keep_minus: Iterable[int], keep_plus: Iterable[int]) -> Relation:
    keep_minus = sorted(set(keep_minus))
    keep_plus = sorted(set(keep_plus))
    if not keep_minus or not keep_plus:
        raise ValueError("kept sets must be nonempty on both sides")
    for i in keep_minus:
        if not (0 <= i < r.n_minus):
            raise IndexError(f"minus index {i} out of range")
    for j in keep_plus:
        if not (0 <= j < r.n_plus):
            raise IndexError(f"plus index {j} out of range")
    k = len(keep_plus)
    rows = []
    for i in keep_minus:
        w = 0
        for pos, j in enumerate(keep_plus):
            w |= bit_of(r.rows[i], j, r.n_plus) << (k - 1 - pos)
        rows.append(w)
    return Relation(len(keep_minus), k, tuple(rows))


def neighborhood(r: Relation, side: str, index: int) -> int:
    """Neighborhood bitset of one point, over the opposite side.

    side is 'minus' or 'plus'.  For a minus point this is its row word
    (bits over columns); for a plus point, its column word (bits over rows).
    """
    if side == "minus":
        if not (0 <= index < r.n_minus):
            raise IndexError(f"minus index {index} out of range")
        return r.rows[index]
    if side == "plus":
        if not (0 <= index < r.n_plus):
            raise IndexError(f"plus index {index} out of range")
        return r.col_word(index)
    raise ValueError("side must be 'minus' or 'plus'")


@lru_cache(maxsize=8)
def _perm_word_tables(n: int) -> list[list[int]]:
    """For each permutation of n columns, a table mapping row word to permuted word.

    Only built for n <= 6; larger widths permute per-row instead because the
    tables would be factorially large.
    """
    tables = []
    for perm in permutations(range(n)):
        # perm[p] = source column placed at position p
        table = [0] * (1 << n)
        for v in range(1 << n):
            w = 0
            for p in range(n):
                w |= ((v >> (n - 1 - perm[p])) & 1) << (n - 1 - p)
            table[v] = w
        tables.append(table)
    return tables


def _permute_word(v: int, perm: tuple[int, ...], n: int) -> int:
    w = 0
    for p in range(n):
        w |= ((v >> (n - 1 - perm[p])) & 1) << (n - 1 - p)
    return w


def canonical_form(r: Relation) -> Relation:
    """Least representative of the isomorphism class of r.

    Minimizes the tuple of row words over all column permutations, sorting
    the rows ascending for each candidate column order.  Exact, so only
    supported up to CANONICAL_MAX_COLS columns.
    """
    n = r.n_plus
    if n > CANONICAL_MAX_COLS:
        raise CapacityError(
            f"canonical form is exact only up to {CANONICAL_MAX_COLS} columns, got {n}")
    best: Optional[tuple[int, ...]] = None
    if n <= 6:
        for table in _perm_word_tables(n):
            cand = tuple(sorted(table[v] for v in r.rows))
            if best is None or cand < best:
                best = cand
    else:
        for perm in permutations(range(n)):
            cand = tuple(sorted(_permute_word(v, perm, n) for v in r.rows))
            if best is None or cand < best:
                best = cand
    return Relation(r.n_minus, r.n_plus, best)


def canonical_key(r: Relation) -> bytes:
    """Stable byte key identifying the isomorphism class of r."""
    c = canonical_form(r)
    return bytes([c.n_minus, c.n_plus]) + b"".join(v.to_bytes(8, "big") for v in c.rows)


def is_isomorphic(a: Relation, b: Relation) -> bool:
    if (a.n_minus, a.n_plus) != (b.n_minus, b.n_plus):
        return False
    return canonical_form(a).rows == canonical_form(b).rows


def find_isomorphism(a: Relation, b: Relation) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Search for (row_map, col_map) with a[i][j] = b[row_map[i]][col_map[j]].

    Unlike canonical_form this has no column cap; it backtracks over column
    bijections with degree and row-profile pruning, so it stays practical on
    the structured matrices it is needed for.
    """
    if (a.n_minus, a.n_plus) != (b.n_minus, b.n_plus):
        return None
    m, n = a.n_minus, a.n_plus
    if sorted(r.bit_count() for r in a.rows) != sorted(r.bit_count() for r in b.rows):
        return None
    a_cols = a.column_words()
    b_cols = b.column_words()
    if sorted(c.bit_count() for c in a_cols) != sorted(c.bit_count() for c in b_cols):
        return None

    # Map columns one at a time; a partial map is viable only if the multiset
    # of a-row prefixes (over mapped columns) matches the b-row prefixes
    # (over image columns, same order).
    col_order = sorted(range(n), key=lambda j: (a_cols[j].bit_count(), j))
    col_map: dict[int, int] = {}
    used_b = [False] * n

    def prefix_ok() -> bool:
        mapped = [(j, col_map[j]) for j in col_order[:len(col_map)]]
        a_pref = sorted(
            tuple(bit_of(a.rows[i], j, n) for j, _ in mapped) for i in range(m))
        b_pref = sorted(
            tuple(bit_of(b.rows[i], bj, n) for _, bj in mapped) for i in range(m))
        return a_pref == b_pref

    def extend(depth: int) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
        if depth == n:
            # Columns fixed; rows must now match as word multisets.
            remap = [0] * n
            for aj, bj in col_map.items():
                remap[aj] = bj
            a_words = []
            for i in range(m):
                w = 0
                for j in range(n):
                    w |= bit_of(a.rows[i], j, n) << (n - 1 - remap[j])
                a_words.append(w)
            buckets: dict[int, list[int]] = {}
            for i2, w in enumerate(b.rows):
                buckets.setdefault(w, []).append(i2)
            row_map = [0] * m
            taken: dict[int, int] = {}
            for i, w in enumerate(a_words):
                pos = taken.get(w, 0)
                lst = buckets.get(w, [])
                if pos >= len(lst):
                    return None
                row_map[i] = lst[pos]
                taken[w] = pos + 1
            return tuple(row_map), tuple(remap)
        aj = col_order[depth]
        deg = a_cols[aj].bit_count()
        for bj in range(n):
            if used_b[bj] or b_cols[bj].bit_count() != deg:
                continue
            col_map[aj] = bj
            used_b[bj] = True
            if prefix_ok():
                found = extend(depth + 1)
                if found is not None:
                    return found
            del col_map[aj]
            used_b[bj] = False
        return None

    return extend(0)
