"""Exhaustive census of skeletal relations up to a given order.

Enumeration walks square matrices whose row words are strictly increasing,
which kills row permutations and duplicate rows up front; every candidate
is skeletonized and canonicalized, and the canonical forms are collected
into a set.  Non-square shapes are covered because padding with isolated
columns and duplicate rows does not change the skeleton's class.  The
catalog then solves the morphism decision for every ordered pair, groups
relations into bimorphism classes, and reduces the class order to its
covering edges.

The enumeration space is split into independent shards by first row word,
so worker count never affects the result.  The shard whose first row is
all-zero collapses analytically: a zero row makes every other row
non-minimal, so the skeleton is always the one-point relation with no
pair.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import combinations
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Optional

from .invariants import (DeltaValue, delta_str, dominating_number,
                         dual_dominating_number)
from .morphism import search_morphism, shortcut_witness
from .relation import CapacityError, Relation, canonical_form, serialize_relation

MAX_CENSUS_ORDER = 6

ShapeKey = tuple[int, int, tuple[int, ...]]  # n_minus, n_plus, row words


def _fast_skeleton(rows: tuple[int, ...], n: int) -> ShapeKey:
    """Skeletonize a raw n-column matrix without Relation overhead.

    Returns the skeleton's shape and sorted row words.  This is the hot
    path of the census; it must agree with skeleton() on every input,
    which the test suite checks against the slow implementation.
    """
    colmask = (1 << n) - 1
    rws = list(rows)
    while True:
        m = len(rws)
        del_rows = set()
        for i in range(m):
            ri = rws[i]
            for j in range(m):
                if i != j:
                    rj = rws[j]
                    if rj != ri and rj & ri == rj:
                        del_rows.add(i)
                        break
        col_words = {}
        mask = colmask
        while mask:
            b = mask & -mask
            w = 0
            for idx, r in enumerate(rws):
                if r & b:
                    w |= 1 << idx
            col_words[b] = w
            mask ^= b
        del_cols = 0
        for b, w in col_words.items():
            for b2, w2 in col_words.items():
                if b != b2 and w2 != w and w & w2 == w:
                    del_cols |= b
                    break
        if not del_rows and not del_cols:
            break
        if del_rows:
            rws = [r for i, r in enumerate(rws) if i not in del_rows]
        if del_cols:
            colmask ^= del_cols
            rws = [r & ~del_cols for r in rws]

    # twin collapse; removing same-side duplicates cannot create new
    # containments or twins on either side, so one pass suffices
    seen_rows = set()
    deduped = []
    for r in rws:
        if r not in seen_rows:
            seen_rows.add(r)
            deduped.append(r)
    rws = deduped
    keep_shifts = []
    seen_cols = set()
    for s in range(n - 1, -1, -1):
        if colmask >> s & 1:
            w = 0
            for idx, r in enumerate(rws):
                if r >> s & 1:
                    w |= 1 << idx
            if w not in seen_cols:
                seen_cols.add(w)
                keep_shifts.append(s)

    out = []
    for r in rws:
        w = 0
        for s in keep_shifts:
            w = (w << 1) | (r >> s & 1)
        out.append(w)
    out.sort()
    return len(out), len(keep_shifts), tuple(out)


_canon_cache: dict[tuple[int, tuple[int, ...]], ShapeKey] = {}


def _canonical_key(shape: ShapeKey) -> ShapeKey:
    m, k, rows = shape
    key = (k, rows)
    hit = _canon_cache.get(key)
    if hit is None:
        c = canonical_form(Relation(m, k, rows))
        hit = (c.n_minus, c.n_plus, c.rows)
        _canon_cache[key] = hit
    return hit


def _census_shard(args: tuple[int, list[int]]) -> set[ShapeKey]:
    n, first_values = args
    found: set[ShapeKey] = set()
    top = 1 << n
    for v in first_values:
        for rest in combinations(range(v + 1, top), n - 1):
            found.add(_canonical_key(_fast_skeleton((v,) + rest, n)))
    return found


def enumerate_skeletal(max_order: int, jobs: int = 1,
                       allow_large: bool = False) -> list[Relation]:
    """Canonical forms of the skeletons of all relations of order <= max_order."""
    if max_order < 1:
        raise ValueError(f"order must be positive, got {max_order}")
    if max_order > MAX_CENSUS_ORDER and not allow_large:
        raise CapacityError(
            f"census beyond order {MAX_CENSUS_ORDER} needs allow_large")
    n = max_order
    top = 1 << n
    found: set[ShapeKey] = {(1, 1, (0,))}  # the collapsed zero-first-row shard
    if n == 1:
        found.add((1, 1, (1,)))
    shard_values = list(range(1, top - (n - 1)))
    if jobs <= 1 or not shard_values:
        found |= _census_shard((n, shard_values))
    else:
        # round-robin so early (large) shards spread across workers
        chunks: list[list[int]] = [[] for _ in range(jobs * 4)]
        for i, v in enumerate(shard_values):
            chunks[i % len(chunks)].append(v)
        chunks = [c for c in chunks if c]
        with Pool(jobs) as pool:
            for part in pool.imap_unordered(_census_shard, [(n, c) for c in chunks]):
                found |= part
    rels = [Relation(m, k, rows) for m, k, rows in found]
    rels.sort(key=lambda r: (r.order(), r.n_minus, r.n_plus, r.rows))
    return rels


@dataclass(frozen=True)
class CensusCatalog:
    skeletons: tuple[Relation, ...]
    delta: tuple[DeltaValue, ...]
    delta_dual: tuple[DeltaValue, ...]
    matrix: tuple[int, ...]  # bit j of matrix[i]: morphism i -> j exists
    classes: tuple[tuple[int, ...], ...]  # 0-based skeleton indices per class
    class_of: tuple[int, ...]
    hasse_edges: tuple[tuple[int, int], ...]  # (greater class, lesser class)
    numbering: tuple[Optional[int], ...]  # published reference number, if any

    def morphism(self, i: int, j: int) -> bool:
        return bool(self.matrix[i] >> j & 1)


def _pair_exists(a: Relation, b: Relation, da, dda, db, ddb) -> bool:
    verdict = shortcut_witness(a, b, da, dda, db, ddb)
    if verdict is False:
        return False
    if verdict is not None:
        return True
    return search_morphism(a, b) is not None


def _matrix_rows(args) -> list[tuple[int, int]]:
    rels, deltas, duals, row_idxs = args
    out = []
    for i in row_idxs:
        bits = 0
        for j in range(len(rels)):
            if i == j or _pair_exists(rels[i], rels[j], deltas[i], duals[i],
                                      deltas[j], duals[j]):
                bits |= 1 << j
        out.append((i, bits))
    return out


def build_catalog(skeletons: Iterable[Relation], jobs: int = 1) -> CensusCatalog:
    rels = tuple(skeletons)
    deltas = tuple(dominating_number(r) for r in rels)
    duals = tuple(dual_dominating_number(r) for r in rels)
    k = len(rels)

    rows: dict[int, int] = {}
    if jobs <= 1 or k < 16:
        for i, bits in _matrix_rows((rels, deltas, duals, list(range(k)))):
            rows[i] = bits
    else:
        idx_chunks = [list(range(start, k, jobs * 2)) for start in range(jobs * 2)]
        with Pool(jobs) as pool:
            args = [(rels, deltas, duals, c) for c in idx_chunks if c]
            for part in pool.imap_unordered(_matrix_rows, args):
                for i, bits in part:
                    rows[i] = bits
    matrix = tuple(rows[i] for i in range(k))

    class_of = [-1] * k
    classes: list[tuple[int, ...]] = []
    for i in range(k):
        if class_of[i] >= 0:
            continue
        members = tuple(j for j in range(k)
                        if matrix[i] >> j & 1 and matrix[j] >> i & 1)
        for j in members:
            class_of[j] = len(classes)
        classes.append(members)

    # strict order on classes, then its transitive reduction
    nclasses = len(classes)
    above = [0] * nclasses  # bit d set: class c strictly above class d
    for ci in range(nclasses):
        i = classes[ci][0]
        for cj in range(nclasses):
            if ci != cj and matrix[i] >> classes[cj][0] & 1:
                above[ci] |= 1 << cj
    hasse = []
    for ci in range(nclasses):
        for cj in range(nclasses):
            if above[ci] >> cj & 1:
                # covering edge unless some class sits strictly between
                if not any(above[ci] >> cm & 1 and above[cm] >> cj & 1
                           for cm in range(nclasses)):
                    hasse.append((ci, cj))

    numbering = tuple(REFERENCE_NUMBERING.get((r.n_minus, r.n_plus, r.rows))
                      for r in rels)
    return CensusCatalog(
        skeletons=rels, delta=deltas, delta_dual=duals, matrix=matrix,
        classes=tuple(classes), class_of=tuple(class_of),
        hasse_edges=tuple(sorted(hasse)), numbering=numbering)


def emit_catalog_csv(cat: CensusCatalog, path) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "n_minus", "n_plus", "delta", "delta_dual",
                         "class_id", "rows_hex"])
        for i, r in enumerate(cat.skeletons):
            rows_hex = ":".join(format(v, "x") for v in r.rows)
            writer.writerow([i + 1, r.n_minus, r.n_plus, delta_str(cat.delta[i]),
                             delta_str(cat.delta_dual[i]), cat.class_of[i] + 1,
                             rows_hex])


def _class_label(cat: CensusCatalog, ci: int) -> str:
    members = cat.classes[ci]
    if all(cat.numbering[i] is not None for i in members):
        ids = ",".join(f"#{cat.numbering[i]}" for i in members)
    else:
        ids = ",".join(str(i + 1) for i in members)
    i0 = members[0]
    return (f"{{{ids}}}\\nδ={delta_str(cat.delta[i0])}, "
            f"δ⊥={delta_str(cat.delta_dual[i0])}")


def emit_hasse_dot(cat: CensusCatalog, path) -> None:
    path = Path(path)
    lines = ["digraph hasse {", "  rankdir=TB;", '  node [shape=box, fontsize=10];']
    for ci in range(len(cat.classes)):
        lines.append(f'  c{ci + 1} [label="{_class_label(cat, ci)}"];')
    for hi, lo in cat.hasse_edges:
        lines.append(f"  c{hi + 1} -> c{lo + 1};")
    lines.append("}")
    path.write_text("\n".join(lines) + "\n")


def emit_skeleton_files(cat: CensusCatalog, out_dir) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, r in enumerate(cat.skeletons):
        (out / f"{i + 1}.rel").write_text(serialize_relation(r) + "\n")


def probe_self_dual_question(cat: CensusCatalog) -> list[int]:
    """Catalog ids with delta at least the dual value yet no morphism to the dual."""
    from .relation import dual

    out = []
    for i, r in enumerate(cat.skeletons):
        if cat.delta[i] >= cat.delta_dual[i]:
            if _pair_exists(r, dual(r), cat.delta[i], cat.delta_dual[i],
                            cat.delta_dual[i], cat.delta[i]):
                continue
            out.append(i + 1)
    return out


# Canonical forms of the 32 order-5 skeletal relations, keyed by
# (n_minus, n_plus, row words), mapped to their reference numbers.  The
# test fixtures under tests/fixtures/catalog5 carry the same numbering.
REFERENCE_NUMBERING: dict[ShapeKey, int] = {
    (1, 1, (0b0,)): 1,
    (1, 1, (0b1,)): 2,
    (2, 2, (0b01, 0b10)): 3,
    (3, 3, (0b001, 0b010, 0b100)): 4,
    (3, 3, (0b011, 0b101, 0b110)): 5,
    (4, 4, (0b0001, 0b0010, 0b0100, 0b1000)): 6,
    (4, 4, (0b0001, 0b0110, 0b1010, 0b1100)): 7,
    (4, 4, (0b0011, 0b0101, 0b1001, 0b1110)): 8,
    (4, 4, (0b0011, 0b0101, 0b1010, 0b1100)): 9,
    (4, 4, (0b0111, 0b1011, 0b1101, 0b1110)): 10,
    (5, 4, (0b0011, 0b0101, 0b0110, 0b1001, 0b1010)): 11,
    (4, 5, (0b00011, 0b01100, 0b10101, 0b11010)): 12,
    (5, 5, (0b00001, 0b00010, 0b00100, 0b01000, 0b10000)): 13,
    (5, 5, (0b00001, 0b00010, 0b01100, 0b10100, 0b11000)): 14,
    (5, 5, (0b00001, 0b00110, 0b01010, 0b10010, 0b11100)): 15,
    (5, 5, (0b00001, 0b00110, 0b01010, 0b10100, 0b11000)): 16,
    (5, 5, (0b00001, 0b01110, 0b10110, 0b11010, 0b11100)): 17,
    (5, 5, (0b00011, 0b00101, 0b01001, 0b10001, 0b11110)): 18,
    (5, 5, (0b00011, 0b00101, 0b01001, 0b10010, 0b11100)): 19,
    (5, 5, (0b00011, 0b00101, 0b01010, 0b10100, 0b11000)): 20,
    (5, 5, (0b00011, 0b00101, 0b01010, 0b10100, 0b11001)): 21,
    (5, 5, (0b00011, 0b00101, 0b01010, 0b10110, 0b11001)): 22,
    (5, 5, (0b00011, 0b00101, 0b01110, 0b10110, 0b11000)): 23,
    (5, 5, (0b00011, 0b00101, 0b01110, 0b10110, 0b11001)): 24,
    (5, 5, (0b00011, 0b01100, 0b10101, 0b10110, 0b11001)): 25,
    (5, 5, (0b00011, 0b01101, 0b01110, 0b10101, 0b11010)): 26,
    (5, 5, (0b00011, 0b01101, 0b10101, 0b11001, 0b11110)): 27,
    (5, 5, (0b00011, 0b01101, 0b10101, 0b11010, 0b11100)): 28,
    (5, 5, (0b00111, 0b01011, 0b10011, 0b11101, 0b11110)): 29,
    (5, 5, (0b00111, 0b01011, 0b10101, 0b11001, 0b11110)): 30,
    (5, 5, (0b00111, 0b01011, 0b10101, 0b11010, 0b11100)): 31,
    (5, 5, (0b01111, 0b10111, 0b11011, 0b11101, 0b11110)): 32,
}
