"""Census enumeration, catalog structure, and emission formats."""

import csv
import random

import pytest

import helpers
from oracle_brute import brute_is_skeletal
from tukeyrel import (INFINITE, CapacityError, Relation, build_catalog,
                      canonical_key, delta_str, dominating_number,
                      dual_dominating_number, emit_catalog_csv, emit_hasse_dot,
                      emit_skeleton_files, enumerate_skeletal, is_skeletal,
                      parse_relation, probe_self_dual_question, skeleton)
from tukeyrel.census import MAX_CENSUS_ORDER, REFERENCE_NUMBERING, _fast_skeleton

EXPECTED_COUNTS = {1: 2, 2: 3, 3: 5, 4: 10, 5: 32}

# Hasse cover edges of the order-5 catalog, each class named by the least
# reference number among its members, read greater -> lesser.
EXPECTED_COVER_EDGES_5 = {
    (1, 13), (13, 6), (6, 14), (14, 4), (4, 15), (15, 7), (7, 17), (17, 3),
    (7, 21), (4, 20), (20, 21), (21, 23), (23, 3), (3, 24), (24, 26), (26, 8),
    (26, 31), (31, 5), (3, 18), (18, 8), (8, 27), (27, 5), (5, 29), (29, 10),
    (10, 32), (32, 2),
}

EXPECTED_MULTI_CLASSES_5 = [
    frozenset({3, 9, 11, 12, 19, 22, 25, 28}),
    frozenset({4, 16}),
    frozenset({5, 30}),
]

EXPECTED_DELTA_BANDS_5 = {
    INFINITE: {1},
    5: {13},
    4: {6, 14},
    3: {4, 16, 15, 20, 7, 21, 17, 23},
    2: {3, 5, 8, 9, 10, 11, 12, 18, 19, 22, 24, 25, 26, 27, 28, 29, 30, 31, 32},
    1: {2},
}

EXPECTED_DUAL_BANDS_5 = {
    INFINITE: {2},
    5: {32},
    4: {10, 29},
    3: {5, 30, 27, 31, 8, 26, 18, 24},
    2: {3, 4, 6, 7, 9, 11, 12, 13, 14, 15, 16, 17, 19, 20, 21, 22, 23, 25, 28},
    1: {1},
}


# --- enumeration -----------------------------------------------------------

@pytest.mark.parametrize("order,count", sorted(EXPECTED_COUNTS.items()))
def test_census_counts(order, count, census5):
    rels = census5 if order == 5 else enumerate_skeletal(order)
    assert len(rels) == count


def test_census_members_are_skeletal_canonical_distinct(census5):
    keys = set()
    for r in census5:
        assert is_skeletal(r)
        assert r.order() <= 5
        keys.add(canonical_key(r))
        if r.order() <= 4:
            assert brute_is_skeletal(r)
    assert len(keys) == len(census5)


def test_census_is_monotone_in_order():
    prev: set = set()
    for order in range(1, 6):
        cur = {canonical_key(r) for r in enumerate_skeletal(order)}
        assert prev <= cur
        prev = cur


def test_census_smallest_orders_exact():
    assert [(r.n_minus, r.n_plus, r.rows) for r in enumerate_skeletal(1)] == \
        [(1, 1, (0,)), (1, 1, (1,))]
    two = enumerate_skeletal(2)
    assert [(r.n_minus, r.n_plus, r.rows) for r in two] == \
        [(1, 1, (0,)), (1, 1, (1,)), (2, 2, (0b01, 0b10))]


def test_census_matches_reference_fixtures(census5, catalog5):
    census_keys = {canonical_key(r) for r in census5}
    fixture_keys = {canonical_key(r) for r in catalog5.values()}
    assert census_keys == fixture_keys


def test_reference_numbering_is_exact(census5, catalog5):
    # the frozen numbering covers the census bijectively and agrees with the
    # numbered fixture files
    seen = {}
    for r in census5:
        num = REFERENCE_NUMBERING.get((r.n_minus, r.n_plus, r.rows))
        assert num is not None
        seen[num] = r
    assert sorted(seen) == list(range(1, 33))
    for num, r in seen.items():
        assert canonical_key(r) == canonical_key(catalog5[num])


def test_rectangular_shapes_covered_by_square_census():
    # every skeletal relation with both sides <= 4, enumerated directly over
    # all rectangular matrices, already appears in the square census
    census_keys = {canonical_key(r) for r in enumerate_skeletal(4)}
    direct = set()
    for r in helpers.all_relations(4, 4):
        if is_skeletal(r):
            direct.add(canonical_key(r))
    assert direct == census_keys


def test_fast_skeleton_agrees_with_reference():
    rng = random.Random(157)
    for r in helpers.all_relations(3, 3):
        if r.n_minus == r.n_plus:
            fast = _fast_skeleton(r.rows, r.n_plus)
            s = skeleton(r)[0]
            assert fast == (s.n_minus, s.n_plus, tuple(sorted(s.rows)))
    for n in (5, 6):
        for _ in range(300):
            rows = tuple(rng.randrange(1 << n) for _ in range(n))
            fast = _fast_skeleton(rows, n)
            s = skeleton(Relation(n, n, rows))[0]
            assert fast == (s.n_minus, s.n_plus, tuple(sorted(s.rows)))


def test_enumerate_jobs_do_not_change_result():
    assert enumerate_skeletal(4, jobs=3) == enumerate_skeletal(4)


def test_enumerate_bounds():
    with pytest.raises(ValueError):
        enumerate_skeletal(0)
    with pytest.raises(CapacityError):
        enumerate_skeletal(MAX_CENSUS_ORDER + 1)
    assert MAX_CENSUS_ORDER == 6


# --- catalog ---------------------------------------------------------------

def _numbers_of(cat, members):
    return frozenset(cat.numbering[i] for i in members)


def test_catalog_order5_structure(catalog5_catalog):
    cat = catalog5_catalog
    assert len(cat.skeletons) == 32
    assert len(cat.classes) == 23
    multi = [_numbers_of(cat, c) for c in cat.classes if len(c) > 1]
    assert sorted(multi, key=sorted) == sorted(EXPECTED_MULTI_CLASSES_5, key=sorted)
    # the classes partition the catalog and agree with class_of
    all_members = sorted(i for c in cat.classes for i in c)
    assert all_members == list(range(32))
    for ci, members in enumerate(cat.classes):
        for i in members:
            assert cat.class_of[i] == ci


def test_catalog_order5_bands(catalog5_catalog):
    cat = catalog5_catalog
    for value, numbers in EXPECTED_DELTA_BANDS_5.items():
        got = {cat.numbering[i] for i in range(32) if cat.delta[i] == value}
        assert got == numbers, f"delta band {value}"
    for value, numbers in EXPECTED_DUAL_BANDS_5.items():
        got = {cat.numbering[i] for i in range(32) if cat.delta_dual[i] == value}
        assert got == numbers, f"dual band {value}"


def test_catalog_order5_cover_edges(catalog5_catalog):
    cat = catalog5_catalog
    label = {ci: min(_numbers_of(cat, members))
             for ci, members in enumerate(cat.classes)}
    got = {(label[hi], label[lo]) for hi, lo in cat.hasse_edges}
    assert got == EXPECTED_COVER_EDGES_5
    assert len(cat.hasse_edges) == len(EXPECTED_COVER_EDGES_5)


def test_catalog_matrix_is_reflexive_transitive_class_consistent(catalog5_catalog):
    cat = catalog5_catalog
    k = len(cat.skeletons)
    for i in range(k):
        assert cat.morphism(i, i)
    for i in range(k):
        for j in range(k):
            if not cat.morphism(i, j):
                continue
            for l in range(k):
                if cat.morphism(j, l):
                    assert cat.morphism(i, l)
    # bimorphic relations are indistinguishable in the order
    for members in cat.classes:
        first = members[0]
        for i in members[1:]:
            assert cat.matrix[i] == cat.matrix[first]


def test_catalog_morphisms_respect_invariants(catalog5_catalog):
    cat = catalog5_catalog
    k = len(cat.skeletons)
    for i in range(k):
        for j in range(k):
            if cat.morphism(i, j):
                assert cat.delta[i] >= cat.delta[j]
                assert cat.delta_dual[j] >= cat.delta_dual[i]


def test_catalog_jobs_do_not_change_result():
    rels = enumerate_skeletal(4)
    assert build_catalog(rels, jobs=2) == build_catalog(rels)


def test_self_dual_probe_empty_up_to_order5(catalog5_catalog):
    assert probe_self_dual_question(catalog5_catalog) == []


# --- emission --------------------------------------------------------------

def test_emit_catalog_csv(catalog5_catalog, tmp_path):
    cat = catalog5_catalog
    path = tmp_path / "catalog.csv"
    emit_catalog_csv(cat, path)
    with path.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["id", "n_minus", "n_plus", "delta", "delta_dual",
                       "class_id", "rows_hex"]
    assert len(rows) == 1 + 32
    for i, row in enumerate(rows[1:]):
        r = cat.skeletons[i]
        assert row[0] == str(i + 1)
        assert (int(row[1]), int(row[2])) == (r.n_minus, r.n_plus)
        assert row[3] == delta_str(cat.delta[i])
        assert row[4] == delta_str(cat.delta_dual[i])
        assert int(row[5]) == cat.class_of[i] + 1
        assert tuple(int(h, 16) for h in row[6].split(":")) == r.rows


def test_emit_hasse_dot(catalog5_catalog, tmp_path):
    cat = catalog5_catalog
    path = tmp_path / "hasse.dot"
    emit_hasse_dot(cat, path)
    text = path.read_text()
    lines = text.splitlines()
    assert lines[0] == "digraph hasse {"
    assert lines[-1] == "}"
    node_lines = [ln for ln in lines if "[label=" in ln]
    edge_lines = [ln for ln in lines if "->" in ln]
    assert len(node_lines) == len(cat.classes)
    assert len(edge_lines) == len(cat.hasse_edges)
    for hi, lo in cat.hasse_edges:
        assert f"  c{hi + 1} -> c{lo + 1};" in lines


def test_emit_skeleton_files(catalog5_catalog, tmp_path):
    cat = catalog5_catalog
    out = tmp_path / "skeletons"
    emit_skeleton_files(cat, out)
    files = sorted(out.glob("*.rel"), key=lambda p: int(p.stem))
    assert len(files) == 32
    for i, path in enumerate(files):
        text = path.read_text()
        assert text.endswith("\n")
        assert parse_relation(text) == cat.skeletons[i]


def test_delta_values_recomputable_from_emitted_rows(catalog5_catalog):
    cat = catalog5_catalog
    for i, r in enumerate(cat.skeletons):
        assert dominating_number(r) == cat.delta[i]
        assert dual_dominating_number(r) == cat.delta_dual[i]
