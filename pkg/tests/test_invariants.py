"""Dominating numbers against the brute oracle, minimum families, ladders."""

import math
import random
from itertools import combinations, permutations

import pytest

import helpers
from oracle_brute import brute_dominating_number, brute_min_families
from tukeyrel import (INFINITE, Relation, delta_str, dominates,
                      dominating_number, dual, dual_dominating_number,
                      is_ladder, ladder, min_dominating_family)


def test_infinite_sentinel():
    assert INFINITE == math.inf
    assert 5 < INFINITE
    assert delta_str(INFINITE) == "inf"
    assert delta_str(3) == "3"


def test_dominates():
    r = Relation.from_strings(["1001", "0101", "0011"])
    assert dominates(r, [3])
    assert dominates(r, [0, 1, 2])
    assert not dominates(r, [0, 1])
    assert not dominates(r, [])
    with pytest.raises(IndexError):
        dominates(r, [4])


def test_dominating_number_matches_brute_exhaustive():
    for r in helpers.all_relations(3, 3):
        assert dominating_number(r) == brute_dominating_number(r)


def test_dominating_number_matches_brute_random():
    rng = random.Random(41)
    for _ in range(500):
        r = helpers.random_relation(rng, 5, 5)
        assert dominating_number(r) == brute_dominating_number(r)
    for _ in range(60):
        r = helpers.random_relation(rng, 6, 6, min_minus=6, min_plus=6)
        assert dominating_number(r) == brute_dominating_number(r)


def test_dual_dominating_number_is_dual_of_dominating():
    rng = random.Random(43)
    for _ in range(200):
        r = helpers.random_relation(rng, 5, 5)
        assert dual_dominating_number(r) == brute_dominating_number(dual(r))


def test_infinite_iff_zero_row():
    rng = random.Random(47)
    for _ in range(300):
        r = helpers.random_relation(rng, 5, 5)
        assert (dominating_number(r) == INFINITE) == any(
            row == 0 for row in r.rows)


def test_delta_one_iff_dual_infinite():
    rng = random.Random(53)
    for _ in range(300):
        r = helpers.random_relation(rng, 5, 5)
        full = (1 << r.n_minus) - 1
        has_full_column = any(r.col_word(j) == full for j in range(r.n_plus))
        assert (dominating_number(r) == 1) == has_full_column
        assert (dominating_number(r) == 1) == (
            dual_dominating_number(r) == INFINITE)


def test_ladder_values():
    for n in (1, 2, 3, 5, 9, 17):
        assert dominating_number(ladder(n)) == n
    for n in (2, 3, 5, 9, 17):
        assert dual_dominating_number(ladder(n)) == 2
    assert dual_dominating_number(ladder(1)) == INFINITE


def test_min_dominating_family_properties():
    rng = random.Random(59)
    checked_multi = 0
    for _ in range(400):
        r = helpers.random_relation(rng, 5, 5)
        d = dominating_number(r)
        fam = min_dominating_family(r)
        if d == INFINITE:
            assert fam is None
            continue
        assert fam is not None and len(fam) == d
        assert dominates(r, fam)
        assert list(fam) == sorted(set(fam))
        # lexicographically least among all minimum families
        all_min = brute_min_families(r)
        assert fam == min(all_min)
        if len(all_min) > 1:
            checked_multi += 1
        # no strictly smaller family dominates
        if d != INFINITE and d > 1:
            for smaller in combinations(range(r.n_plus), int(d) - 1):
                assert not dominates(r, smaller)
    assert checked_multi > 20  # the lex check saw real choice


def test_min_dominating_family_examples(cover_demo, reduction_demo):
    assert min_dominating_family(cover_demo) == (3,)
    assert dominating_number(cover_demo) == 1
    assert dual_dominating_number(cover_demo) == INFINITE
    assert min_dominating_family(reduction_demo) == (1, 3)
    assert dominating_number(reduction_demo) == 2


def test_is_ladder():
    assert is_ladder(ladder(1)) == 1
    assert is_ladder(ladder(7)) == 7
    assert is_ladder(Relation(1, 1, (0,))) is None
    assert is_ladder(Relation.from_strings(["10", "01", "00"])) is None
    assert is_ladder(Relation.from_strings(["11", "01"])) is None
    assert is_ladder(Relation.from_strings(["10", "10"])) is None
    assert is_ladder(Relation.from_strings(["100", "010"])) is None
    # every 3x3 permutation matrix is a 3-ladder
    for perm in permutations(range(3)):
        rows = tuple(1 << (2 - perm[i]) for i in range(3))
        assert is_ladder(Relation(3, 3, rows)) == 3
