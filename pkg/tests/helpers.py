"""Shared helpers for the test suite: fixture loading and input generation."""

from __future__ import annotations

import random
from itertools import product
from pathlib import Path

from tukeyrel import Relation, parse_relation

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def load_fixture(rel_path: str) -> Relation:
    return parse_relation((FIXTURE_DIR / rel_path).read_text())


def load_catalog5() -> dict[int, Relation]:
    """The 32 reference skeletal relations of order <= 5, keyed by number."""
    return {i: load_fixture(f"catalog5/r{i:02d}.rel") for i in range(1, 33)}


def random_relation(rng: random.Random, max_minus: int, max_plus: int,
                    min_minus: int = 1, min_plus: int = 1) -> Relation:
    """Uniform shape, then independent fair-coin entries."""
    m = rng.randint(min_minus, max_minus)
    n = rng.randint(min_plus, max_plus)
    rows = tuple(rng.randrange(1 << n) for _ in range(m))
    return Relation(m, n, rows)


def all_relations(max_minus: int, max_plus: int):
    """Every relation with 1 <= sides <= the given bounds, one per matrix."""
    for m in range(1, max_minus + 1):
        for n in range(1, max_plus + 1):
            for rows in product(range(1 << n), repeat=m):
                yield Relation(m, n, rows)


def relation_class_representatives(max_side: int) -> list[Relation]:
    """One canonical representative per isomorphism class, sides <= max_side."""
    from tukeyrel import canonical_form

    seen = {}
    for r in all_relations(max_side, max_side):
        c = canonical_form(r)
        key = (c.n_minus, c.n_plus, c.rows)
        if key not in seen:
            seen[key] = c
    return sorted(seen.values(), key=lambda r: (r.n_minus, r.n_plus, r.rows))
