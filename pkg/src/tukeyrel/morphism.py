"""Tukey morphism decision, witnesses, and witness transforms.

A morphism from a to b is a pair of maps: phi_minus from b's minus side
into a's minus side and phi_plus from a's plus side into b's plus side,
such that whenever phi_minus(y) is a-related to x, y is b-related to
phi_plus(x).  Existence is decided by a complete backtracking search over
phi_plus assignments; cheap sufficient and necessary conditions derived
from the dominating numbers run first unless disabled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .invariants import (INFINITE, dominates, dominating_number,
                         dual_dominating_number, is_ladder,
                         min_dominating_family)
from .relation import Relation, disjoint_union, induced_subrelation


class WitnessError(ValueError):
    """Witness maps malformed for the relations at hand."""


class NodeLimitExceeded(RuntimeError):
    """Search hit the configured node budget: result inconclusive."""


class DecompositionError(RuntimeError):
    """No decomposition along the union could be completed."""


@dataclass(frozen=True)
class MorphismWitness:
    phi_minus: tuple[int, ...]  # image in a's minus side, per b-minus point
    phi_plus: tuple[int, ...]   # image in b's plus side, per a-plus point


@dataclass(frozen=True)
class SolverConfig:
    shortcuts_enabled: bool = True
    node_limit: Optional[int] = None


def _validate(a: Relation, b: Relation, w: MorphismWitness) -> None:
    if len(w.phi_minus) != b.n_minus:
        raise WitnessError(
            f"phi_minus has {len(w.phi_minus)} entries, expected {b.n_minus}")
    if len(w.phi_plus) != a.n_plus:
        raise WitnessError(
            f"phi_plus has {len(w.phi_plus)} entries, expected {a.n_plus}")
    for y, i in enumerate(w.phi_minus):
        if not (0 <= i < a.n_minus):
            raise WitnessError(f"phi_minus[{y}]={i} out of range")
    for x, j in enumerate(w.phi_plus):
        if not (0 <= j < b.n_plus):
            raise WitnessError(f"phi_plus[{x}]={j} out of range")


def check_morphism(a: Relation, b: Relation, w: MorphismWitness) -> bool:
    _validate(a, b, w)
    for y in range(b.n_minus):
        i = w.phi_minus[y]
        for x in range(a.n_plus):
            if a.has_pair(i, x) and not b.has_pair(y, w.phi_plus[x]):
                return False
    return True


def search_morphism(a: Relation, b: Relation,
                    node_limit: Optional[int] = None) -> Optional[MorphismWitness]:
    """Pure complete backtracking search, no shortcuts.

    Assigns phi_plus column by column in descending a-column-degree order,
    keeping per-b-minus-point bitsets of still feasible a-minus images;
    a state dies when some b-minus point runs out of images.  Given a full
    phi_plus the images can be picked independently per point, so pruning
    on empty sets loses nothing.
    """
    a_cols = a.column_words()
    b_cols = b.column_words()
    order = sorted(range(a.n_plus), key=lambda j: (-a_cols[j].bit_count(), j))
    # interchangeable phi_plus values: b-columns with equal neighborhoods
    first_of: dict[int, int] = {}
    for z in range(b.n_plus):
        first_of.setdefault(b_cols[z], z)
    value_reps = sorted(first_of.values())
    full_minus = (1 << a.n_minus) - 1
    b_full = (1 << b.n_minus) - 1

    phi_plus = [0] * a.n_plus
    nodes = 0

    def assign(depth: int, feas: list[int]) -> bool:
        nonlocal nodes
        if depth == len(order):
            return True
        x = order[depth]
        col_x = a_cols[x]
        for z in value_reps:
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise NodeLimitExceeded(f"morphism search exceeded {node_limit} nodes")
            # rows related to x stop being feasible for every y not related to z
            miss = b_full ^ b_cols[z]
            new_feas = feas
            dead = False
            if miss and col_x:
                new_feas = feas.copy()
                yy = miss
                while yy:
                    p = yy.bit_length() - 1
                    y = b.n_minus - 1 - p
                    new_feas[y] &= ~col_x
                    if new_feas[y] == 0:
                        dead = True
                        break
                    yy ^= 1 << p
            if not dead:
                phi_plus[x] = z
                if assign(depth + 1, new_feas):
                    return True
        return False

    if not assign(0, [full_minus] * b.n_minus):
        return None
    # recompute final feasibility to extract phi_minus
    phi_minus = []
    for y in range(b.n_minus):
        feas = full_minus
        for x in range(a.n_plus):
            if not b.has_pair(y, phi_plus[x]):
                feas &= ~a_cols[x]
        assert feas
        phi_minus.append(a.n_minus - feas.bit_length())
    w = MorphismWitness(tuple(phi_minus), tuple(phi_plus))
    assert check_morphism(a, b, w)
    return w


def _delta_one_witness(a: Relation, b: Relation) -> MorphismWitness:
    fam = min_dominating_family(b)
    assert fam is not None and len(fam) == 1
    return MorphismWitness((0,) * b.n_minus, (fam[0],) * a.n_plus)


def _empty_row_witness(a: Relation, b: Relation) -> MorphismWitness:
    z = next(i for i, row in enumerate(a.rows) if row == 0)
    return MorphismWitness((z,) * b.n_minus, (0,) * a.n_plus)


def _ladder_witness(a: Relation, b: Relation) -> MorphismWitness:
    """Witness from a permutation-matrix source onto any target it dominates."""
    fam = min_dominating_family(b)
    assert fam is not None and len(fam) <= a.n_plus
    d = len(fam)
    row_of_col = {}
    for i, row in enumerate(a.rows):
        row_of_col[a.n_plus - row.bit_length()] = i
    phi_plus = tuple(fam[min(x, d - 1)] for x in range(a.n_plus))
    phi_minus = []
    for y in range(b.n_minus):
        t = next(t for t in range(d) if b.has_pair(y, fam[t]))
        phi_minus.append(row_of_col[t])
    w = MorphismWitness(tuple(phi_minus), phi_plus)
    assert check_morphism(a, b, w)
    return w


def shortcut_witness(a: Relation, b: Relation, da, dda, db, ddb):
    """Decide via dominating numbers alone where possible.

    Returns a witness (morphism exists), False (provably none), or None
    (inconclusive, run the search).  The caller passes the four dominating
    numbers so bulk users can precompute them.
    """
    if db == 1:
        return _delta_one_witness(a, b)
    if da == INFINITE:
        return _empty_row_witness(a, b)
    if da < db or ddb < dda:
        return False
    n = is_ladder(a)
    if n is not None and db <= n:
        return _ladder_witness(a, b)
    return None


def find_morphism(a: Relation, b: Relation,
                  cfg: SolverConfig = SolverConfig()) -> Optional[MorphismWitness]:
    """Complete decision: a witness iff a morphism exists.

    Raises NodeLimitExceeded when a node budget is set and hit, which is
    distinct from a definite no.
    """
    if cfg.shortcuts_enabled:
        verdict = shortcut_witness(
            a, b,
            dominating_number(a), dual_dominating_number(a),
            dominating_number(b), dual_dominating_number(b))
        if verdict is False:
            return None
        if verdict is not None:
            return verdict
    return search_morphism(a, b, cfg.node_limit)


def exists_morphism(a: Relation, b: Relation,
                    cfg: SolverConfig = SolverConfig()) -> bool:
    return find_morphism(a, b, cfg) is not None


def compose(w1: MorphismWitness, w2: MorphismWitness) -> MorphismWitness:
    """Witness a->c from witnesses w1: a->b and w2: b->c."""
    if any(not 0 <= v < len(w1.phi_minus) for v in w2.phi_minus):
        raise WitnessError("middle relation minus sides do not match")
    if any(not 0 <= v < len(w2.phi_plus) for v in w1.phi_plus):
        raise WitnessError("middle relation plus sides do not match")
    phi_minus = tuple(w1.phi_minus[y] for y in w2.phi_minus)
    phi_plus = tuple(w2.phi_plus[v] for v in w1.phi_plus)
    return MorphismWitness(phi_minus, phi_plus)


def transpose_witness(w: MorphismWitness) -> MorphismWitness:
    """The same maps read as a morphism dual(b) -> dual(a)."""
    return MorphismWitness(phi_minus=w.phi_plus, phi_plus=w.phi_minus)


def dominating_family_pushforward(a: Relation, b: Relation, w: MorphismWitness,
                                  family) -> tuple[int, ...]:
    """Image under phi_plus of a dominating family; dominates the target."""
    family = tuple(family)
    if not dominates(a, family):
        raise ValueError("family does not dominate the source relation")
    if not check_morphism(a, b, w):
        raise WitnessError("witness fails the morphism condition")
    image = tuple(sorted({w.phi_plus[x] for x in family}))
    assert dominates(b, image)
    return image


def render_witness(w: MorphismWitness) -> str:
    return ("PHI- " + " ".join(str(i) for i in w.phi_minus) + "\n"
            + "PHI+ " + " ".join(str(j) for j in w.phi_plus))


def parse_witness(text: str) -> MorphismWitness:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2 or not lines[0].startswith("PHI-") or not lines[1].startswith("PHI+"):
        raise WitnessError("expected a PHI- line then a PHI+ line")
    try:
        minus = tuple(int(t) for t in lines[0][4:].split())
        plus = tuple(int(t) for t in lines[1][4:].split())
    except ValueError:
        raise WitnessError("witness entries must be integers") from None
    return MorphismWitness(minus, plus)


def homomorphism_shortcut(a: Relation, b: Relation) -> Optional[MorphismWitness]:
    """Morphism from a point map preserving and reflecting pairs.

    Searches for psi sending a's minus side into b's minus side and a's
    plus side into b's plus side with a(x, u) = b(psi(x), psi(u)) for all
    pairs, psi surjective on the minus side.  Success yields the witness
    (right inverse of psi on minus, psi on plus).  None only means the
    shortcut does not apply, never that no morphism exists.
    """
    m, n = a.n_minus, a.n_plus
    psi_minus: list[Optional[int]] = [None] * m
    psi_plus: list[Optional[int]] = [None] * n
    # alternate sides so pair constraints bind as early as possible
    vars_order: list[tuple[str, int]] = []
    for t in range(max(m, n)):
        if t < m:
            vars_order.append(("minus", t))
        if t < n:
            vars_order.append(("plus", t))

    def consistent_minus(x: int, y: int) -> bool:
        return all(psi_plus[u] is None or a.has_pair(x, u) == b.has_pair(y, psi_plus[u])
                   for u in range(n))

    def consistent_plus(u: int, v: int) -> bool:
        return all(psi_minus[x] is None or a.has_pair(x, u) == b.has_pair(psi_minus[x], v)
                   for x in range(m))

    def backtrack(k: int) -> bool:
        if k == len(vars_order):
            return set(psi_minus) == set(range(b.n_minus))
        side, idx = vars_order[k]
        if side == "minus":
            missing = b.n_minus - len({v for v in psi_minus if v is not None})
            if m - idx < missing:
                return False
            for y in range(b.n_minus):
                if consistent_minus(idx, y):
                    psi_minus[idx] = y
                    if backtrack(k + 1):
                        return True
                    psi_minus[idx] = None
            return False
        for v in range(b.n_plus):
            if consistent_plus(idx, v):
                psi_plus[idx] = v
                if backtrack(k + 1):
                    return True
                psi_plus[idx] = None
        return False

    if not backtrack(0):
        return None
    g = [min(x for x in range(m) if psi_minus[x] == y) for y in range(b.n_minus)]
    w = MorphismWitness(tuple(g), tuple(psi_plus))
    assert check_morphism(a, b, w)
    return w


@dataclass(frozen=True)
class UnionDecomposition:
    minus_first: tuple[int, ...]
    plus_first: tuple[int, ...]
    minus_second: tuple[int, ...]
    plus_second: tuple[int, ...]
    first: Relation
    second: Relation
    witness_first: MorphismWitness
    witness_second: MorphismWitness


def decompose_against_union(c: Relation, b: Relation, b2: Relation,
                            w: MorphismWitness) -> UnionDecomposition:
    """Split a morphism into a block union into one morphism per block.

    The first part's minus side is the image of phi_minus on b's points and
    its plus side everything adjacent to that image; the second part is the
    complement.  phi_minus can route a second-block point onto a zero row
    inside the first part (only zero rows can collide); such points are
    remapped to a row of the second part with no neighbors there when one
    exists, and otherwise the second leg falls back to a fresh search.
    DecompositionError signals a degenerate partition or a failed second
    leg, which genuinely can occur for adversarial witnesses.
    """
    u = disjoint_union(b, b2)
    if not check_morphism(c, u, w):
        raise WitnessError("witness fails against the disjoint union")

    minus_first = tuple(sorted({w.phi_minus[y] for y in range(b.n_minus)}))
    in_first = set(minus_first)
    plus_first = tuple(x for x in range(c.n_plus)
                       if any(c.has_pair(i, x) for i in minus_first))
    minus_second = tuple(i for i in range(c.n_minus) if i not in in_first)
    plus_second = tuple(x for x in range(c.n_plus) if x not in set(plus_first))
    if not plus_first or not minus_second or not plus_second:
        raise DecompositionError("partition degenerates: a part has an empty side")

    first = induced_subrelation(c, minus_first, plus_first)
    second = induced_subrelation(c, minus_second, plus_second)
    pos1m = {i: p for p, i in enumerate(minus_first)}
    pos2m = {i: p for p, i in enumerate(minus_second)}
    pos2p = {x: p for p, x in enumerate(plus_second)}

    w1 = MorphismWitness(
        tuple(pos1m[w.phi_minus[y]] for y in range(b.n_minus)),
        tuple(w.phi_plus[x] for x in plus_first))
    if not check_morphism(first, b, w1):
        raise AssertionError("first-leg witness must verify by construction")

    # second leg: collisions land only on rows with no neighbors at all
    imgs = [w.phi_minus[b.n_minus + y2] for y2 in range(b2.n_minus)]
    collision = [i in in_first for i in imgs]
    safe = next((pos2m[i] for i in minus_second if second.rows[pos2m[i]] == 0), None)
    w2 = None
    if not any(collision) or safe is not None:
        psi_minus = tuple(safe if hit else pos2m[i] for i, hit in zip(imgs, collision))
        # a second-block point anchored to a kept image row is guaranteed a
        # second-block target; unanchored points are unconstrained, 0 will do
        psi_plus = tuple(w.phi_plus[x] - b.n_plus if w.phi_plus[x] >= b.n_plus else 0
                         for x in plus_second)
        cand = MorphismWitness(psi_minus, psi_plus)
        if check_morphism(second, b2, cand):
            w2 = cand
    if w2 is None:
        w2 = search_morphism(second, b2)
    if w2 is None:
        raise DecompositionError(
            "second leg admits no morphism under this witness's partition")

    return UnionDecomposition(minus_first, plus_first, minus_second, plus_second,
                              first, second, w1, w2)
