"""Point classification and the skeleton reduction.

A minus point is non-minimal when another minus point has a strictly
smaller neighborhood; a plus point is non-maximal when another plus point
has a strictly larger one; twins are same-side points with identical
neighborhoods.  The reduction deletes, round by round, every currently
non-minimal minus point together with every currently non-maximal plus
point, and when no such points remain collapses each twin class to its
lowest-index member.  The result (the skeleton) is bimorphic with the
input and is a fixpoint of the whole procedure.

Traces record deletions by the indices of the original input relation, so
replaying a trace against the input reproduces the final relation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .relation import Relation, canonical_form, induced_subrelation


@dataclass(frozen=True)
class PointClassification:
    non_minimal_minus: frozenset[int]
    non_maximal_plus: frozenset[int]
    twin_classes_minus: tuple[tuple[int, ...], ...]
    twin_classes_plus: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TraceStep:
    round: int
    reason: str  # non-minimal | non-maximal | twins
    minus: tuple[int, ...]
    plus: tuple[int, ...]


@dataclass(frozen=True)
class SkeletonTrace:
    steps: tuple[TraceStep, ...]
    final: Relation


def _strict_subset_exists(words: list[int]) -> set[int]:
    """Indices whose word strictly contains some other listed word."""
    out = set()
    for i, wi in enumerate(words):
        for j, wj in enumerate(words):
            if i != j and wj != wi and wj & wi == wj:
                out.add(i)
                break
    return out


def _twin_partition(words: list[int]) -> tuple[tuple[int, ...], ...]:
    groups: dict[int, list[int]] = {}
    for i, w in enumerate(words):
        groups.setdefault(w, []).append(i)
    return tuple(tuple(g) for g in sorted(groups.values()))


def classify_points(r: Relation) -> PointClassification:
    rows = list(r.rows)
    cols = [r.col_word(j) for j in range(r.n_plus)]
    non_minimal = _strict_subset_exists(rows)
    # a plus point is non-maximal when its neighborhood sits strictly inside
    # another's, which is the same containment test run on the columns in
    # the other direction
    non_maximal = set()
    for j, wj in enumerate(cols):
        for j2, w2 in enumerate(cols):
            if j != j2 and w2 != wj and wj & w2 == wj:
                non_maximal.add(j)
                break
    return PointClassification(
        non_minimal_minus=frozenset(non_minimal),
        non_maximal_plus=frozenset(non_maximal),
        twin_classes_minus=_twin_partition(rows),
        twin_classes_plus=_twin_partition(cols),
    )


def skeleton(r: Relation) -> tuple[Relation, SkeletonTrace]:
    kept_minus = list(range(r.n_minus))
    kept_plus = list(range(r.n_plus))
    steps: list[TraceStep] = []
    round_no = 0
    while True:
        current = induced_subrelation(r, kept_minus, kept_plus)
        cls = classify_points(current)
        if not cls.non_minimal_minus and not cls.non_maximal_plus:
            break
        round_no += 1
        # classification indexes the current relation; report original indices
        del_minus = tuple(kept_minus[i] for i in sorted(cls.non_minimal_minus))
        del_plus = tuple(kept_plus[j] for j in sorted(cls.non_maximal_plus))
        if del_minus:
            steps.append(TraceStep(round_no, "non-minimal", del_minus, ()))
        if del_plus:
            steps.append(TraceStep(round_no, "non-maximal", (), del_plus))
        kept_minus = [i for i in kept_minus if i not in set(del_minus)]
        kept_plus = [j for j in kept_plus if j not in set(del_plus)]

    current = induced_subrelation(r, kept_minus, kept_plus)
    cls = classify_points(current)
    surplus_minus = tuple(
        kept_minus[i] for g in cls.twin_classes_minus if len(g) > 1 for i in g[1:])
    surplus_plus = tuple(
        kept_plus[j] for g in cls.twin_classes_plus if len(g) > 1 for j in g[1:])
    if surplus_minus or surplus_plus:
        round_no += 1
        steps.append(TraceStep(round_no, "twins", surplus_minus, surplus_plus))
        kept_minus = [i for i in kept_minus if i not in set(surplus_minus)]
        kept_plus = [j for j in kept_plus if j not in set(surplus_plus)]

    final = induced_subrelation(r, kept_minus, kept_plus)
    return final, SkeletonTrace(steps=tuple(steps), final=final)


def is_skeletal(r: Relation) -> bool:
    cls = classify_points(r)
    return (not cls.non_minimal_minus and not cls.non_maximal_plus
            and all(len(g) == 1 for g in cls.twin_classes_minus)
            and all(len(g) == 1 for g in cls.twin_classes_plus))


def render_trace(trace: SkeletonTrace) -> str:
    lines = []
    for s in trace.steps:
        minus = ",".join(str(i) for i in s.minus)
        plus = ",".join(str(j) for j in s.plus)
        lines.append(
            f"round {s.round}: deleted minus={{{minus}}} plus={{{plus}}} reason={s.reason}")
    return "\n".join(lines)


def replay_trace(r: Relation, trace: SkeletonTrace) -> Relation:
    """Apply a trace's deletions to the input; must reproduce trace.final."""
    gone_minus = {i for s in trace.steps for i in s.minus}
    gone_plus = {j for s in trace.steps for j in s.plus}
    return induced_subrelation(
        r,
        [i for i in range(r.n_minus) if i not in gone_minus],
        [j for j in range(r.n_plus) if j not in gone_plus],
    )


@dataclass(frozen=True)
class RandomizedReport:
    trials: int
    outcomes: tuple[tuple[Relation, int], ...]  # canonical form, count
    matches_deterministic: bool


def skeleton_randomized(r: Relation, seed: int, trials: int) -> RandomizedReport:
    """Repeatedly delete one random deletable or twin-surplus point per step.

    Each trial runs until no deletable point remains, then the outcome's
    canonical form is tallied.  The report records whether every outcome is
    isomorphic to the deterministic skeleton; the question of order
    independence is probed, not assumed.
    """
    rng = random.Random(seed)
    deterministic = canonical_form(skeleton(r)[0])
    counts: dict[Relation, int] = {}
    for _ in range(trials):
        kept_minus = list(range(r.n_minus))
        kept_plus = list(range(r.n_plus))
        while True:
            current = induced_subrelation(r, kept_minus, kept_plus)
            cls = classify_points(current)
            candidates = [("minus", i) for i in sorted(cls.non_minimal_minus)]
            candidates += [("plus", j) for j in sorted(cls.non_maximal_plus)]
            for g in cls.twin_classes_minus:
                if len(g) > 1:
                    candidates += [("minus", i) for i in g]
            for g in cls.twin_classes_plus:
                if len(g) > 1:
                    candidates += [("plus", j) for j in g]
            if not candidates:
                break
            seen = set()
            unique = [c for c in candidates if not (c in seen or seen.add(c))]
            side, idx = rng.choice(unique)
            if side == "minus":
                kept_minus.pop(idx)
            else:
                kept_plus.pop(idx)
        outcome = canonical_form(induced_subrelation(r, kept_minus, kept_plus))
        counts[outcome] = counts.get(outcome, 0) + 1
    outcomes = tuple(sorted(counts.items(), key=lambda kv: (kv[0].n_minus, kv[0].n_plus, kv[0].rows)))
    matches = all(o.rows == deterministic.rows and (o.n_minus, o.n_plus) ==
                  (deterministic.n_minus, deterministic.n_plus) for o, _ in counts.items())
    return RandomizedReport(trials=trials, outcomes=outcomes, matches_deterministic=matches)
