"""Brute-force reference miner for small literal universes.

Enumerates every consistent pattern, evaluates the constraint from raw
occurrence sets and filters by checking all proper subsets. Shares nothing
with the search engine beyond the predicates in :mod:`mincp.model`.
"""

from __future__ import annotations

from itertools import combinations

from .model import (
    LabeledDatabase,
    Literal,
    MiningParams,
    Pattern,
    PatternStats,
    occurs,
    satisfies,
)

MAX_LITERALS = 20


def _occurrence_masks(db: LabeledDatabase, literals: list[Literal]):
    """Per literal, the bitmask of positive and of negative transactions it occurs in."""
    masks = []
    for lit in literals:
        single = Pattern((lit,))
        pos = sum(1 << k for k, t in enumerate(db.positives) if occurs(single, t))
        neg = sum(1 << k for k, t in enumerate(db.negatives) if occurs(single, t))
        masks.append((pos, neg))
    return masks


def enumerate_minimal(db: LabeledDatabase, params: MiningParams) -> dict[Pattern, PatternStats]:
    """Exactly the minimal members of the constraint, with their statistics."""
    literals = db.literals()
    if len(literals) > MAX_LITERALS:
        raise ValueError(
            f"oracle limited to {MAX_LITERALS} literals, database has {len(literals)}"
        )
    params.check(db)
    masks = _occurrence_masks(db, literals)
    max_len = len(literals) if params.max_len is None else params.max_len
    all_pos = (1 << db.n_plus) - 1
    all_neg = (1 << db.n_minus) - 1

    # every pattern in C as a frozenset of literal indices
    in_c: dict[frozenset[int], PatternStats] = {}

    def visit(start: int, chosen: list[int], items: set[int], pos: int, neg: int) -> None:
        st = PatternStats.from_counts(pos.bit_count(), neg.bit_count(), db.n_plus, db.n_minus)
        if satisfies(st, params):
            in_c[frozenset(chosen)] = st
        if len(chosen) == max_len:
            return
        for k in range(start, len(literals)):
            item = literals[k].item
            if item in items:
                continue
            chosen.append(k)
            items.add(item)
            visit(k + 1, chosen, items, pos & masks[k][0], neg & masks[k][1])
            items.discard(item)
            chosen.pop()

    visit(0, [], set(), all_pos, all_neg)

    result = {}
    for cols, st in in_c.items():
        proper = (
            frozenset(sub)
            for size in range(len(cols))
            for sub in combinations(sorted(cols), size)
        )
        if not any(sub in in_c for sub in proper):
            result[Pattern(tuple(literals[k] for k in cols))] = st
    return result
