"""Literals, generalized patterns, labeled databases and constraint predicates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

Transaction = frozenset  # frozenset[int] of item ids

INF = math.inf


@dataclass(frozen=True, order=True)
class Literal:
    """An item taken positively (present) or negatively (absent).

    Ordering is canonical: ascending item index, positive before negative.
    """

    item: int
    negated: bool = False

    def __post_init__(self):
        if self.item < 0:
            raise ValueError(f"item index must be non-negative, got {self.item}")

    @property
    def code(self) -> int:
        return 2 * self.item + int(self.negated)

    @classmethod
    def from_code(cls, code: int) -> Literal:
        return cls(code >> 1, bool(code & 1))

    def complement(self) -> Literal:
        return Literal(self.item, not self.negated)

    def __str__(self):
        return f"!{self.item}" if self.negated else str(self.item)

    @classmethod
    def parse(cls, token: str) -> Literal:
        if token.startswith("!"):
            return cls(int(token[1:]), True)
        return cls(int(token))


@dataclass(frozen=True)
class Pattern:
    """A generalized itemset: a conjunction of literals in canonical order."""

    literals: tuple[Literal, ...] = ()

    def __post_init__(self):
        lits = tuple(sorted(set(self.literals)))
        items = [lit.item for lit in lits]
        if len(items) != len(set(items)):
            raise ValueError(f"pattern contains complementary literals: {lits}")
        object.__setattr__(self, "literals", lits)

    @classmethod
    def of(cls, *literals: Literal | int | str) -> Pattern:
        lits = []
        for lit in literals:
            if isinstance(lit, str):
                lit = Literal.parse(lit)
            elif isinstance(lit, int):
                lit = Literal(lit)
            lits.append(lit)
        return cls(tuple(lits))

    @classmethod
    def parse(cls, text: str) -> Pattern:
        return cls(tuple(Literal.parse(tok) for tok in text.split()))

    @property
    def positive_items(self) -> frozenset[int]:
        return frozenset(lit.item for lit in self.literals if not lit.negated)

    @property
    def negative_items(self) -> frozenset[int]:
        return frozenset(lit.item for lit in self.literals if lit.negated)

    def sort_key(self) -> tuple:
        return (len(self.literals), tuple(lit.code for lit in self.literals))

    def issubset(self, other: Pattern) -> bool:
        return set(self.literals) <= set(other.literals)

    def __len__(self):
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __str__(self):
        return " ".join(str(lit) for lit in self.literals)


@dataclass(frozen=True)
class LabeledDatabase:
    """Positive and negative transactions over items ``0..universe_size-1``.

    Transactions always hold the raw item sets. With ``negation_enabled`` the
    literal universe doubles and :meth:`literal_rows` materializes the absent
    items as negative literals.
    """

    universe_size: int
    positives: tuple[Transaction, ...] = ()
    negatives: tuple[Transaction, ...] = ()
    negation_enabled: bool = False

    def __post_init__(self):
        if self.universe_size < 0:
            raise ValueError("universe_size must be non-negative")
        pos = tuple(frozenset(t) for t in self.positives)
        neg = tuple(frozenset(t) for t in self.negatives)
        for t in pos + neg:
            for item in t:
                if not 0 <= item < self.universe_size:
                    raise ValueError(
                        f"item {item} outside universe of size {self.universe_size}"
                    )
        object.__setattr__(self, "positives", pos)
        object.__setattr__(self, "negatives", neg)

    @property
    def n_plus(self) -> int:
        return len(self.positives)

    @property
    def n_minus(self) -> int:
        return len(self.negatives)

    def literals(self) -> list[Literal]:
        """The literal universe in canonical order (n or 2n literals)."""
        if self.negation_enabled:
            return [Literal(i, neg) for i in range(self.universe_size) for neg in (False, True)]
        return [Literal(i) for i in range(self.universe_size)]

    def literal_rows(self, positive: bool = True) -> list[frozenset[Literal]]:
        txs = self.positives if positive else self.negatives
        if not self.negation_enabled:
            return [frozenset(Literal(i) for i in t) for t in txs]
        n = self.universe_size
        return [frozenset(Literal(i, i not in t) for i in range(n)) for t in txs]

    def encode(self) -> tuple[list[Literal], list[list[int]], list[list[int]]]:
        """Column encoding used by the search engine.

        Returns the literal universe and, per class, each row as the sorted
        list of column indices (positions in the literal universe).
        """
        lits = self.literals()
        index = {lit: j for j, lit in enumerate(lits)}
        pos = [sorted(index[lit] for lit in row) for row in self.literal_rows(True)]
        neg = [sorted(index[lit] for lit in row) for row in self.literal_rows(False)]
        return lits, pos, neg

    def density(self) -> float:
        """Mean fraction of the item universe present per transaction."""
        rows = self.positives + self.negatives
        if not rows or self.universe_size == 0:
            return 0.0
        return sum(len(t) for t in rows) / (len(rows) * self.universe_size)


@dataclass(frozen=True)
class MiningParams:
    sigma_plus: int = 1
    sigma_minus: int = 0
    theta: float = INF
    gamma: float = 0.0
    max_len: int | None = None

    def __post_init__(self):
        if self.sigma_plus < 0 or self.sigma_minus < 0:
            raise ValueError("support thresholds must be non-negative")
        if not self.theta >= 0:
            raise ValueError(f"theta must be >= 0, got {self.theta}")
        if not self.gamma >= 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.max_len is not None and self.max_len < 1:
            raise ValueError("max_len must be >= 1 or None")

    def check(self, db: LabeledDatabase) -> None:
        if self.sigma_plus > db.n_plus:
            raise ValueError(f"sigma_plus={self.sigma_plus} exceeds |D+|={db.n_plus}")
        if self.sigma_minus > db.n_minus:
            raise ValueError(f"sigma_minus={self.sigma_minus} exceeds |D-|={db.n_minus}")


@dataclass(frozen=True)
class PatternStats:
    sup_plus: int
    sup_minus: int
    growth_rate: float
    chi2: float

    @classmethod
    def from_counts(cls, sup_plus: int, sup_minus: int, n_plus: int, n_minus: int) -> PatternStats:
        chi2 = chi_square(sup_plus, sup_minus, n_plus, n_minus) if n_plus + n_minus else 0.0
        return cls(sup_plus, sup_minus, growth_rate(sup_plus, sup_minus), chi2)

    @classmethod
    def compute(cls, pattern: Pattern, db: LabeledDatabase) -> PatternStats:
        return cls.from_counts(
            support(pattern, db.positives), support(pattern, db.negatives), db.n_plus, db.n_minus
        )


def occurs(pattern: Pattern, tx: Iterable[int]) -> bool:
    """True iff all positive literals of ``pattern`` are in ``tx`` and no negated one is."""
    tx = tx if isinstance(tx, (set, frozenset)) else set(tx)
    for lit in pattern.literals:
        if (lit.item in tx) == lit.negated:
            return False
    return True


def support(pattern: Pattern, txs: Sequence[Iterable[int]]) -> int:
    return sum(1 for t in txs if occurs(pattern, t))


def growth_rate(sup_plus: int, sup_minus: int) -> float:
    if sup_minus == 0:
        return INF if sup_plus > 0 else 0.0
    return sup_plus / sup_minus


def chi_square(sup_plus: int, sup_minus: int, n_plus: int, n_minus: int) -> float:
    """Pearson chi-square of the 2x2 table (pattern present/absent by class).

    Degenerate tables (any zero marginal) score 0.
    """
    if not (0 <= sup_plus <= n_plus and 0 <= sup_minus <= n_minus):
        raise ValueError(
            f"invalid contingency counts ({sup_plus}, {sup_minus}) for sizes ({n_plus}, {n_minus})"
        )
    n = n_plus + n_minus
    if n == 0:
        raise ValueError("chi_square needs at least one transaction")
    a, b = sup_plus, sup_minus
    c, d = n_plus - a, n_minus - b
    denom = (a + b) * (c + d) * (a + c) * (b + d)
    if denom == 0:
        return 0.0
    return n * (a * d - b * c) ** 2 / denom


def satisfies(stats: PatternStats, params: MiningParams) -> bool:
    return (
        stats.sup_plus >= params.sigma_plus
        and stats.sup_minus <= params.sigma_minus
        and stats.growth_rate >= params.theta
        and stats.chi2 >= params.gamma
    )


def augment_with_negation(db: LabeledDatabase) -> LabeledDatabase:
    if db.negation_enabled:
        raise ValueError("database already has negation enabled")
    return LabeledDatabase(db.universe_size, db.positives, db.negatives, negation_enabled=True)
