"""Depth-first search for minimal constrained patterns.

The search keeps one :class:`~mincp.drmx.Drmx` per class, always reduced to
the rows containing the current pattern ``P`` and to the columns of the
undecided literals ``B``. Every node therefore reads its supports and bounds
straight off the matrix counters.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from enum import Enum

from .drmx import Drmx
from .model import (
    LabeledDatabase,
    MiningParams,
    Pattern,
    PatternStats,
    chi_square,
    growth_rate,
)

# relative slack on the chi-square corner bound against rounding
_CHI_SLACK = 1e-9


class Ordering(str, Enum):
    DYNAMIC = "dynamic"
    STATIC_LEX = "static-lex"
    STATIC_NEGFREQ = "static-negfreq"


class BranchOrder(str, Enum):
    INCLUDE_FIRST = "include-first"
    EXCLUDE_FIRST = "exclude-first"


class SearchAborted(Exception):
    """A run hit one of the limits in :class:`MinerConfig`."""


class SearchTimeout(SearchAborted):
    pass


class NodeLimitExceeded(SearchAborted):
    pass


@dataclass(frozen=True)
class MinerConfig:
    ordering: Ordering = Ordering.DYNAMIC
    prune_lb: bool = True
    prune_nc: bool = True
    branch_order: BranchOrder = BranchOrder.INCLUDE_FIRST
    # drop columns with zero positive support when sigma_plus >= 1
    prune_zero_pos: bool = False
    time_limit: float | None = None
    node_limit: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "ordering", Ordering(self.ordering))
        object.__setattr__(self, "branch_order", BranchOrder(self.branch_order))

    @property
    def label(self) -> str:
        pruning = {(True, True): "both", (True, False): "lb", (False, True): "nc",
                   (False, False): "none"}[self.prune_lb, self.prune_nc]
        return f"{self.ordering.value}+{pruning}"


@dataclass
class SearchStats:
    nodes_visited: int = 0
    prune1_hits: int = 0
    prune2_hits: int = 0
    prune3_hits: int = 0
    prune4_removals: int = 0
    candidates_found: int = 0
    wall_time: float = 0.0
    nc_disabled: bool = False

    def counters(self) -> dict[str, int]:
        """Machine-independent counters (everything except wall time)."""
        return {
            "nodes_visited": self.nodes_visited,
            "prune1_hits": self.prune1_hits,
            "prune2_hits": self.prune2_hits,
            "prune3_hits": self.prune3_hits,
            "prune4_removals": self.prune4_removals,
            "candidates_found": self.candidates_found,
        }


def nc_is_safe(params: MiningParams, n_plus: int, n_minus: int) -> bool:
    """Whether conservative-literal removal is sound for these parameters.

    Removing a literal ``a`` with Sup-(P) = Sup-(P+a) needs P+a in C to imply
    P in C. Support and growth-rate constraints give that for free, but the
    two-sided chi-square can grow when Sup+ drops. It is monotone in Sup+ only
    on the positively associated side, which the growth-rate threshold
    guarantees once theta >= |D+|/|D-|.
    """
    if params.gamma <= 0:
        return True
    if n_minus == 0:
        # every table is degenerate, chi2 == 0 < gamma: C is empty
        return True
    return params.theta >= n_plus / n_minus


class Miner:
    """One mining run over a labeled database."""

    def __init__(self, db: LabeledDatabase, params: MiningParams, config: MinerConfig = MinerConfig()):
        params.check(db)
        self.db, self.params, self.config = db, params, config
        self.literals, pos_rows, neg_rows = db.encode()
        n_cols = len(self.literals)
        self.dplus = Drmx(pos_rows, n_cols)
        self.dminus = Drmx(neg_rows, n_cols)
        # column of the complementary literal, -1 without negation
        index = {lit: j for j, lit in enumerate(self.literals)}
        self.complement = [index.get(lit.complement(), -1) for lit in self.literals]
        if config.ordering is Ordering.STATIC_NEGFREQ:
            counts = self.dminus.col_size
            order = sorted(range(n_cols), key=lambda c: (counts[c], c))
            self.rank = [0] * n_cols
            for pos, c in enumerate(order):
                self.rank[c] = pos
        else:
            self.rank = list(range(n_cols))
        self.stats = SearchStats()
        self.use_nc = config.prune_nc and nc_is_safe(params, db.n_plus, db.n_minus)
        self.stats.nc_disabled = config.prune_nc and not self.use_nc
        self.candidates: dict[tuple[int, ...], PatternStats] = {}
        self._deadline = None

    # hook for instrumentation in tests
    def _on_node(self, path: list[int]) -> None:
        pass

    def run(self) -> tuple[dict[Pattern, PatternStats], SearchStats]:
        start = time.perf_counter()
        if self.config.time_limit is not None:
            self._deadline = start + self.config.time_limit
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 4 * len(self.literals) + 200))
        try:
            self.find_candidates([])
        finally:
            self.stats.wall_time = time.perf_counter() - start
            sys.setrecursionlimit(limit)
        minimal = extract_minimal(self.candidates)
        out = {self.to_pattern(cols): self.candidates[cols] for cols in minimal}
        return out, self.stats

    def to_pattern(self, cols) -> Pattern:
        return Pattern(tuple(self.literals[c] for c in cols))

    def select_branch_item(self) -> int:
        """Pick the branching column among the active ones of D-."""
        dminus = self.dminus
        ordering = self.config.ordering
        if ordering is Ordering.DYNAMIC:
            sizes = dminus.col_size
            return min(dminus.active_columns(), key=lambda c: (sizes[c], c))
        if ordering is Ordering.STATIC_NEGFREQ:
            rank = self.rank
            return min(dminus.active_columns(), key=rank.__getitem__)
        return next(dminus.active_columns())

    def find_candidates(self, path: list[int]) -> None:
        stats, params = self.stats, self.params
        dplus, dminus = self.dplus, self.dminus
        stats.nodes_visited += 1
        if self._deadline is not None and stats.nodes_visited & 0xFF == 1:
            if time.perf_counter() > self._deadline:
                raise SearchTimeout(f"exceeded {self.config.time_limit}s")
        if self.config.node_limit is not None and stats.nodes_visited > self.config.node_limit:
            raise NodeLimitExceeded(f"visited more than {self.config.node_limit} nodes")
        self._on_node(path)

        occ_plus = dplus.count_rows()
        occ_minus = dminus.count_rows()
        n_plus, n_minus = dplus.n_rows, dminus.n_rows

        # a satisfying pattern is a candidate; its extensions are not minimal
        gr = growth_rate(occ_plus, occ_minus)
        if (occ_plus >= params.sigma_plus and occ_minus <= params.sigma_minus
                and gr >= params.theta):
            chi2 = chi_square(occ_plus, occ_minus, n_plus, n_minus) if n_plus + n_minus else 0.0
            if chi2 >= params.gamma:
                key = tuple(sorted(path))
                if key not in self.candidates:
                    self.candidates[key] = PatternStats(occ_plus, occ_minus, gr, chi2)
                    stats.candidates_found += 1
                stats.prune1_hits += 1
                return

        # Sup+ is anti-monotone: no descendant can recover the positive threshold
        if occ_plus < params.sigma_plus:
            stats.prune3_hits += 1
            return

        if self.config.prune_lb:
            # Sup-(P u B) bounds Sup- of every descendant from below
            lb_minus = dminus.count_full_rows()
            if lb_minus > params.sigma_minus:
                stats.prune2_hits += 1
                return
            # growth-rate and chi-square upper bounds
            if lb_minus > 0 and occ_plus / lb_minus < params.theta:
                stats.prune3_hits += 1
                return
            if params.gamma > 0:
                lb_plus = dplus.count_full_rows()
                bound = max(
                    chi_square(a, b, n_plus, n_minus)
                    for a in (lb_plus, occ_plus)
                    for b in (lb_minus, occ_minus)
                ) if n_plus + n_minus else 0.0
                if bound * (1 + _CHI_SLACK) < params.gamma:
                    stats.prune3_hits += 1
                    return

        mark_plus, mark_minus = dplus.checkpoint(), dminus.checkpoint()
        try:
            self._reduce_and_branch(path, occ_minus)
        finally:
            dplus.undo_to(mark_plus)
            dminus.undo_to(mark_minus)

    def _reduce_and_branch(self, path: list[int], occ_minus: int) -> None:
        stats, params = self.stats, self.params
        dplus, dminus = self.dplus, self.dminus
        # conservative literals never lead to minimal patterns
        if self.use_nc:
            sizes = dminus.col_size
            doomed = [c for c in dminus.active_columns() if sizes[c] == occ_minus]
            for c in doomed:
                dplus.delete_column(c)
                dminus.delete_column(c)
            stats.prune4_removals += len(doomed)
        if self.config.prune_zero_pos and params.sigma_plus >= 1:
            sizes = dplus.col_size
            for c in [c for c in dplus.active_columns() if sizes[c] == 0]:
                dplus.delete_column(c)
                dminus.delete_column(c)

        if dminus.active_cols == 0:
            return
        if params.max_len is not None and len(path) >= params.max_len:
            return

        branch = self.select_branch_item()
        mark_plus, mark_minus = dplus.checkpoint(), dminus.checkpoint()
        if self.config.branch_order is BranchOrder.INCLUDE_FIRST:
            self._include(path, branch)
            dplus.undo_to(mark_plus)
            dminus.undo_to(mark_minus)
            self._exclude(path, branch)
        else:
            self._exclude(path, branch)
            dplus.undo_to(mark_plus)
            dminus.undo_to(mark_minus)
            self._include(path, branch)

    def _include(self, path: list[int], c: int) -> None:
        for m in (self.dplus, self.dminus):
            m.reduce_to_rows_with(c)
            m.delete_column(c)
            comp = self.complement[c]
            if comp >= 0 and m.col_live[comp]:
                m.delete_column(comp)
        path.append(c)
        try:
            self.find_candidates(path)
        finally:
            path.pop()

    def _exclude(self, path: list[int], c: int) -> None:
        self.dplus.delete_column(c)
        self.dminus.delete_column(c)
        self.find_candidates(path)


class SetTrie:
    """Trie over sorted integer tuples answering "is any stored set a subset of s"."""

    __slots__ = ("children", "terminal")

    def __init__(self):
        self.children: dict[int, SetTrie] = {}
        self.terminal = False

    def add(self, items) -> None:
        node = self
        for x in items:
            node = node.children.setdefault(x, SetTrie())
        node.terminal = True

    def has_subset(self, items, start: int = 0) -> bool:
        if self.terminal:
            return True
        for k in range(start, len(items)):
            child = self.children.get(items[k])
            if child is not None and child.has_subset(items, k + 1):
                return True
        return False


def extract_minimal(candidates) -> list[tuple[int, ...]]:
    """Keep the candidates that have no proper subset among the candidates.

    ``candidates`` is an iterable of sorted integer tuples; shorter ones are
    accepted first so each test only looks at strictly smaller sets.
    """
    trie = SetTrie()
    kept = []
    by_size: dict[int, list] = {}
    for cand in set(candidates):
        by_size.setdefault(len(cand), []).append(cand)
    for size in sorted(by_size):
        batch = sorted(by_size[size])
        accepted = [c for c in batch if not trie.has_subset(c)]
        for c in accepted:
            trie.add(c)
        kept.extend(accepted)
    return kept


def minimal_patterns(patterns) -> set[Pattern]:
    """Subset filter over :class:`Pattern` objects."""
    patterns = list(patterns)
    keyed = {tuple(lit.code for lit in p): p for p in patterns}
    return {keyed[k] for k in extract_minimal(keyed)}


def mine(
    db: LabeledDatabase,
    params: MiningParams,
    config: MinerConfig = MinerConfig(),
) -> tuple[dict[Pattern, PatternStats], SearchStats]:
    """All minimal patterns of CP[s+, s-] n GR[theta] n CHI[gamma] up to ``max_len``."""
    return Miner(db, params, config).run()


def all_configs(
    orderings=(Ordering.DYNAMIC, Ordering.STATIC_LEX), **kwargs
) -> list[MinerConfig]:
    """Every combination of the given orderings with LB, NC and branch order."""
    return [
        MinerConfig(ordering=o, prune_lb=lb, prune_nc=nc, branch_order=b, **kwargs)
        for o in orderings
        for lb in (True, False)
        for nc in (True, False)
        for b in BranchOrder
    ]
