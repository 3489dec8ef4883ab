"""Grid runs of the miner over ordering and pruning settings."""

from __future__ import annotations

from dataclasses import dataclass

from .dataio import write_patterns
from .miner import MinerConfig, Ordering, SearchAborted, SearchStats, mine
from .model import LabeledDatabase, MiningParams

PRUNING = {
    "none": (False, False),
    "lb": (True, False),
    "nc": (False, True),
    "both": (True, True),
}


@dataclass
class BenchCell:
    config: MinerConfig
    stats: SearchStats | None
    n_patterns: int | None
    output: bytes | None
    aborted: str | None = None

    @property
    def completed(self) -> bool:
        return self.aborted is None


def grid_configs(orderings, prunings, **kwargs) -> list[MinerConfig]:
    return [
        MinerConfig(ordering=Ordering(o), prune_lb=PRUNING[p][0], prune_nc=PRUNING[p][1], **kwargs)
        for o in orderings
        for p in prunings
    ]


def run_grid(db: LabeledDatabase, params: MiningParams, configs) -> list[BenchCell]:
    cells = []
    for cfg in configs:
        try:
            patterns, stats = mine(db, params, cfg)
        except SearchAborted as exc:
            cells.append(BenchCell(cfg, None, None, None, aborted=type(exc).__name__))
            continue
        cells.append(BenchCell(cfg, stats, len(patterns), write_patterns(patterns)))
    return cells


def consistent(cells) -> bool:
    """All completed cells serialized to identical pattern output."""
    outputs = {c.output for c in cells if c.completed}
    return len(outputs) <= 1


def format_table(cells) -> str:
    header = ["config", "nodes", "prune1", "prune2", "prune3", "prune4", "patterns", "time_s"]
    rows = [header]
    for c in cells:
        if c.completed:
            s = c.stats
            rows.append([
                c.config.label, str(s.nodes_visited), str(s.prune1_hits), str(s.prune2_hits),
                str(s.prune3_hits), str(s.prune4_removals), str(c.n_patterns), f"{s.wall_time:.3f}",
            ])
        else:
            rows.append([c.config.label, "-", "-", "-", "-", "-", "-", c.aborted])
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    return "\n".join(
        "  ".join(v.ljust(w) if k == 0 else v.rjust(w) for k, (v, w) in enumerate(zip(r, widths)))
        for r in rows
    ) + "\n"
