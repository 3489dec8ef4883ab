"""Minimal constrained (emerging / contrast) pattern mining with dynamic item ordering."""

from .drmx import Drmx
from .miner import (
    BranchOrder,
    Miner,
    MinerConfig,
    Ordering,
    SearchStats,
    extract_minimal,
    mine,
)
from .model import (
    LabeledDatabase,
    Literal,
    MiningParams,
    Pattern,
    PatternStats,
    augment_with_negation,
    chi_square,
    growth_rate,
    occurs,
    satisfies,
    support,
)
from .oracle import enumerate_minimal

__all__ = [
    "BranchOrder", "Drmx", "LabeledDatabase", "Literal", "Miner", "MinerConfig",
    "MiningParams", "Ordering", "Pattern", "PatternStats", "SearchStats",
    "augment_with_negation", "chi_square", "enumerate_minimal", "extract_minimal",
    "growth_rate", "mine", "occurs", "satisfies", "support",
]
