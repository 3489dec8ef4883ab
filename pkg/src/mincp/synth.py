"""Synthetic labeled databases for tests and benchmarks."""

from __future__ import annotations

import numpy as np

from .model import LabeledDatabase


def random_database(
    rng: np.random.Generator,
    n_items: int,
    n_plus: int,
    n_minus: int,
    density: float = 0.5,
    negation: bool = False,
) -> LabeledDatabase:
    """Independent Bernoulli(density) cells in both classes."""
    pos = rng.random((n_plus, n_items)) < density
    neg = rng.random((n_minus, n_items)) < density
    return LabeledDatabase(n_items, _rows(pos), _rows(neg), negation)


def dense_database(
    n_items: int = 40,
    n_rows: int = 400,
    freq_range: tuple[float, float] = (0.0, 1.0),
    shift: float = 0.15,
    seed: int = 0,
) -> LabeledDatabase:
    """Dense two-class data with skewed item frequencies.

    Item ``i`` gets a base frequency ``f_i ~ U(freq_range)`` and a class
    offset ``s_i ~ U(-shift, shift)``; it occurs with probability ``f_i + s_i``
    in positive rows and ``f_i - s_i`` in negative rows. A mix of rare and
    near-ubiquitous items, as in binarized categorical data, is what lets the
    negative-support lower bound bite once the rare items are decided.
    """
    rng = np.random.default_rng(seed)
    base = rng.uniform(*freq_range, n_items)
    s = rng.uniform(-shift, shift, n_items)
    p_pos = np.clip(base + s, 0.0, 1.0)
    p_neg = np.clip(base - s, 0.0, 1.0)
    pos = rng.random((n_rows, n_items)) < p_pos
    neg = rng.random((n_rows, n_items)) < p_neg
    return LabeledDatabase(n_items, _rows(pos), _rows(neg))


def _rows(mask: np.ndarray) -> list[frozenset[int]]:
    return [frozenset(np.flatnonzero(row).tolist()) for row in mask]
