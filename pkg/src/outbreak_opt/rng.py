"""Deterministic seed-sequence substreams for reproducible parallel simulation.

Every stochastic job gets its own generator derived from (master seed, key),
so results are identical no matter how many worker threads execute the jobs.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

SeedLike = "int | np.random.SeedSequence"


def as_seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(int(seed))


def subsequence(seed, *key) -> np.random.SeedSequence:
    """Child seed sequence at `key` below `seed` (stateless, repeatable)."""
    ss = as_seed_sequence(seed)
    spawn_key = tuple(ss.spawn_key) + tuple(int(k) for k in key)
    return np.random.SeedSequence(ss.entropy, spawn_key=spawn_key)


def generator(seed, *key) -> np.random.Generator:
    """Generator for the substream at `key` (or for `seed` itself)."""
    ss = subsequence(seed, *key) if key else as_seed_sequence(seed)
    return np.random.default_rng(ss)


def derived_seed(seed, *key) -> int:
    """A plain integer seed derived deterministically from (seed, key)."""
    return int(subsequence(seed, *key).generate_state(1, np.uint64)[0])


def parallel_map(fn, items, threads=1):
    """Map preserving input order; thread count never affects the result."""
    items = list(items)
    if threads is None:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
