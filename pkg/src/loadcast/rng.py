"""Deterministic named substreams derived from a single root seed.

Every stochastic component (generator noise, boosting row subsampling,
forest bootstraps, ...) draws from its own substream keyed by name and
index, so rerunning one component never perturbs another and parallel
execution reproduces sequential results exactly.
"""

from __future__ import annotations

import zlib

import numpy as np


def _key(path) -> tuple[int, ...]:
    # strings hash via crc32 so stream names stay stable across runs
    out = []
    for p in path:
        if isinstance(p, str):
            out.append(zlib.crc32(p.encode("utf-8")))
        else:
            out.append(int(p) & 0xFFFFFFFF)
    return tuple(out)


def substream(seed: int, *path) -> np.random.Generator:
    """Child generator for (seed, path); path items are ints or names."""
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=_key(path))
    return np.random.default_rng(seq)


def derive_seed(seed: int, *path) -> int:
    """Stable 63-bit integer seed for (seed, path), for nested seeding."""
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=_key(path))
    return int(seq.generate_state(1, dtype=np.uint64)[0] >> 1)
