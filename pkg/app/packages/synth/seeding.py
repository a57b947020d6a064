"""Seed derivation and named random streams.

Every generator draws from its own PCG64 stream keyed by ``(seed, tag)``, so
the output of one generator never depends on which others ran before it.
Gaussian variates come from numpy's ziggurat sampler on that stream.
"""

from __future__ import annotations

import zlib

import numpy as np


def derive_seed(base_seed: int, *indices: int) -> int:
    """Mix ``base_seed`` with grid/trial indices into an independent 64-bit seed."""

    sequence = np.random.SeedSequence(int(base_seed), spawn_key=tuple(int(i) for i in indices))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def stream(seed: int, tag: str) -> np.random.Generator:
    """PCG64 generator for the operation named ``tag``."""

    key = zlib.crc32(tag.encode("utf-8"))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(key,))))


__all__ = ["derive_seed", "stream"]
