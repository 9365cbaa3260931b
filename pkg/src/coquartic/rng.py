"""Deterministic, splittable random streams derived from one integer seed."""

from __future__ import annotations

import zlib

import numpy as np


def _key(k) -> int:
    if isinstance(k, int):
        return k & 0xFFFFFFFF
    return zlib.crc32(str(k).encode())


def make_rng(seed: int, *keys) -> np.random.Generator:
    """A generator for the stream ``(seed, *keys)``; equal inputs give equal streams."""
    return np.random.default_rng(np.random.SeedSequence([int(seed) & 0xFFFFFFFF, *(_key(k) for k in keys)]))


def rand_ints(rng: np.random.Generator, low: int, high: int, size: int) -> list[int]:
    """``size`` Python ints uniform in the closed range [low, high]."""
    return [int(v) for v in rng.integers(low, high + 1, size=size)]
