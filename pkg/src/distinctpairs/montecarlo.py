"""Monte Carlo estimates of E(n) and of pair-presence probabilities.

Seeding scheme: the samples are cut into fixed blocks of ``BLOCK`` words
(the last block may be shorter).  Block b draws from
``Generator(PCG64(SeedSequence(seed, spawn_key=(b,))))``, so every word
depends only on (seed, its index), never on how blocks are spread over
workers.  Each block reports integer sums (count, sum x, sum x^2); these
are pooled exactly, so the estimate is bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import GeomParams, sample_words

__all__ = ["BLOCK", "EstimateCI", "estimate_expected_pairs", "estimate_pair_presence"]

BLOCK = 20_000


@dataclass(frozen=True)
class EstimateCI:
    mean: float
    stderr: float
    samples: int
    seed: int
    workers: int = 1

    def interval(self, z: float = 1.96) -> tuple[float, float]:
        """Normal-approximation confidence interval."""
        return self.mean - z * self.stderr, self.mean + z * self.stderr

    def within(self, value: float, sigmas: float = 4.0) -> bool:
        return abs(self.mean - value) <= sigmas * self.stderr


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _count_distinct_pairs(words: np.ndarray) -> np.ndarray:
    if words.shape[1] < 2:
        return np.zeros(words.shape[0], dtype=np.int64)
    codes = (words[:, :-1] << 32) | words[:, 1:]
    codes.sort(axis=1)
    return 1 + np.count_nonzero(np.diff(codes, axis=1), axis=1)


def _pair_present(words: np.ndarray, i: int, j: int) -> np.ndarray:
    if words.shape[1] < 2:
        return np.zeros(words.shape[0], dtype=np.int64)
    hit = (words[:, :-1] == i) & (words[:, 1:] == j)
    return hit.any(axis=1).astype(np.int64)


def _run(statistic, params: GeomParams, n: int, samples: int, seed: int, workers: int) -> EstimateCI:
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    blocks = [(b, min(BLOCK, samples - b * BLOCK)) for b in range(math.ceil(samples / BLOCK))]

    def one_block(task):
        b, size = task
        x = statistic(sample_words(params, n, size, _block_rng(seed, b)))
        return size, int(x.sum()), int((x * x).sum())

    if workers == 1:
        parts = [one_block(t) for t in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one_block, blocks))
    count = sum(c for c, _, _ in parts)
    s1 = sum(s for _, s, _ in parts)
    s2 = sum(s for _, _, s in parts)
    mean = s1 / count
    # unbiased variance from exact integer sums
    var = (s2 - s1 * s1 / count) / (count - 1)
    stderr = math.sqrt(max(var, 0.0) / count)
    return EstimateCI(mean, stderr, count, seed, workers)


def estimate_expected_pairs(params: GeomParams, n: int, samples: int, seed: int, workers: int = 1) -> EstimateCI:
    """Sample mean and standard error of the distinct-pair count of random words."""
    return _run(_count_distinct_pairs, params, n, samples, seed, workers)


def estimate_pair_presence(params: GeomParams, i: int, j: int, n: int, samples: int, seed: int,
                           workers: int = 1) -> EstimateCI:
    """Frequency of words containing the adjacent pair ``ij`` at least once."""
    if i < 1 or j < 1:
        raise ValueError(f"letters are positive integers, got {(i, j)}")
    return _run(lambda w: _pair_present(w, i, j), params, n, samples, seed, workers)
