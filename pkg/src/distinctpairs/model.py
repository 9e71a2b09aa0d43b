"""Geometric random words and their distinct adjacent pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = [
    "GeomParams",
    "PairTally",
    "distinct_pairs",
    "letter_pmf",
    "sample_word",
    "sample_words",
]


@dataclass(frozen=True)
class GeomParams:
    """Parameter of the geometric letter distribution P(letter = i) = p q^(i-1).

    ``p`` is always held as an exact :class:`~fractions.Fraction` (a float
    converts to a Fraction without loss), so ``q = 1 - p`` holds exactly.
    ``exact`` records the arithmetic regime the caller asked for: True when
    p was supplied as a ratio of integers, False for a decimal/float, in
    which case downstream sums run in high-precision floating point.
    """

    p: Fraction
    exact: bool = True

    def __post_init__(self):
        p = self.p
        if isinstance(p, float):
            if not math.isfinite(p):
                raise ValueError(f"p must be finite, got {p}")
            p = Fraction(p)
        elif not isinstance(p, Fraction):
            p = Fraction(p)
        if not 0 < p < 1:
            raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> Fraction:
        return 1 - self.p

    @classmethod
    def from_q(cls, q) -> "GeomParams":
        """Build from q given as Fraction, int ratio string ``"a/b"``, float or decimal string."""
        p, exact = _parse_probability(q)
        return cls(1 - p, exact=exact)

    @classmethod
    def from_p(cls, p) -> "GeomParams":
        p, exact = _parse_probability(p)
        return cls(p, exact=exact)

    def label(self) -> str:
        """q as text, ``a/b`` in exact mode, a decimal otherwise."""
        if self.exact:
            return str(self.q)
        return repr(float(self.q))


def _parse_probability(x) -> tuple[Fraction, bool]:
    if isinstance(x, Fraction):
        return x, True
    if isinstance(x, int):
        return Fraction(x), True
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"probability must be finite, got {x}")
        return Fraction(x), False
    if isinstance(x, str):
        text = x.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            try:
                return Fraction(int(num), int(den)), True
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"not a valid fraction: {x!r}") from exc
        try:
            value = float(text)
        except ValueError as exc:
            raise ValueError(f"not a valid probability: {x!r}") from exc
        if not math.isfinite(value):
            raise ValueError(f"probability must be finite, got {x!r}")
        return Fraction(value), False
    raise TypeError(f"unsupported probability type {type(x).__name__}")


def letter_pmf(params: GeomParams, i: int):
    """P(letter = i); a Fraction in exact mode, a float otherwise."""
    if i < 1:
        raise ValueError(f"letters are positive integers, got {i}")
    value = params.p * params.q ** (i - 1)
    return value if params.exact else float(value)


@dataclass(frozen=True)
class PairTally:
    distinct_count: int
    pairs: frozenset = field(default_factory=frozenset)


def distinct_pairs(word: Sequence[int]) -> PairTally:
    """Distinct ordered pairs of adjacent letters in ``word``.

    >>> distinct_pairs([1, 2, 4, 1, 2, 4, 1, 3]).distinct_count
    4
    """
    pairs = frozenset(zip(word, word[1:]))
    return PairTally(len(pairs), pairs)


def _letters_from_uniforms(u: np.ndarray, q: float) -> np.ndarray:
    # u in (0, 1]; P(1 + floor(log u / log q) = i) = p q^(i-1)
    return 1 + np.floor(np.log(u) / math.log(q)).astype(np.int64)


def sample_words(params: GeomParams, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent words of length ``n`` as an int64 array of shape (count, n).

    Uniforms are consumed from ``rng`` in row-major order, one double per
    letter, so drawing rows in several chunks yields the same words as
    drawing them at once.
    """
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    u = 1.0 - rng.random((count, n))
    return _letters_from_uniforms(u, float(params.q))


def sample_word(params: GeomParams, n: int, seed: int) -> list[int]:
    """One word of length ``n`` drawn by inversion.

    The stream is ``numpy.random.default_rng(seed)`` (PCG64 seeded through
    ``SeedSequence(seed)``); letter k uses the k-th double ``u`` of the
    stream as ``1 + floor(log(1 - u) / log q)``.
    """
    rng = np.random.default_rng(seed)
    return sample_words(params, n, 1, rng)[0].tolist()
