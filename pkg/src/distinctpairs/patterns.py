"""Word patterns (restricted growth strings) and their exact probabilities.

A pattern of length n records which positions of a word carry equal
letters.  Every word realizes exactly one pattern, so summing
``pairs(pattern) * P(pattern)`` over all Bell(n) patterns gives the exact
expected number of distinct adjacent pairs as a rational function of q.
"""

from __future__ import annotations

import string
from collections import Counter, defaultdict
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterator

from .symbolic import ONE, P, Q, ZERO, RationalFunction, ordered_geometric_sum

__all__ = [
    "MAX_DIRECT_N",
    "MAX_RGS_N",
    "Rgs",
    "enumerate_rgs",
    "expected_pairs_direct",
    "format_patterns",
    "pattern_distinct_pairs",
    "pattern_probability",
    "pattern_type",
]

MAX_RGS_N = 10
MAX_DIRECT_N = 8
MAX_CLASSES = 8


class Rgs(tuple):
    """Restricted growth string: starts at 1, each symbol at most one above the running max."""

    def __new__(cls, symbols):
        symbols = tuple(int(s) for s in symbols)
        top = 0
        for s in symbols:
            if s < 1 or s > top + 1:
                raise ValueError(f"not a restricted growth string: {symbols}")
            top = max(top, s)
        return super().__new__(cls, symbols)

    @classmethod
    def from_letters(cls, text: str) -> "Rgs":
        """``"abab"`` -> Rgs((1, 2, 1, 2))."""
        return cls(string.ascii_lowercase.index(ch) + 1 for ch in text)

    @property
    def classes(self) -> int:
        return max(self, default=0)

    def letters(self) -> str:
        return "".join(string.ascii_lowercase[s - 1] for s in self)

    def digits(self) -> str:
        return "".join(str(s) if s < 10 else string.ascii_uppercase[s - 10] for s in self)

    def __repr__(self):
        return f"Rgs({self.letters()!r})"


def _rgs_iter(n: int) -> Iterator[tuple[int, ...]]:
    prefix = [1]

    def extend(top: int):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for s in range(1, top + 2):
            prefix.append(s)
            yield from extend(max(top, s))
            prefix.pop()

    yield from extend(1)


def enumerate_rgs(n: int) -> list[Rgs]:
    """All restricted growth strings of length n in lexicographic order (Bell(n) of them)."""
    if not 1 <= n <= MAX_RGS_N:
        raise ValueError(f"pattern length must be in 1..{MAX_RGS_N}, got {n}")
    return [tuple.__new__(Rgs, s) for s in _rgs_iter(n)]


def pattern_distinct_pairs(rgs) -> int:
    return len(set(zip(rgs, rgs[1:])))


def pattern_type(rgs) -> tuple[int, ...]:
    """Class multiplicities sorted descending, e.g. aaba -> (3, 1)."""
    return tuple(sorted(Counter(rgs).values(), reverse=True))


@lru_cache(maxsize=None)
def _type_probability(mults: tuple[int, ...]) -> RationalFunction:
    # Sum over the k! assignments of classes to value ranks; assignments that
    # permute equal multiplicities give the same term, so each distinct
    # arrangement is weighted by the number of assignments producing it.
    n = sum(mults)
    weight = 1
    for c in Counter(mults).values():
        weight *= factorial(c)
    total = ZERO
    for arrangement in set(permutations(mults)):
        total = total + ordered_geometric_sum(arrangement)
    return total * weight * P ** n / Q ** n


def pattern_probability(rgs) -> RationalFunction:
    """Exact probability that a random word realizes ``rgs``."""
    rgs = rgs if isinstance(rgs, Rgs) else Rgs(rgs)
    if not rgs:
        return ONE
    if rgs.classes > MAX_CLASSES:
        raise ValueError(f"at most {MAX_CLASSES} distinct symbols supported, got {rgs.classes}")
    return _type_probability(pattern_type(rgs))


@lru_cache(maxsize=None)
def expected_pairs_direct(n: int) -> RationalFunction:
    """Expected number of distinct adjacent pairs at length n by summing over all patterns."""
    if not 0 <= n <= MAX_DIRECT_N:
        raise ValueError(f"direct pattern sum supports 0 <= n <= {MAX_DIRECT_N}, got {n}")
    if n < 2:
        return ZERO
    pairs_by_type: dict[tuple[int, ...], int] = defaultdict(int)
    for rgs in _rgs_iter(n):
        pairs_by_type[pattern_type(rgs)] += pattern_distinct_pairs(rgs)
    total = ZERO
    for mults, pairs in sorted(pairs_by_type.items()):
        total = total + _type_probability(mults) * pairs
    return total


def format_patterns(patterns, style: str = "letters") -> str:
    """One pattern per line, as letters (``abab``) or digits (``1212``)."""
    render = Rgs.letters if style == "letters" else Rgs.digits
    return "".join(render(p if isinstance(p, Rgs) else Rgs(p)) + "\n" for p in patterns)
