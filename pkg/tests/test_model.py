from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from distinctpairs.model import GeomParams, distinct_pairs, letter_pmf, sample_word, sample_words


@pytest.mark.parametrize("q, i, expected", [
    ("1/2", 1, Fraction(1, 2)),
    ("1/2", 3, Fraction(1, 8)),
    ("1/3", 2, Fraction(2, 9)),
])
def test_letter_pmf(q, i, expected):
    assert letter_pmf(GeomParams.from_q(q), i) == expected


def test_letter_pmf_rejects_zero(half):
    with pytest.raises(ValueError):
        letter_pmf(half, 0)


def test_pmf_sums_to_one():
    params = GeomParams.from_q("2/7")
    partial = sum(letter_pmf(params, i) for i in range(1, 60))
    assert partial == 1 - params.q ** 59


def test_float_mode_keeps_p_plus_q_exact():
    params = GeomParams.from_q(0.3)
    assert not params.exact
    assert params.p + params.q == 1
    assert isinstance(letter_pmf(params, 2), float)


@pytest.mark.parametrize("bad", ["0", "1", "3/2", "-0.1", "nan", "abc", "1/0"])
def test_invalid_q(bad):
    with pytest.raises(ValueError):
        GeomParams.from_q(bad)


def test_label_echoes_regime():
    assert GeomParams.from_q("1/2").label() == "1/2"
    assert GeomParams.from_q("0.5").label() == "0.5"


def test_worked_example_word():
    tally = distinct_pairs([1, 2, 4, 1, 2, 4, 1, 3])
    assert tally.distinct_count == 4
    assert tally.pairs == {(1, 2), (2, 4), (4, 1), (1, 3)}


@pytest.mark.parametrize("word, count", [([1] * 5, 1), ([1, 2, 1, 2], 2), ([], 0), ([7], 0)])
def test_distinct_pairs_small(word, count):
    assert distinct_pairs(word).distinct_count == count


@given(st.lists(st.integers(1, 6), max_size=30))
def test_distinct_pairs_bounds(word):
    tally = distinct_pairs(word)
    assert tally.distinct_count == len(tally.pairs)
    assert tally.distinct_count <= max(0, len(word) - 1)
    assert tally.distinct_count <= len(set(word)) ** 2


@given(st.lists(st.integers(1, 4), min_size=2, max_size=20))
def test_appending_present_pair_is_invariant(word):
    # the new adjacent pair (word[-1], y) is one the word already has
    followers = [b for a, b in zip(word, word[1:]) if a == word[-1]]
    for y in followers:
        assert distinct_pairs(word + [y]).distinct_count == distinct_pairs(word).distinct_count


def test_sample_empty(half):
    assert sample_word(half, 0, 123) == []


def test_sample_deterministic(half):
    assert sample_word(half, 50, 9) == sample_word(half, 50, 9)
    assert sample_word(half, 50, 9) != sample_word(half, 50, 10)


def test_sample_degenerate_limit():
    params = GeomParams.from_p(1 - 1e-9)
    assert sample_word(params, 5, 42) == [1] * 5


def test_sample_chunking_is_stream_stable(half):
    a = sample_words(half, 7, 10, np.random.default_rng(5))
    rng = np.random.default_rng(5)
    b = np.vstack([sample_words(half, 7, 4, rng), sample_words(half, 7, 6, rng)])
    assert (a == b).all()


def test_sample_frequencies_match_pmf(half):
    draws = sample_words(half, 1_000_000, 1, np.random.default_rng(2024))[0]
    assert draws.min() >= 1
    n = draws.size
    for i in range(1, 6):
        pi = float(letter_pmf(half, i))
        sigma = (pi * (1 - pi) / n) ** 0.5
        assert abs(np.mean(draws == i) - pi) <= 4 * sigma
    # 4 sigma at p = 1/2 with 10^6 draws is 0.002
    assert abs(np.mean(draws == 1) - 0.5) <= 0.002
