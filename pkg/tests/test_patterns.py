from collections import defaultdict
from fractions import Fraction

import pytest

from distinctpairs.closedform import expected_pairs
from distinctpairs.model import GeomParams
from distinctpairs.patterns import (
    Rgs, enumerate_rgs, expected_pairs_direct, format_patterns, pattern_distinct_pairs,
    pattern_probability, pattern_type,
)
from distinctpairs.symbolic import ONE, P, Q, ZERO, PolyQ, RationalFunction, f4_closed_form, \
    ordered_geometric_sum
from oracles import bell_numbers, brute_expected_pairs


def test_bell_counts():
    bells = bell_numbers(11)
    for n in range(1, 11):
        assert len(enumerate_rgs(n)) == bells[n]
    assert len(enumerate_rgs(4)) == 15
    assert len(enumerate_rgs(8)) == 4140


def test_enumeration_order_and_validity():
    pats = enumerate_rgs(5)
    assert pats == sorted(pats)
    assert len(set(pats)) == len(pats)
    for p in pats:
        Rgs(p)
    assert enumerate_rgs(1) == [Rgs([1])]


@pytest.mark.parametrize("n", [0, 11])
def test_enumeration_range(n):
    with pytest.raises(ValueError):
        enumerate_rgs(n)


def test_rgs_validation():
    with pytest.raises(ValueError):
        Rgs([1, 3])
    with pytest.raises(ValueError):
        Rgs([2, 1])
    assert Rgs.from_letters("abca") == Rgs([1, 2, 3, 1])


TABLE1_PAIRS = {
    "aaaa": 1, "abab": 2, "aaab": 2, "abbb": 2, "abaa": 3, "aaba": 3, "aabb": 3, "abba": 3,
    "aabc": 3, "abac": 3, "abca": 3, "abbc": 3, "abcb": 3, "abcc": 3, "abcd": 3,
}


def test_table1_pair_counts():
    pats = {p.letters(): p for p in enumerate_rgs(4)}
    assert set(pats) == set(TABLE1_PAIRS)
    for text, count in TABLE1_PAIRS.items():
        assert pattern_distinct_pairs(pats[text]) == count


def test_probability_aaaa():
    assert pattern_probability(Rgs.from_letters("aaaa")) == P ** 4 / RationalFunction(PolyQ([1, 0, 0, 0, -1]))


def test_probability_abab():
    one_q = PolyQ([1, 1])
    assert pattern_probability(Rgs.from_letters("abab")) == \
        2 * Q ** 2 * P ** 2 / RationalFunction(one_q * one_q * PolyQ([1, 0, 1]))


def test_type_d_probability():
    one_q = PolyQ([1, 1])
    s_d = 2 * P * Q ** 3 * RationalFunction(PolyQ([1, 2, 3]), one_q * one_q * PolyQ([1, 0, 1]) * PolyQ([1, 1, 1]))
    assert pattern_probability(Rgs.from_letters("abcb")) == s_d


@pytest.mark.parametrize("n", range(1, 8))
def test_probabilities_sum_to_one(n):
    total = ZERO
    for p in enumerate_rgs(n):
        total = total + pattern_probability(p)
    assert total == ONE


def test_p4_groups():
    probs = {p.letters(): pattern_probability(p) for p in enumerate_rgs(4)}
    s_a, s_b, s_c = probs["aaaa"], probs["abab"], probs["aaab"]
    s_d, s_e = probs["aabc"], probs["abcd"]
    groups = defaultdict(lambda: ZERO)
    for text, pr in probs.items():
        groups[TABLE1_PAIRS[text]] = groups[TABLE1_PAIRS[text]] + pr
    assert groups[1] == s_a
    assert groups[2] == s_b + 2 * s_c
    assert groups[3] == 2 * s_b + 2 * s_c + 6 * s_d + s_e


def test_same_type_same_probability():
    by_type = defaultdict(set)
    for p in enumerate_rgs(6):
        by_type[pattern_type(p)].add(pattern_probability(p))
    assert all(len(v) == 1 for v in by_type.values())


def test_probability_matches_ordering_definition():
    # k! sum written out for aabc: classes a (2), b (1), c (1)
    rgs = Rgs.from_letters("aabc")
    from itertools import permutations
    total = ZERO
    for perm in permutations([2, 1, 1]):
        total = total + ordered_geometric_sum(perm)
    assert pattern_probability(rgs) == total * P ** 4 / Q ** 4


def test_class_cap():
    with pytest.raises(ValueError):
        pattern_probability(Rgs(range(1, 10)))


def test_direct_n4_is_f4():
    assert expected_pairs_direct(4) == f4_closed_form()


def test_direct_small_n():
    assert expected_pairs_direct(2) == ONE
    assert expected_pairs_direct(1) == ZERO
    assert expected_pairs_direct(0) == ZERO
    with pytest.raises(ValueError):
        expected_pairs_direct(9)


def test_direct_n5_against_closed_form():
    half = GeomParams.from_q("1/2")
    value = expected_pairs_direct(5)(Fraction(1, 2))
    assert expected_pairs(half, 5, 1e-13).contains(value, slack=1e-12)


def test_direct_n5_against_word_enumeration():
    q = Fraction(1, 5)
    brute, leftover = brute_expected_pairs(q, 5, 9)
    exact = expected_pairs_direct(5)(q)
    assert brute <= exact <= brute + leftover


def test_format_patterns():
    text = format_patterns(enumerate_rgs(3))
    assert text.splitlines() == ["aaa", "aab", "aba", "abb", "abc"]
    assert format_patterns([Rgs([1, 2, 1])], style="digits") == "121\n"
