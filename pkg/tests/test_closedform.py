from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from distinctpairs.closedform import (
    binomial_expected_pairs, expected_pairs, p_ii, p_ij, pair_auxiliaries, prob_ii_from_weight,
    prob_ij_from_weight, s_n_binomial, s_n_sum, t_n_binomial, t_n_sum,
)
from distinctpairs.model import GeomParams
from distinctpairs.numerics import to_mpf
from distinctpairs.series import coeff_at_least_one_ii, coeff_at_least_one_ij
from oracles import brute_expected_pairs, markov_pair_probability

QS = ["1/5", "1/3", "1/2", "2/3", "4/5"]
F841_315 = Fraction(841, 315)


def close(x, y, tol):
    return abs(mpmath.mpf(x) - (mpmath.mpf(y.numerator) / y.denominator if isinstance(y, Fraction) else y)) <= tol


@pytest.mark.parametrize("i, n, expected", [(1, 2, Fraction(1, 4)), (1, 3, Fraction(3, 8)), (3, 1, 0), (2, 0, 0)])
def test_p_ii_examples(half, i, n, expected):
    assert close(p_ii(half, i, n), Fraction(expected), 1e-30)


@pytest.mark.parametrize("n, expected", [(2, Fraction(1, 8)), (3, Fraction(1, 4)), (1, 0)])
def test_p_ij_examples(half, n, expected):
    assert close(p_ij(half, 1, 2, n), Fraction(expected), 1e-30)


def test_p_ij_rejects_equal_letters(half):
    with pytest.raises(ValueError):
        p_ij(half, 3, 3, 5)


@pytest.mark.parametrize("q", ["1/3", "1/2", "4/5"])
@pytest.mark.parametrize("i, j", [(1, 1), (2, 2), (1, 2), (3, 1), (2, 5)])
def test_against_markov_chain(q, i, j):
    params = GeomParams.from_q(q)
    for n in (0, 1, 2, 3, 7, 20):
        exact = markov_pair_probability(params.q, i, j, n)
        got = p_ii(params, i, n) if i == j else p_ij(params, i, j, n)
        assert close(got, exact, 1e-30)


def test_auxiliaries(half):
    aux = pair_auxiliaries(half, 1, 2)
    assert aux.a == 0.5 and aux.c == 0.125
    assert aux.b >= 1 - aux.a
    assert 0 < aux.d < 1


def test_large_n_is_stable():
    # 1 - r^n with r = 1 - O(a^2): tiny a and huge n must not lose the answer
    a = mpmath.mpf(10) ** -12
    got = prob_ii_from_weight(a, 10**6)
    # first-order approximation (n - 1) a^2, relative corrections O(n a^2)
    assert abs(got / ((10**6 - 1) * a * a) - 1) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-6, 0.99), st.integers(0, 120))
def test_ii_probability_range_and_monotone(a, n):
    v0, v1 = prob_ii_from_weight(a, n), prob_ii_from_weight(a, n + 1)
    assert 0 <= v0 <= v1 <= 1


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-9, 4 / 27), st.integers(0, 120))
def test_ij_probability_range_and_monotone(c, n):
    v0, v1 = prob_ij_from_weight(c, n), prob_ij_from_weight(c, n + 1)
    assert 0 <= v0 <= v1 <= 1


def test_two_letter_values():
    for q in QS:
        params = GeomParams.from_q(q)
        for i in (1, 2, 4):
            a = params.p * params.q ** (i - 1)
            assert close(p_ii(params, i, 2), a * a, 1e-12)
            c = params.p ** 2 * params.q ** (i + 3 - 2)
            assert close(p_ij(params, i, 3, 2), c, 1e-12)


def test_closed_form_matches_recurrence_up_to_200():
    for q in ("1/3", "7/8"):
        params = GeomParams.from_q(q)
        a = to_mpf(params.p) * to_mpf(params.q) ** 2
        for n in range(0, 201, 7):
            assert abs(prob_ii_from_weight(a, n) - coeff_at_least_one_ii(a, n)) < 1e-12
            assert abs(prob_ij_from_weight(a / 4, n) - coeff_at_least_one_ij(a / 4, n)) < 1e-12


def test_s_sum_n2(half):
    r = s_n_sum(half, 2, 1e-12)
    assert r.tail_bound <= 1e-12 * 1.0001
    assert r.contains(Fraction(1, 3))


def test_sums_vanish_below_two(half):
    for fn in (s_n_sum, t_n_sum, expected_pairs):
        for n in (0, 1):
            r = fn(half, n, 1e-9)
            assert r.value == 0 and r.tail_bound == 0


def test_t_sum_n2(half):
    assert t_n_sum(half, 2, 1e-12).contains(Fraction(2, 3))


def test_t_sum_n4(half):
    s4 = s_n_binomial(half, 4)
    assert t_n_sum(half, 4, 1e-12).contains(F841_315 - s4)


def test_expected_pairs_examples(half):
    assert expected_pairs(half, 2, 1e-12).contains(1)
    r = expected_pairs(half, 4, 1e-12)
    assert r.tail_bound <= 1e-12 * 1.0001
    assert r.contains(F841_315)


def test_expected_pairs_against_enumeration():
    q = Fraction(1, 6)
    brute, leftover = brute_expected_pairs(q, 4, 14)
    r = expected_pairs(GeomParams(1 - q), 4, 1e-14)
    lo = mpmath.mpf(brute.numerator) / brute.denominator
    hi = lo + mpmath.mpf(leftover.numerator) / leftover.denominator
    assert lo - r.tail_bound <= r.value <= hi + r.tail_bound


def test_degenerate_alphabet():
    params = GeomParams.from_p(1 - 1e-9)
    assert abs(expected_pairs(params, 10, 1e-12).value - 1) < 1e-6


def test_s_sum_large_n(half):
    r = s_n_sum(half, 2**20, 1e-8)
    assert abs(r.value - 9.916373) < 0.01


def test_eps_refinement(half):
    for fn in (s_n_sum, t_n_sum):
        coarse = fn(half, 30, 1e-6)
        fine = fn(half, 30, 1e-12)
        assert fine.tail_bound < coarse.tail_bound
        assert abs(fine.value - coarse.value) <= coarse.tail_bound


def test_summation_order_independent(half):
    # reversing the reduction order moves the sum by at most a few ulps per term
    with mpmath.workprec(128):
        terms = [p_ii(half, i, 50) for i in range(1, 80)]
        fwd = mpmath.fsum(terms)
        rev = mpmath.fsum(terms[::-1])
        assert abs(fwd - rev) <= len(terms) * mpmath.ldexp(abs(fwd), -127)


def test_s_binomial_examples():
    half = GeomParams.from_q("1/2")
    assert s_n_binomial(half, 2) == Fraction(1, 3)
    third = GeomParams.from_q("1/3")
    p, q = third.p, third.q
    # sum_i (2 a_i^2 - a_i^3) in closed form
    assert s_n_binomial(third, 3) == 2 * p**2 / (1 - q**2) - p**3 / (1 - q**3)


def test_t_binomial_examples(half):
    assert t_n_binomial(half, 2) == Fraction(2, 3)
    assert t_n_binomial(half, 4) == F841_315 - s_n_binomial(half, 4)
    assert t_n_sum(half, 3, 1e-13).contains(t_n_binomial(half, 3))


def test_binomial_small_n_vanishes(half):
    for n in (0, 1):
        assert s_n_binomial(half, n) == 0 and t_n_binomial(half, n) == 0


def test_binomial_gate(half):
    with pytest.raises(ValueError):
        s_n_binomial(half, 513)
    with pytest.raises(ValueError):
        t_n_binomial(half, -1)


@pytest.mark.parametrize("q", QS)
def test_binomial_matches_truncated_sums(q):
    params = GeomParams.from_q(q)
    for n in list(range(2, 17)) + [31, 64]:
        s, t = s_n_sum(params, n, 1e-14), t_n_sum(params, n, 1e-14)
        assert s.contains(s_n_binomial(params, n), slack=1e-25)
        assert t.contains(t_n_binomial(params, n), slack=1e-25)


def test_float_binomial_path_matches_exact():
    exact = GeomParams.from_q("1/2")
    floating = GeomParams.from_q("0.5")
    for n in (10, 100, 300):
        value = binomial_expected_pairs(floating, n)
        assert isinstance(value, mpmath.mpf)
        assert close(value, binomial_expected_pairs(exact, n), 1e-25)


def test_expected_pairs_monotone_and_bounded(half):
    prev = -1
    for n in range(0, 40):
        v = expected_pairs(half, n, 1e-12).value
        assert v >= prev - 1e-12
        assert v <= max(n - 1, 0) + 1e-12
        prev = v
