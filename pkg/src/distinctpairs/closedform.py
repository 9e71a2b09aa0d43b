"""Exact pair-occurrence probabilities and the expected number of distinct pairs.

Two routes to E(n) = S_n + T_n (S: pairs ``ii``, T: pairs ``ij`` with i != j):

* truncated infinite sums of the closed-form probabilities P_ii(n), P_ij(n),
  returned with a rigorous bound on the neglected tail;
* finite alternating binomial sums, exact in rational arithmetic and
  evaluated with escalated precision in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .model import GeomParams
from .numerics import DEFAULT_PREC, binomial, cancellation_prec, to_mpf

__all__ = [
    "BINOMIAL_MAX_N",
    "binomial_expected_pairs",
    "CertifiedValue",
    "PairAuxiliaries",
    "expected_pairs",
    "p_ii",
    "p_ij",
    "pair_auxiliaries",
    "prob_ii_from_weight",
    "prob_ij_from_weight",
    "s_n_binomial",
    "s_n_sum",
    "t_n_binomial",
    "t_n_sum",
]

BINOMIAL_MAX_N = 512


@dataclass(frozen=True)
class CertifiedValue:
    """A value and an upper bound on |value - true sum|."""

    value: mpmath.mpf
    tail_bound: mpmath.mpf
    terms: int = 0

    def __float__(self):
        return float(self.value)

    def contains(self, x, slack=0) -> bool:
        return abs(to_mpf(x) - self.value) <= self.tail_bound + slack

    def __add__(self, other: "CertifiedValue") -> "CertifiedValue":
        # mpf arithmetic rounds to the ambient precision; keep the operands' bits
        with mpmath.workprec(2 * DEFAULT_PREC):
            return CertifiedValue(self.value + other.value, self.tail_bound + other.tail_bound,
                                  self.terms + other.terms)


@dataclass(frozen=True)
class PairAuxiliaries:
    """Letter weight ``a`` of i, its root ``b``, pair weight ``c`` of (i, j), its root ``d``."""

    a: mpmath.mpf
    b: mpmath.mpf
    c: mpmath.mpf
    d: mpmath.mpf


def pair_auxiliaries(params: GeomParams, i: int, j: int, prec: int = DEFAULT_PREC) -> PairAuxiliaries:
    with mpmath.workprec(prec):
        p, q = to_mpf(params.p), to_mpf(params.q)
        a = p * q ** (i - 1)
        c = p * p * q ** (i + j - 2)
        return PairAuxiliaries(a, mpmath.sqrt((1 + 3 * a) * (1 - a)), c, mpmath.sqrt(1 - 4 * c))


def _at_least_once(delta, small_root, root_gap, n: int):
    # Probability 1 - r^n - (delta / gap) (r^n - s^n), with r = 1 - delta the
    # dominant root and s the small one, gap = r - s.  1 - r^n is taken as
    # -expm1(n log1p(-delta)) since delta = O(weight^2) underflows 1 - r.
    log_r = mpmath.log1p(-delta)
    r_n = mpmath.exp(n * log_r)
    value = -mpmath.expm1(n * log_r) - delta / root_gap * (r_n - small_root ** n)
    if value < 0:
        return mpmath.mpf(0)
    return min(value, mpmath.mpf(1))


def prob_ii_from_weight(a, n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """P(a fixed letter of weight ``a`` appears twice in a row somewhere in n letters)."""
    if n < 2:
        return mpmath.mpf(0)
    with mpmath.workprec(prec):
        a = to_mpf(a)
        b = mpmath.sqrt((1 + 3 * a) * (1 - a))
        # 1 - (1 + b - a)/2 = (1 + a - b)/2 = 2 a^2 / (1 + a + b)
        delta = 2 * a * a / (1 + a + b)
        return _at_least_once(delta, (1 - a - b) / 2, b, n)


def prob_ij_from_weight(c, n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """P(a fixed pair of distinct letters with weight ``c`` = P(i)P(j) occurs in n letters)."""
    if n < 2:
        return mpmath.mpf(0)
    with mpmath.workprec(prec):
        c = to_mpf(c)
        d = mpmath.sqrt(1 - 4 * c)
        # roots of 1 - z + c z^2 reciprocals: (1 +- d)/2; (1 - d)/2 = 2c/(1 + d)
        delta = 2 * c / (1 + d)
        return _at_least_once(delta, delta, d, n)


def p_ii(params: GeomParams, i: int, n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Probability that the pair ``ii`` occurs in a random word of length n."""
    if i < 1:
        raise ValueError(f"letters are positive integers, got {i}")
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    return prob_ii_from_weight(params.p * params.q ** (i - 1), n, prec)


def p_ij(params: GeomParams, i: int, j: int, n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Probability that the pair ``ij`` (i != j) occurs in a random word of length n."""
    if i == j:
        raise ValueError("p_ij needs distinct letters; use p_ii for repeated letters")
    if i < 1 or j < 1:
        raise ValueError(f"letters are positive integers, got {(i, j)}")
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    return prob_ij_from_weight(params.p ** 2 * params.q ** (i + j - 2), n, prec)


def _rounding_allowance(value, terms: int, prec: int):
    return (terms + 1) * mpmath.ldexp(1, 8 - prec) * max(1, abs(value))


def _check_eps(eps):
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")


def s_tail_bound(params: GeomParams, n: int, m: int):
    """Union bound on sum_{i > m} P_ii(n): (n - 1) p^2 q^(2m) / (1 - q^2)."""
    p, q = to_mpf(params.p), to_mpf(params.q)
    return (n - 1) * p * p * q ** (2 * m) / (1 - q * q)


def s_truncation(params: GeomParams, n: int, eps) -> int:
    """Smallest letter cutoff M >= 1 whose S tail bound is at most eps."""
    p, q = float(params.p), float(params.q)
    guess = math.log(eps * (1 - q * q) / ((n - 1) * p * p)) / (2 * math.log(q))
    m = max(1, int(math.floor(guess)) - 1)
    while s_tail_bound(params, n, m) > eps:
        m += 1
    return m


def t_tail_bound(params: GeomParams, n: int, top: int):
    """Union bound on the pairs with i + j > top.

    sum_{s > top} (s - 1)(n - 1) p^2 q^(s-2) = (n - 1) p^2 q^(top-1) (top - (top-1) q) / (1 - q)^2.
    """
    p, q = to_mpf(params.p), to_mpf(params.q)
    return (n - 1) * p * p * q ** (top - 1) * (top - (top - 1) * q) / (1 - q) ** 2


def t_truncation(params: GeomParams, n: int, eps) -> int:
    """Smallest cutoff on i + j (at least 3) whose T tail bound is at most eps."""
    # (top - (top-1) q) >= 1, so this guess never overshoots the minimum
    p, q = float(params.p), float(params.q)
    guess = 1 + math.log(eps * (1 - q) ** 2 / ((n - 1) * p * p)) / math.log(q)
    top = max(3, int(math.floor(guess)) - 1)
    while t_tail_bound(params, n, top) > eps:
        top += 1
    return top


def pair_multiplicity(s: int) -> int:
    """Ordered pairs (i, j), i != j, i, j >= 1, with i + j = s."""
    return s - 1 - (1 if s % 2 == 0 else 0)


def s_n_sum(params: GeomParams, n: int, eps, prec: int = DEFAULT_PREC) -> CertifiedValue:
    """Expected number of distinct ``ii`` pairs, summed over letters with a certified tail."""
    _check_eps(eps)
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    if n < 2:
        return CertifiedValue(mpmath.mpf(0), mpmath.mpf(0))
    with mpmath.workprec(prec):
        m = s_truncation(params, n, eps)
        p, q = to_mpf(params.p), to_mpf(params.q)
        terms = [prob_ii_from_weight(p * q ** (i - 1), n, prec) for i in range(1, m + 1)]
        value = mpmath.fsum(terms)
        tail = s_tail_bound(params, n, m) + _rounding_allowance(value, m, prec)
        return CertifiedValue(value, tail, m)


def t_n_sum(params: GeomParams, n: int, eps, prec: int = DEFAULT_PREC) -> CertifiedValue:
    """Expected number of distinct ``ij`` pairs (i != j) with a certified tail.

    P_ij depends on (i, j) only through i + j, so the double sum is taken
    along anti-diagonals s = i + j <= top, each weighted by its pair count.
    """
    _check_eps(eps)
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    if n < 2:
        return CertifiedValue(mpmath.mpf(0), mpmath.mpf(0))
    with mpmath.workprec(prec):
        top = t_truncation(params, n, eps)
        p, q = to_mpf(params.p), to_mpf(params.q)
        terms = [pair_multiplicity(s) * prob_ij_from_weight(p * p * q ** (s - 2), n, prec)
                 for s in range(3, top + 1)]
        value = mpmath.fsum(terms)
        tail = t_tail_bound(params, n, top) + _rounding_allowance(value, len(terms), prec)
        return CertifiedValue(value, tail, len(terms))


def expected_pairs(params: GeomParams, n: int, eps=1e-12, prec: int = DEFAULT_PREC) -> CertifiedValue:
    """E(n) = S_n + T_n; eps is split evenly between the two tails."""
    return s_n_sum(params, n, eps / 2, prec) + t_n_sum(params, n, eps / 2, prec)


def _check_binomial_n(n: int):
    if not 0 <= n <= BINOMIAL_MAX_N:
        raise ValueError(f"binomial formulas are gated to 0 <= n <= {BINOMIAL_MAX_N}, got {n}")


def _s_binomial_weights(n: int) -> list[int]:
    # S_n = sum_m w_m p^m / (1 - q^m).  First sum: w_s += C(n,s)(-1)^(s+1);
    # second: the k-th term of (1 - a)^(s-1) a^(n-s+1) gives m = n - s + 1 + k.
    w = [0] * (n + 1)
    for s in range(1, n + 1):
        w[s] += binomial(n, s) * (-1) ** (s + 1)
    for s in range(1, n + 1):
        lead = binomial(s, n - s + 1)
        if not lead:
            continue
        for k in range(s):
            w[n - s + 1 + k] -= lead * binomial(s - 1, k) * (-1) ** k
    return w


def s_n_binomial(params: GeomParams, n: int):
    """Expected distinct ``ii`` pairs as a finite alternating sum.

    Fraction in exact mode; otherwise an mpf computed with n + 64 bits.
    """
    _check_binomial_n(n)
    w = _s_binomial_weights(n)
    if params.exact:
        p, q = params.p, params.q
        return sum((Fraction(w[m]) * p ** m / (1 - q ** m) for m in range(1, n + 1) if w[m]), Fraction(0))
    with mpmath.workprec(cancellation_prec(n)):
        p, q = to_mpf(params.p), to_mpf(params.q)
        return mpmath.fsum(w[m] * p ** m / (1 - q ** m) for m in range(1, n + 1) if w[m])


def t_n_binomial(params: GeomParams, n: int):
    """Expected distinct ``ij`` pairs (i != j) as a finite alternating sum."""
    _check_binomial_n(n)
    if params.exact:
        p, q = params.p, params.q
        return 2 * sum(
            (Fraction((-1) ** (k - 1) * binomial(n - k, k)) * p ** (2 * k) * q ** k
             / ((1 - q ** k) ** 2 * (1 + q ** k)) for k in range(1, n // 2 + 1)),
            Fraction(0),
        )
    with mpmath.workprec(cancellation_prec(n)):
        p, q = to_mpf(params.p), to_mpf(params.q)
        return 2 * mpmath.fsum(
            (-1) ** (k - 1) * binomial(n - k, k) * p ** (2 * k) * q ** k
            / ((1 - q ** k) ** 2 * (1 + q ** k)) for k in range(1, n // 2 + 1)
        )


def binomial_expected_pairs(params: GeomParams, n: int):
    """S_n + T_n from the binomial sums; exact Fraction or an mpf at n + 64 bits."""
    s, t = s_n_binomial(params, n), t_n_binomial(params, n)
    if params.exact:
        return s + t
    with mpmath.workprec(cancellation_prec(n)):
        return s + t
