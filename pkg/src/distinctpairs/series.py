"""Coefficients of the pair-occurrence generating functions, by linear recurrence.

For a fixed pair the words avoiding it have a rational generating function
with a quadratic denominator; the probability of at least one occurrence
in n letters is 1 minus its n-th coefficient.  Recurrences work unchanged
on Fractions (exact) and mpf values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .closedform import (
    CertifiedValue,
    pair_multiplicity,
    s_tail_bound,
    s_truncation,
    t_tail_bound,
    t_truncation,
    _rounding_allowance,
)
from .model import GeomParams
from .numerics import DEFAULT_PREC, binomial, to_mpf

__all__ = [
    "Lcc2",
    "avoid_ii_gf",
    "avoid_ij_gf",
    "binomial_coeff_ii",
    "coeff_at_least_one_ii",
    "coeff_at_least_one_ij",
    "q_coeff",
]


@dataclass(frozen=True)
class Lcc2:
    """Rational generating function (n0 + n1 z) / (d0 + d1 z + d2 z^2)."""

    n0: object
    n1: object
    d0: object
    d1: object
    d2: object

    def __post_init__(self):
        if self.d0 == 0:
            raise ValueError("d0 must be nonzero")

    def coefficients(self, count: int) -> list:
        """First ``count`` power-series coefficients."""
        out = []
        numer = (self.n0, self.n1)
        # keep integer inputs exact
        d0 = Fraction(self.d0) if isinstance(self.d0, int) else self.d0
        for k in range(count):
            acc = numer[k] if k < 2 else 0
            if k >= 1:
                acc = acc - self.d1 * out[k - 1]
            if k >= 2:
                acc = acc - self.d2 * out[k - 2]
            out.append(acc / d0)
        return out


def avoid_ij_gf(c) -> Lcc2:
    """Words avoiding a pair ij (i != j) of weight c: 1 / (1 - z + c z^2)."""
    return Lcc2(1, 0, 1, -1, c)


def avoid_ii_gf(a) -> Lcc2:
    """Words avoiding ii for a letter of weight a.

    The zero-occurrence series 1 / (1 - z + a^2 z^2 / (1 + a z)) clears to
    (1 + a z) / ((1 - z)(1 + a z) + a^2 z^2) = (1 + a z) / (1 + (a - 1) z + a (a - 1) z^2).
    """
    return Lcc2(1, a, 1, a - 1, a * (a - 1))


def coeff_at_least_one_ij(c, n: int):
    """P(pair of weight c occurs in n letters) = 1 - [z^n] 1/(1 - z + c z^2).

    With f_n = f_{n-1} - c f_{n-2}, f_0 = f_1 = 1, the complement
    h_n = 1 - f_n obeys h_n = h_{n-1} + c (1 - h_{n-2}), h_0 = h_1 = 0,
    which adds non-negative terms only.
    """
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    h_prev, h = 0 * c, 0 * c
    for _ in range(2, n + 1):
        h_prev, h = h, h + c * (1 - h_prev)
    return h


def coeff_at_least_one_ii(a, n: int):
    """P(letter of weight a appears twice in a row in n letters).

    From g_n = (1 - a) g_{n-1} + a (1 - a) g_{n-2} (g_0 = g_1 = 1), the
    complement h_n = 1 - g_n satisfies
    h_n = a^2 + (1 - a) h_{n-1} + a (1 - a) h_{n-2}, h_0 = h_1 = 0.
    """
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    h_prev, h = 0 * a, 0 * a
    a2, keep, both = a * a, 1 - a, a * (1 - a)
    for _ in range(2, n + 1):
        h_prev, h = h, a2 + keep * h + both * h_prev
    return h


def binomial_coeff_ii(a, n: int):
    """The same probability as a finite alternating sum in a.

    sum_s C(n,s) a^s (-1)^(s+1) - sum_s (1 - a)^(s-1) a^(n-s+1) C(s, n-s+1), s = 1..n.
    """
    if not 0 <= n <= 512:
        raise ValueError(f"n must be in 0..512, got {n}")
    first = sum(binomial(n, s) * a ** s * (-1) ** (s + 1) for s in range(1, n + 1))
    second = sum((1 - a) ** (s - 1) * a ** (n - s + 1) * binomial(s, n - s + 1) for s in range(1, n + 1))
    return first - second


def q_coeff(params: GeomParams, n: int, eps, prec: int = DEFAULT_PREC) -> CertifiedValue:
    """[z^n] of the expected-distinct-pairs generating function.

    Sums the recurrence probabilities over letters i and over anti-diagonals
    i + j of distinct pairs, with the same truncation and tail bounds as the
    closed-form sums.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    if n < 2:
        return CertifiedValue(mpmath.mpf(0), mpmath.mpf(0))
    with mpmath.workprec(prec):
        p, q = to_mpf(params.p), to_mpf(params.q)
        m = s_truncation(params, n, eps / 2)
        top = t_truncation(params, n, eps / 2)
        terms = [coeff_at_least_one_ii(p * q ** (i - 1), n) for i in range(1, m + 1)]
        terms += [pair_multiplicity(s) * coeff_at_least_one_ij(p * p * q ** (s - 2), n)
                  for s in range(3, top + 1)]
        value = mpmath.fsum(terms)
        count = len(terms) * n
        tail = (s_tail_bound(params, n, m) + t_tail_bound(params, n, top)
                + _rounding_allowance(value, count, prec))
        return CertifiedValue(value, tail, len(terms))
