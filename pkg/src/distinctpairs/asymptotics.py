"""Large-n expansions of S_n and T_n and the harmonic sums they approximate.

Both expansions come from Mellin-type residue analysis of

    S_n ~ sum_{i>=1} (1 - exp(-n (1-q)^2 q^(2i-2)))
    T_n ~ 2 sum_{i>=1} sum_{j>i} (1 - exp(-n p^2 q^(i+j-2)))

and are reported term by term in an :class:`AsymptoticBreakdown`.  The
oscillating parts are sums of Gamma at imaginary poles; the phase
convention of each is isolated in one function (:func:`equal_pairs_phase`,
:func:`unequal_pairs_scale`) so an alternative can be swapped in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath

from .model import GeomParams
from .numerics import DEFAULT_PREC, chi_k, complex_gamma, to_mpf

__all__ = [
    "AsymptoticBreakdown",
    "double_harmonic_oracle",
    "equal_pairs_phase",
    "harmonic_sum_oracle",
    "s_n_asymptotic",
    "t_n_asymptotic",
    "unequal_pairs_scale",
]


@dataclass(frozen=True)
class AsymptoticBreakdown:
    """Terms of an asymptotic expansion.

    ``fluctuation`` is the real part of the pole sum; ``imag_residue`` is the
    leftover imaginary part (zero up to rounding because poles come in
    conjugate pairs) and ``fluctuation_bound`` the sum of the moduli of all
    pole terms, an amplitude bound valid for every n.
    """

    leading: float
    secondary: float
    constant: float
    fluctuation: float
    imag_residue: float = 0.0
    fluctuation_bound: float = 0.0

    @property
    def total(self) -> float:
        return self.leading + self.secondary + self.constant + self.fluctuation

    @property
    def smooth(self) -> float:
        return self.leading + self.secondary + self.constant


def _check(n: int, K: int):
    if n < 2:
        raise ValueError(f"asymptotic expansions need n >= 2, got {n}")
    if K < 0:
        raise ValueError(f"K must be non-negative, got {K}")


def equal_pairs_phase(params: GeomParams, n: int) -> mpmath.mpf:
    """Phase x = log_{1/q^2}(n (1-q)^2) of the S_n fluctuation.

    Poles of 1/(1 - q^(-2s)) sit at 2 pi i k / ln(q^2); their residues
    against (n (1-q)^2)^(-s) give exp(2 pi i k x) with this x.
    """
    q = to_mpf(params.q)
    return mpmath.log(n * (1 - q) ** 2) / -mpmath.log(q * q)


def unequal_pairs_scale(params: GeomParams, n: int) -> mpmath.mpf:
    """Scale x in the x^(-chi) factor of the T_n fluctuation; x = n."""
    return mpmath.mpf(n)


def _conjugate_pair_sum(term: Callable, poles) -> tuple[mpmath.mpc, mpmath.mpf]:
    total = mpmath.mpc(0)
    bound = mpmath.mpf(0)
    for s in poles:
        for pole in (s, mpmath.conj(s)):
            t = term(pole)
            total += t
            bound += abs(t)
    return total, bound


def s_n_asymptotic(params: GeomParams, n: int, K: int = 3, prec: int = DEFAULT_PREC,
                   phase: Callable = equal_pairs_phase) -> AsymptoticBreakdown:
    """Expansion of the expected number of distinct ``ii`` pairs.

    (1/2) log_{1/q} n + 1/2 - (gamma + 2 log(1-q)) / (2 log q)
    + (1 / (2 log q)) sum_{k != 0} Gamma(chi_k) exp(2 k pi i x),
    chi_k = 2 pi i k / log(q^2).
    """
    _check(n, K)
    with mpmath.workprec(prec):
        q = to_mpf(params.q)
        lq = mpmath.log(q)
        leading = mpmath.log(n) / -lq / 2
        constant = mpmath.mpf(0.5) - (mpmath.euler + 2 * mpmath.log(1 - q)) / (2 * lq)
        x = phase(params, n)
        rho = q * q

        def term(chi):
            # exp(2 k pi i x) = exp(chi x log rho)
            return complex_gamma(chi, prec) * mpmath.exp(chi * x * mpmath.log(rho)) / (2 * lq)

        poles = [chi_k(rho, k, "even", prec) for k in range(1, K + 1)]
        fluct, bound = _conjugate_pair_sum(term, poles)
        return AsymptoticBreakdown(
            float(leading), 0.0, float(constant), float(fluct.real), float(fluct.imag), float(bound)
        )


def t_n_asymptotic(params: GeomParams, n: int, K: int = 3, prec: int = DEFAULT_PREC,
                   scale: Callable = unequal_pairs_scale,
                   fluctuation: str = "simple") -> AsymptoticBreakdown:
    """Expansion of the expected number of distinct ``ij`` pairs, i != j.

    Triple pole at 0 gives (1/2)(log_q n)^2, a log_q n term and a constant;
    with ``fluctuation="simple"`` the double poles chi_k = 2 pi i k / log q
    contribute 3 (1-q)^(-2 chi) x^(-chi) Gamma(chi) / (2 log q) each and the
    simple poles at odd multiples (2m-1) pi i / log q contribute
    (1-q)^(-2 chi) x^(-chi) Gamma(chi) / (2 log q).  The odd family is
    summed over m in Z, i.e. over the conjugate pairs +-1, +-3, ...

    ``fluctuation="residue"`` uses the complete residues instead:
    Gamma(chi) p^(-2 chi) n^(-chi) (psi(chi) - 2 log p + log(q)/2 - log n) / log(q)^2
    at the double poles and -Gamma(chi) p^(-2 chi) n^(-chi) / (2 log q) at
    the odd ones.
    """
    _check(n, K)
    if fluctuation not in ("simple", "residue"):
        raise ValueError(f"fluctuation must be 'simple' or 'residue', got {fluctuation!r}")
    with mpmath.workprec(prec):
        p, q = to_mpf(params.p), to_mpf(params.q)
        lp, lq, g = mpmath.log(p), mpmath.log(q), mpmath.euler
        log_q_n = mpmath.log(n) / lq
        leading = log_q_n ** 2 / 2
        secondary = (2 * g + 4 * lp - lq) * log_q_n / (2 * lq)
        constant = (6 * g ** 2 + mpmath.pi ** 2 + 24 * lp ** 2 + 12 * lp * (2 * g - lq)
                    - 6 * g * lq - lq ** 2) / (12 * lq ** 2)
        x = scale(params, n)

        def pole_term(weight):
            def term(chi):
                return weight * p ** (-2 * chi) * x ** (-chi) * complex_gamma(chi, prec) / (2 * lq)
            return term

        def double_pole_residue(chi):
            log_part = mpmath.digamma(chi) - 2 * lp + lq / 2 - mpmath.log(n)
            return complex_gamma(chi, prec) * p ** (-2 * chi) * x ** (-chi) * log_part / lq ** 2

        if fluctuation == "simple":
            even_term, odd_term = pole_term(3), pole_term(1)
        else:
            even_term, odd_term = double_pole_residue, pole_term(-1)
        even, even_bound = _conjugate_pair_sum(even_term, [chi_k(q, k, "even", prec) for k in range(1, K + 1)])
        odd, odd_bound = _conjugate_pair_sum(odd_term, [chi_k(q, k, "odd", prec) for k in range(1, K + 1)])
        fluct = even + odd
        return AsymptoticBreakdown(
            float(leading), float(secondary), float(constant), float(fluct.real),
            float(fluct.imag), float(even_bound + odd_bound),
        )


_CUTOFF = 1e-16


def harmonic_sum_oracle(params: GeomParams, n: int) -> float:
    """sum_{i>=1} (1 - exp(-n (1-q)^2 q^(2i-2))) by direct summation in doubles."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    q = float(params.q)
    scale = n * (1 - q) ** 2
    total = 0.0
    i = 1
    while True:
        x = scale * q ** (2 * i - 2)
        if x < _CUTOFF:
            break
        total += -math.expm1(-x)
        i += 1
    return total


def double_harmonic_oracle(params: GeomParams, n: int) -> float:
    """2 sum_{i>=1} sum_{j>i} (1 - exp(-n p^2 q^(i+j-2))) by a direct double loop in doubles."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    p, q = float(params.p), float(params.q)
    scale = n * p * p
    total = 0.0
    i = 1
    while scale * q ** (2 * i - 1) >= _CUTOFF:
        row = 0.0
        j = i + 1
        while True:
            x = scale * q ** (i + j - 2)
            if x < _CUTOFF:
                break
            row += -math.expm1(-x)
            j += 1
        total += row
        i += 1
    return 2 * total
