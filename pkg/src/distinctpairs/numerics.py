"""Exact and high-precision numerics.

Exact rationals are :class:`fractions.Fraction`; high-precision reals and
complex numbers are :mod:`mpmath` ``mpf``/``mpc`` values.  The gamma
function is our own Spouge approximation (with reflection for the left
half plane) so that it can be checked against mpmath independently.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

__all__ = [
    "DEFAULT_PREC",
    "DomainError",
    "binomial",
    "cancellation_prec",
    "chi_k",
    "complex_gamma",
    "to_mpf",
]

#: Default mantissa width (bits) for high-precision reals.
DEFAULT_PREC = 128


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


def cancellation_prec(n: int, base: int = DEFAULT_PREC) -> int:
    """Working precision for an alternating sum whose terms grow with ``n``."""
    return max(base, n + 64)


def to_mpf(x) -> mpmath.mpf:
    """Convert an int, Fraction, float or mpf at the current precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# Spouge's approximation:
#   Gamma(z + 1) = (z + a)^(z + 1/2) e^-(z + a) [c_0 + sum_{k=1}^{a-1} c_k / (z + k) + eps]
#   c_0 = sqrt(2 pi),  c_k = (-1)^(k-1) / (k-1)! * (a - k)^(k - 1/2) e^(a - k)
# with |eps| relative error below a^(-1/2) (2 pi)^-(a + 1/2) for Re(z + a) > 0.
# The c_k alternate and reach ~ (2 pi)^a, so they are formed with `a * 3`
# guard bits on top of the target precision.


def _spouge_order(prec: int) -> int:
    # (2 pi)^-(a + 1/2) <= 2^-(prec + 8)
    return int(math.ceil((prec + 8) * math.log(2) / math.log(2 * math.pi))) + 1


@lru_cache(maxsize=16)
def _spouge_coefficients(a: int, prec: int) -> tuple:
    with mpmath.workprec(prec):
        coeffs = [mpmath.sqrt(2 * mpmath.pi)]
        fact = mpmath.mpf(1)
        for k in range(1, a):
            if k > 1:
                fact *= k - 1
            ck = (-1) ** (k - 1) * mpmath.power(a - k, k - mpmath.mpf(0.5)) * mpmath.exp(a - k) / fact
            coeffs.append(ck)
    return tuple(coeffs)


def _is_nonpositive_integer(s: mpmath.mpc) -> bool:
    return s.imag == 0 and s.real <= 0 and s.real == mpmath.floor(s.real)


def complex_gamma(s, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """Gamma function at a complex argument.

    Accurate to roughly ``prec`` bits relative on the region used by the
    fluctuation terms (|Im s| up to a few hundred).  Raises
    :class:`DomainError` at the poles 0, -1, -2, ...
    """
    a = _spouge_order(prec)
    work = prec + 3 * a
    with mpmath.workprec(work):
        s = mpmath.mpc(s)
        if _is_nonpositive_integer(s):
            raise DomainError(f"gamma has a pole at {s}")
        if s.real < 0.5:
            # reflection: Gamma(s) Gamma(1 - s) = pi / sin(pi s)
            g = mpmath.pi / (mpmath.sin(mpmath.pi * s) * _spouge(1 - s, a, work))
        else:
            g = _spouge(s, a, work)
    with mpmath.workprec(prec):
        return +g


def _spouge(s: mpmath.mpc, a: int, work: int) -> mpmath.mpc:
    coeffs = _spouge_coefficients(a, work)
    z = s - 1
    acc = coeffs[0]
    for k in range(1, a):
        acc += coeffs[k] / (z + k)
    t = z + a
    return mpmath.exp((z + mpmath.mpf(0.5)) * mpmath.log(t) - t) * acc


def chi_k(q, k: int, parity: str = "even", prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """Imaginary pole of the fluctuation terms.

    ``even``: 2 pi i k / ln q.   ``odd``: (2k - 1) pi i / ln q.
    """
    if k == 0:
        raise DomainError("k must be nonzero")
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    with mpmath.workprec(prec):
        q = to_mpf(q)
        if not 0 < q < 1:
            raise DomainError("q must lie in (0, 1)")
        m = 2 * k if parity == "even" else 2 * k - 1
        return mpmath.mpc(0, m * mpmath.pi / mpmath.log(q))
