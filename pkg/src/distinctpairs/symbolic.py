"""Exact univariate polynomials and rational functions in q.

Coefficients are Fractions, lowest power first.  A RationalFunction is kept
in canonical form: numerator and denominator coprime, and the lowest-order
nonzero coefficient of the denominator equal to 1 (for the series-style
denominators used here, ``1 - q^m`` and products of them, that is simply
the constant term).  Equality of canonical forms is coefficient equality.

Text format: ``num_coeffs;den_coeffs``, each a comma-separated list of
integers or ``a/b`` ratios, lowest power first, e.g. ``1,1;1,-1`` is
(1 + q)/(1 - q).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "PolyQ",
    "RationalFunction",
    "Q",
    "ONE",
    "ZERO",
    "P",
    "f4_closed_form",
    "ordered_geometric_sum",
    "rf_arith",
]


class PolyQ:
    """Polynomial in q with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, power: int, coeff=1) -> "PolyQ":
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lowest(self) -> Fraction:
        """Lowest-order nonzero coefficient."""
        for c in self.coeffs:
            if c:
                return c
        raise ZeroDivisionError("zero polynomial has no nonzero coefficient")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ([other])
        return isinstance(other, PolyQ) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyQ({[str(c) for c in self.coeffs]})"

    def __add__(self, other: "PolyQ") -> "PolyQ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, x in enumerate(b):
            res[i] += x
        return PolyQ(res)

    def __neg__(self) -> "PolyQ":
        return PolyQ([-c for c in self.coeffs])

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            return PolyQ([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ()
        res = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        return PolyQ(res)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyQ":
        result = PolyQ([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.coeffs
        lead = d[-1]
        quot = [Fraction(0)] * max(len(rem) - len(d) + 1, 0)
        for shift in range(len(rem) - len(d), -1, -1):
            factor = rem[shift + len(d) - 1] / lead
            if factor:
                quot[shift] = factor
                for i, x in enumerate(d):
                    rem[shift + i] -= factor * x
        return PolyQ(quot), PolyQ(rem[: len(d) - 1])

    def monic(self) -> "PolyQ":
        return self * (1 / self.coeffs[-1])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic gcd by Euclid's algorithm over the rationals."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, (r.monic() if not r.is_zero() else r)
    return a.monic() if not a.is_zero() else a


class RationalFunction:
    """num/den in canonical form; immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        num = num if isinstance(num, PolyQ) else PolyQ(num if isinstance(num, (list, tuple)) else [num])
        if den is None:
            den = PolyQ([1])
        elif not isinstance(den, PolyQ):
            den = PolyQ(den if isinstance(den, (list, tuple)) else [den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction(other)
        return isinstance(other, RationalFunction) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.serialize()!r})"

    def __add__(self, other):
        other = _coerce(other)
        g = poly_gcd(self.den, other.den)
        left, _ = other.den.divmod(g)
        right, _ = self.den.divmod(g)
        return RationalFunction(self.num * left + other.num * right, self.den * left)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction(1) / self ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def __call__(self, x):
        """Evaluate at q = x (Fraction in, Fraction out; floats and mpf work too)."""
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q = {x}")
        return self.num(x) / d

    def serialize(self) -> str:
        return ";".join(",".join(str(c) for c in poly.coeffs) or "0" for poly in (self.num, self.den))

    @classmethod
    def parse(cls, text: str) -> "RationalFunction":
        try:
            num_text, den_text = text.strip().split(";")
            num = [Fraction(t) for t in num_text.split(",") if t.strip()]
            den = [Fraction(t) for t in den_text.split(",") if t.strip()]
        except ValueError as exc:
            raise ValueError(f"malformed rational function text: {text!r}") from exc
        return cls(PolyQ(num), PolyQ(den))


def _canonicalize(num: PolyQ, den: PolyQ) -> tuple[PolyQ, PolyQ]:
    if num.is_zero():
        return num, PolyQ([1])
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, _ = num.divmod(g)
        den, _ = den.divmod(g)
    scale = 1 / den.lowest()
    return num * scale, den * scale


def _coerce(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction(x)
    if isinstance(x, PolyQ):
        return RationalFunction(x)
    return NotImplemented


ONE = RationalFunction(1)
ZERO = RationalFunction(0)
Q = RationalFunction(PolyQ([0, 1]))
#: p written in the single variable q
P = RationalFunction(PolyQ([1, -1]))


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Apply ``op`` in {add, sub, mul, div}."""
    try:
        fn = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(b)


def ordered_geometric_sum(multiplicities: Sequence[int]) -> RationalFunction:
    """Sum of q^(m_1 v_1 + ... + m_k v_k) over 1 <= v_1 < v_2 < ... < v_k.

    Writing v_t = v_{t-1} + w_t with w_t >= 1 (v_0 = 0), the exponent is
    sum_t w_t M_t with M_t = m_t + ... + m_k, so the sum factors as
    prod_t q^M_t / (1 - q^M_t).
    """
    m = list(multiplicities)
    if not m:
        raise ValueError("need at least one multiplicity")
    if any(x <= 0 for x in m):
        raise ValueError(f"multiplicities must be positive, got {m}")
    den = PolyQ([1])
    suffix = 0
    total = 0
    for x in reversed(m):
        suffix += x
        total += suffix
        den = den * (PolyQ([1]) - PolyQ.monomial(suffix))
    return RationalFunction(PolyQ.monomial(total), den)


def f4_closed_form() -> RationalFunction:
    """Expected distinct pairs in a word of length four, as a function of q."""
    num = PolyQ([1, 9, 15, 20, 17, 11, -1])
    one_plus_q = PolyQ([1, 1])
    den = one_plus_q * one_plus_q * PolyQ([1, 0, 1]) * PolyQ([1, 1, 1])
    return RationalFunction(num, den)
