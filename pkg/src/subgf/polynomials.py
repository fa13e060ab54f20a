"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored constant-term first.  The zero polynomial has
degree -1; every nonzero polynomial has a nonzero trailing coefficient.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class ExactPolynomial:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> ExactPolynomial:
        return cls(())

    @classmethod
    def one(cls) -> ExactPolynomial:
        return cls((1,))

    @classmethod
    def monomial(cls, exponent: int, coefficient=1) -> ExactPolynomial:
        if exponent < 0:
            raise ValueError("exponent must be >= 0")
        return cls([0] * exponent + [coefficient])

    @classmethod
    def from_exponents(cls, exponents) -> ExactPolynomial:
        """0/1 polynomial with a 1 at each listed exponent."""
        exps = list(exponents)
        cs = [0] * (max(exps) + 1 if exps else 0)
        for e in exps:
            cs[e] = 1
        return cls(cs)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if not self._coeffs:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == ExactPolynomial((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other) -> ExactPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ExactPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> ExactPolynomial:
        return ExactPolynomial([-c for c in self._coeffs])

    def __sub__(self, other) -> ExactPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> ExactPolynomial:
        return (-self) + other

    def __mul__(self, other) -> ExactPolynomial:
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            return ExactPolynomial([c * x for x in self._coeffs])
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return ExactPolynomial.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> ExactPolynomial:
        """Multiply by X**k."""
        if k < 0:
            raise ValueError("shift must be >= 0")
        if not self._coeffs:
            return self
        return ExactPolynomial((Fraction(0),) * k + self._coeffs)

    def __call__(self, x) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        """Exact sign of the value at a rational point, without building the
        full value as a Fraction when coefficients are integers."""
        x = _frac(x)
        num, den = x.numerator, x.denominator
        if all(c.denominator == 1 for c in self._coeffs):
            d = self.degree
            if d < 0:
                return 0
            acc = self._coeffs[d].numerator
            dp = 1
            for i in range(d - 1, -1, -1):
                dp *= den
                acc = acc * num + self._coeffs[i].numerator * dp
            return (acc > 0) - (acc < 0)
        v = self(x)
        return (v > 0) - (v < 0)

    def derivative(self) -> ExactPolynomial:
        return ExactPolynomial([i * c for i, c in enumerate(self._coeffs)][1:])

    def __divmod__(self, other: ExactPolynomial):
        if not isinstance(other, ExactPolynomial):
            other = ExactPolynomial((other,))
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dq = len(rem) - len(other._coeffs)
        if dq < 0:
            return ExactPolynomial.zero(), self
        quo = [Fraction(0)] * (dq + 1)
        inv_lead = 1 / other.leading_coefficient
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quo[k] = c
            if c:
                for i, oc in enumerate(other._coeffs):
                    rem[k + i] -= c * oc
        return ExactPolynomial(quo), ExactPolynomial(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: ExactPolynomial) -> ExactPolynomial:
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    def integer_coefficients(self) -> tuple[list[int], int]:
        """Return (ints, den) with den > 0 and den * self having the listed
        integer coefficients."""
        den = 1
        for c in self._coeffs:
            den = lcm(den, c.denominator)
        return [int(c * den) for c in self._coeffs], den

    def content(self) -> Fraction:
        if not self._coeffs:
            return Fraction(0)
        ints, den = self.integer_coefficients()
        g = 0
        for c in ints:
            g = gcd(g, c)
        return Fraction(g, den)

    def primitive_part(self) -> ExactPolynomial:
        if not self._coeffs:
            return self
        return self * (1 / self.content())

    def monic(self) -> ExactPolynomial:
        if not self._coeffs:
            return self
        return self * (1 / self.leading_coefficient)

    def gcd(self, other: ExactPolynomial) -> ExactPolynomial:
        """Monic greatest common divisor over the rationals."""
        a, b = self, other
        if a.is_zero:
            return b.monic() if not b.is_zero else b
        while not b.is_zero:
            a, b = b, a % b
            if not b.is_zero:
                # keep coefficients small between steps
                b = b.primitive_part()
        return a.monic()

    def square_free_part(self) -> ExactPolynomial:
        if self.degree < 1:
            return self.monic() if not self.is_zero else self
        g = self.gcd(self.derivative())
        if g.degree < 1:
            return self.monic()
        return self.exact_div(g).monic()

    def to_string(self, var: str = "X") -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                body = mag + (var if i == 1 else f"{var}^{i}")
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"ExactPolynomial({self.to_string()})"

    def _coerce(self, other):
        if isinstance(other, ExactPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactPolynomial((other,))
        return NotImplemented


X = ExactPolynomial((0, 1))
