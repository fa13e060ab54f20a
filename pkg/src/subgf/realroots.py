"""Exact real-root counting, isolation, and positivity certificates.

Sturm's theorem: for square-free p with chain p0 = p, p1 = p',
p_{i+1} = -rem(p_{i-1}, p_i), the number of distinct real roots of p in
(l, r] equals V(l) - V(r), where V(x) is the number of sign changes along
the chain at x (zeros skipped) and p(l) != 0.

Chain members are computed as pseudo-remainders over the integers with
content stripping, so each member is a positive rational multiple of the
textbook chain member; all sign counts are identical.  Coefficients use
gmpy2 integers when available, which matters for chains of degree ~750.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EndpointIsRootError,
    NegativeOnIntervalError,
    NoRootError,
    RootPresentError,
    ZeroPolynomialError,
)
from .polynomials import ExactPolynomial, _frac

try:
    from gmpy2 import gcd as _gcd, mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from math import gcd as _gcd

    _mpz = int

_SHRINK = Fraction(1, 2**64)


def _strip(cs: list) -> list:
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _icontent(cs) -> int:
    g = 0
    for c in cs:
        if c:
            g = _gcd(g, abs(c))
            if g == 1:
                return 1
    return g if g else 1


def _primitive(cs: list) -> list:
    g = _icontent(cs)
    if g != 1:
        cs = [c // g for c in cs]
    return cs


def _neg_prem_primitive(f: list, g: list) -> list:
    """Primitive integer polynomial equal to a positive rational multiple of
    -rem(f, g).  Empty list when g divides f."""
    dg = len(g) - 1
    lg = g[-1]
    r = list(f)
    scalings = 0
    for k in range(len(f) - 1 - dg, -1, -1):
        top = r[dg + k]
        if not top:
            continue
        for i in range(len(r)):
            r[i] *= lg
        scalings += 1
        for i in range(dg + 1):
            r[k + i] -= top * g[i]
    del r[dg:]
    _strip(r)
    if not r:
        return []
    flipped = lg < 0 and scalings % 2 == 1
    if not flipped:
        r = [-c for c in r]
    return _primitive(r)


def _build_chain(p0: list) -> list[list]:
    chain = [p0]
    p1 = _strip([i * c for i, c in enumerate(p0)][1:])
    if not p1:
        return chain
    chain.append(_primitive(p1))
    while len(chain[-1]) > 1:
        nxt = _neg_prem_primitive(chain[-2], chain[-1])
        if not nxt:
            break
        chain.append(nxt)
    return chain


def _exact_div_int(f: list, g: list) -> list:
    out = [0] * (len(f) - len(g) + 1)
    rem = list(f)
    lg = g[-1]
    for k in range(len(out) - 1, -1, -1):
        top = rem[len(g) - 1 + k]
        if top % lg:
            raise ArithmeticError("inexact polynomial division")
        c = top // lg
        out[k] = c
        if c:
            for i in range(len(g)):
                rem[k + i] -= c * g[i]
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return out


def _deflate_root(p: list, num: int, den: int) -> list:
    """Divide p exactly by (den*X - num)."""
    d = len(p) - 1
    q = [0] * d
    carry = p[d]
    for i in range(d - 1, -1, -1):
        if carry % den:
            raise ArithmeticError("inexact deflation")
        q[i] = carry // den
        carry = p[i] + q[i] * num
    if carry:
        raise ArithmeticError("inexact deflation")
    return q


def _sign_at(cs: list, num, shift_exp, den_pows) -> int:
    """Sign of the homogeneous value sum(c_i * num**i * den**(d-i))."""
    d = len(cs) - 1
    if d < 0:
        return 0
    acc = cs[d]
    if shift_exp is not None:  # denominator is a power of two: pure shifts
        for i in range(d - 1, -1, -1):
            acc *= num
            c = cs[i]
            if c:
                acc += c << (shift_exp * (d - i))
    else:
        for i in range(d - 1, -1, -1):
            acc *= num
            c = cs[i]
            if c:
                acc += c * den_pows[d - i]
    return 1 if acc > 0 else (-1 if acc < 0 else 0)


class SturmChain:
    """Sturm chain of the square-free part of a polynomial, with cached
    sign-variation counts at rational points."""

    def __init__(self, polynomial: ExactPolynomial):
        if polynomial.is_zero:
            raise ZeroPolynomialError("cannot build a Sturm chain of 0")
        self.polynomial = polynomial
        ints, _ = polynomial.integer_coefficients()
        work = _primitive([_mpz(c) for c in ints])
        self._original_ints = list(work)
        while True:
            chain = _build_chain(work)
            if len(chain) == 1 or len(chain[-1]) == 1:
                # constant input, or the chain ends in a nonzero constant,
                # which is exactly the square-free case
                break
            # chain terminated early: its last member is gcd(p, p') up to a
            # constant; divide it out and rebuild
            work = _primitive(_exact_div_int(work, chain[-1]))
        self._chain = chain
        self._square_free = chain[0]
        self._vcache: dict[tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self._chain)

    @property
    def members(self) -> tuple[ExactPolynomial, ...]:
        return tuple(ExactPolynomial([int(c) for c in m]) for m in self._chain)

    @property
    def square_free_part(self) -> ExactPolynomial:
        return ExactPolynomial([int(c) for c in self._square_free])

    def sign_at(self, x) -> int:
        """Sign of the square-free part at a rational point."""
        num, e, dp = _point_data(_frac(x), len(self._square_free) - 1)
        return _sign_at(self._square_free, num, e, dp)

    def original_sign_at(self, x) -> int:
        num, e, dp = _point_data(_frac(x), len(self._original_ints) - 1)
        return _sign_at(self._original_ints, num, e, dp)

    def variations(self, x) -> int:
        x = _frac(x)
        key = (x.numerator, x.denominator)
        cached = self._vcache.get(key)
        if cached is not None:
            return cached
        dmax = max(len(m) for m in self._chain) - 1
        num, e, dp = _point_data(x, dmax)
        signs = [s for m in self._chain if (s := _sign_at(m, num, e, dp))]
        count = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
        self._vcache[key] = count
        return count

    def count(self, lower, upper) -> int:
        lower, upper = _frac(lower), _frac(upper)
        if not lower < upper:
            raise ValueError("need lower < upper")
        if self.sign_at(lower) == 0:
            raise EndpointIsRootError(f"polynomial vanishes at {lower}")
        return self.variations(lower) - self.variations(upper)


def _point_data(x: Fraction, dmax: int):
    num, den = _mpz(x.numerator), x.denominator
    if den & (den - 1) == 0:  # power of two: shifts instead of multiplies
        return num, den.bit_length() - 1, None
    dp = [_mpz(1)] * (dmax + 1)
    d = _mpz(den)
    for i in range(1, dmax + 1):
        dp[i] = dp[i - 1] * d
    return num, None, dp


def sturm_chain(p: ExactPolynomial) -> SturmChain:
    return SturmChain(p)


def _as_chain(p) -> SturmChain:
    return p if isinstance(p, SturmChain) else SturmChain(p)


def count_roots(p, lower, upper) -> int:
    """Number of distinct real roots in (lower, upper]."""
    return _as_chain(p).count(lower, upper)


def nudge_off_root(chain: SturmChain, x, toward) -> Fraction:
    """Move x toward `toward` in steps of 2**-64 of the gap until the
    square-free part no longer vanishes; finitely many roots guarantee
    termination."""
    x, toward = _frac(x), _frac(toward)
    gap = toward - x
    step = gap * _SHRINK
    while chain.sign_at(x) == 0:
        x += step
        step *= 2
        if abs(step) > abs(gap):
            raise ArithmeticError("no root-free point found while nudging")
    return x


def _deflated_at(chain: SturmChain, point: Fraction) -> SturmChain:
    """Chain of the square-free part with every root at `point` divided out;
    its count over (point, b] is exact even though p(point) == 0."""
    work = list(chain._square_free)
    num, e, dp = _point_data(point, len(work) - 1)
    while len(work) > 1 and _sign_at(work, num, e, dp) == 0:
        work = _deflate_root(work, point.numerator, point.denominator)
    return SturmChain(ExactPolynomial([int(c) for c in work]))


def isolate_max_root(p, lower, upper, eps) -> tuple[Fraction, Fraction]:
    """Bracket (u, v) with v - u <= eps around the largest root in
    (lower, upper], by bisection with exact Sturm counts."""
    chain = _as_chain(p)
    lo, hi = _frac(lower), _frac(upper)
    eps = _frac(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if chain.count(lo, hi) < 1:
        raise NoRootError(f"no root in ({lo}, {hi}]")
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if chain.sign_at(mid) == 0:
            # mid is exactly a root; count strictly above it on a chain with
            # that root divided out
            if _deflated_at(chain, mid).count(mid, hi) >= 1:
                lo = mid
            else:
                half = eps / 2
                return mid - half, min(mid + half, hi)
        elif chain.count(mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return lo, hi


@dataclass(frozen=True)
class ExclusionCertificate:
    """Proof object: the polynomial has no root in the open interval and is
    strictly positive at the sample, hence strictly positive throughout."""

    poly_degree: int
    poly_sha256: str
    lower: Fraction
    upper: Fraction
    root_count_in_interval: int
    sample_point: Fraction
    sample_sign: str


def poly_fingerprint(p: ExactPolynomial) -> str:
    payload = ";".join(str(c) for c in p.coefficients).encode()
    return hashlib.sha256(payload).hexdigest()


def certify_positive(p, lower, upper) -> ExclusionCertificate:
    """Certify p > 0 on the open interval (lower, upper).

    Roots exactly at an endpoint are allowed: they are divided out before
    counting, so the count refers to the open interval only.
    """
    chain = _as_chain(p)
    lo, hi = _frac(lower), _frac(upper)
    if not lo < hi:
        raise ValueError("need lower < upper")
    work = list(chain._square_free)
    deflated = False
    for pt in (lo, hi):
        num, e, dp = _point_data(pt, len(work) - 1)
        while len(work) > 1 and _sign_at(work, num, e, dp) == 0:
            work = _deflate_root(work, pt.numerator, pt.denominator)
            deflated = True
    # after deflation neither endpoint is a root, so the count over (lo, hi]
    # is exactly the number of distinct roots in the open interval
    counting_chain = (
        SturmChain(ExactPolynomial([int(c) for c in work])) if deflated else chain
    )
    count = counting_chain.count(lo, hi)
    if count > 0:
        bracket = isolate_max_root(counting_chain, lo, hi, Fraction(1, 2**40))
        raise RootPresentError(f"root inside ({lo}, {hi})", bracket)
    sample = (lo + hi) / 2
    sign = chain.original_sign_at(sample)
    if sign < 0:
        raise NegativeOnIntervalError(f"polynomial is negative at {sample}")
    if sign == 0:
        raise AssertionError("zero count but vanishing sample")
    return ExclusionCertificate(
        poly_degree=chain.polynomial.degree,
        poly_sha256=poly_fingerprint(chain.polynomial),
        lower=lo,
        upper=hi,
        root_count_in_interval=0,
        sample_point=sample,
        sample_sign="+",
    )
