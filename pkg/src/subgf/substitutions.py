"""Substitutions on finite alphabets: rule parsing, substitution matrices,
primitivity, Perron-Frobenius data, one-sided fixed words, and the
aperiodicity verdict.

Letters are single characters from [A-Za-z0-9]; words are plain strings.
All values are immutable after construction.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterator, Optional, Union

from .errors import (
    DuplicateRuleError,
    EmptyImageError,
    NoGrowingFixedPointError,
    NotPrimitiveError,
    RuleSyntaxError,
    UnknownLetterError,
    WrongAlphabetSizeError,
)
from .periodicity import detect_period, verify_witness
from .polynomials import ExactPolynomial
from .realroots import SturmChain, isolate_max_root

_LETTER = re.compile(r"[A-Za-z0-9]")


@dataclass(frozen=True)
class Alphabet:
    """Ordered distinct single-character symbols; the order fixes matrix
    indexing."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must contain at least one letter")
        seen = set()
        for ch in self.letters:
            if len(ch) != 1 or not _LETTER.fullmatch(ch):
                raise ValueError(f"invalid letter {ch!r}")
            if ch in seen:
                raise ValueError(f"duplicate letter {ch!r}")
            seen.add(ch)

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise KeyError(f"letter {letter!r} not in alphabet") from None

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter):
        return letter in self.letters


@dataclass(frozen=True)
class Substitution:
    """Map letter -> non-empty word, extended to words by concatenation."""

    alphabet: Alphabet
    images: tuple[str, ...]

    def __post_init__(self):
        if len(self.images) != len(self.alphabet):
            raise ValueError("one image per letter required")
        for letter, image in zip(self.alphabet, self.images):
            if not image:
                raise ValueError(f"empty image for {letter!r}")
            for ch in image:
                if ch not in self.alphabet:
                    raise ValueError(f"image of {letter!r} uses unknown letter {ch!r}")

    @classmethod
    def from_rules(cls, rules: dict[str, str]) -> Substitution:
        alphabet = Alphabet(tuple(rules))
        return cls(alphabet, tuple(rules.values()))

    @property
    def rules(self) -> dict[str, str]:
        return dict(zip(self.alphabet.letters, self.images))

    def image(self, letter: str) -> str:
        return self.images[self.alphabet.index(letter)]

    def apply(self, word: str) -> str:
        table = self.rules
        return "".join(table[ch] for ch in word)

    def apply_power(self, word: str, m: int) -> str:
        for _ in range(m):
            word = self.apply(word)
        return word

    def power(self, m: int) -> Substitution:
        """The substitution whose images are the m-fold images of this one."""
        if m < 1:
            raise ValueError("power must be >= 1")
        return Substitution(
            self.alphabet,
            tuple(self.apply_power(letter, m) for letter in self.alphabet),
        )

    def image_lengths(self, m: int) -> dict[str, int]:
        """|sigma^m(letter)| for every letter, via length vectors (no words
        are expanded)."""
        lengths = {a: 1 for a in self.alphabet}
        for _ in range(m):
            lengths = {
                a: sum(lengths[b] for b in self.image(a)) for a in self.alphabet
            }
        return lengths

    def letter_counts(self, m: int) -> dict[str, dict[str, int]]:
        """counts[a][b] = number of b's in sigma^m(a)."""
        counts = {a: {b: int(a == b) for b in self.alphabet} for a in self.alphabet}
        for _ in range(m):
            counts = {
                a: {
                    b: sum(counts[c][b] for c in self.image(a))
                    for b in self.alphabet
                }
                for a in self.alphabet
            }
        return counts

    def __str__(self):
        return "\n".join(f"{a} -> {img}" for a, img in zip(self.alphabet, self.images))


def parse_substitution(text: str) -> Substitution:
    """Parse rule text, one `<letter> -> <image>` per line.

    Blank lines are ignored and `#` starts a comment.  The alphabet is the
    set of left-hand sides in order of first appearance.
    """
    rules: dict[str, str] = {}
    image_spans: list[tuple[str, str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "->" not in line:
            raise RuleSyntaxError("expected '<letter> -> <image>'", lineno, 1)
        left, right = line.split("->", 2)[:2]
        lhs = left.strip()
        lhs_col = len(left) - len(left.lstrip()) + 1
        if len(lhs) != 1 or not _LETTER.fullmatch(lhs):
            raise RuleSyntaxError(
                f"left side must be a single letter, got {lhs!r}", lineno, lhs_col
            )
        if lhs in rules:
            raise DuplicateRuleError(f"duplicate rule for {lhs!r}", lineno, lhs_col)
        image = right.strip()
        image_col = line.index("->") + 3 + (len(right) - len(right.lstrip()))
        if not image:
            raise EmptyImageError(
                f"empty image for {lhs!r}; images must be non-empty", lineno, image_col
            )
        for i, ch in enumerate(image):
            if not _LETTER.fullmatch(ch):
                raise RuleSyntaxError(
                    f"image must be a contiguous string of letters, got {ch!r}",
                    lineno,
                    image_col + i,
                )
        rules[lhs] = image
        image_spans.append((lhs, image, lineno, image_col))
    if not rules:
        raise RuleSyntaxError("no rules found", 1, 1)
    for lhs, image, lineno, col in image_spans:
        for i, ch in enumerate(image):
            if ch not in rules:
                raise UnknownLetterError(
                    f"image of {lhs!r} uses {ch!r}, which has no rule",
                    lineno,
                    col + i,
                )
    return Substitution.from_rules(rules)


@dataclass(frozen=True)
class SubstitutionMatrix:
    """Non-negative integer matrix; entry (i, j) counts letter j in the image
    of letter i."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.rows)
        for row in self.rows:
            if len(row) != k:
                raise ValueError("matrix must be square")
            if any(e < 0 for e in row):
                raise ValueError("entries must be non-negative")
            if sum(row) < 1:
                raise ValueError("every row must sum to at least 1")

    @property
    def k(self) -> int:
        return len(self.rows)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)

    def __mul__(self, other: SubstitutionMatrix) -> SubstitutionMatrix:
        k = self.k
        out = tuple(
            tuple(
                sum(self.rows[i][t] * other.rows[t][j] for t in range(k))
                for j in range(k)
            )
            for i in range(k)
        )
        return SubstitutionMatrix(out)

    def power(self, m: int) -> SubstitutionMatrix:
        if m < 1:
            raise ValueError("power must be >= 1")
        out = self
        for _ in range(m - 1):
            out = out * self
        return out

    def is_positive(self) -> bool:
        return all(e > 0 for row in self.rows for e in row)


def substitution_matrix(s: Substitution) -> SubstitutionMatrix:
    return SubstitutionMatrix(
        tuple(
            tuple(s.image(a).count(b) for b in s.alphabet) for a in s.alphabet
        )
    )


def is_primitive(m: SubstitutionMatrix) -> Optional[int]:
    """Smallest power making the matrix entrywise positive, or None.

    Uses boolean reachability (rows as bitmasks) up to the bound
    (k-1)*k + 1, which suffices for primitive non-negative matrices.
    """
    k = m.k
    base = [sum(1 << j for j, e in enumerate(row) if e) for row in m.rows]
    full = (1 << k) - 1
    cur = list(base)
    for power in range(1, (k - 1) * k + 2):
        if all(r == full for r in cur):
            return power
        nxt = []
        for row in cur:
            acc = 0
            j = 0
            while row:
                if row & 1:
                    acc |= base[j]
                row >>= 1
                j += 1
            nxt.append(acc)
        cur = nxt
    return None


def characteristic_polynomial(m: SubstitutionMatrix) -> ExactPolynomial:
    """det(X*I - A), monic with integer coefficients, by the
    Faddeev-LeVerrier trace recurrence."""
    k = m.k
    a = [[Fraction(e) for e in row] for row in m.rows]
    work = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    coeffs = [Fraction(0)] * (k + 1)
    coeffs[k] = Fraction(1)
    for step in range(1, k + 1):
        prod = [
            [sum(a[i][t] * work[t][j] for t in range(k)) for j in range(k)]
            for i in range(k)
        ]
        c = -sum(prod[i][i] for i in range(k)) / step
        coeffs[k - step] = c
        work = [
            [prod[i][j] + (c if i == j else 0) for j in range(k)] for i in range(k)
        ]
    poly = ExactPolynomial(coeffs)
    assert all(c.denominator == 1 for c in poly.coefficients)
    return poly


def _irreducible_factors(p: ExactPolynomial) -> list[ExactPolynomial]:
    """Monic irreducible factors (with multiplicity) of a monic integer
    polynomial.  Rational roots of monic integer polynomials are integers,
    so degrees 2 and 3 are irreducible once integer roots are stripped;
    higher degrees fall back to sympy."""
    factors: list[ExactPolynomial] = []
    work = p.monic()
    x = ExactPolynomial((0, 1))
    while work.degree > 0 and work.coefficient(0) == 0:
        factors.append(x)
        work = work.exact_div(x)
    const = abs(work.coefficient(0).numerator)
    if work.degree > 0 and const:
        for r in sorted(_divisors(const), key=abs):
            for root in (r, -r):
                lin = ExactPolynomial((-root, 1))
                while work.degree > 0 and work.sign_at(root) == 0:
                    factors.append(lin)
                    work = work.exact_div(lin)
    if work.degree in (1, 2, 3):
        factors.append(work)
    elif work.degree >= 4:
        from sympy import Poly, symbols  # deferred: only needed for k >= 4

        var = symbols("x")
        coeffs = [int(c) for c in reversed(work.coefficients)]
        _, parts = Poly(coeffs, var).factor_list()
        for fac, mult in parts:
            g = ExactPolynomial(list(reversed([Fraction(c) for c in fac.all_coeffs()])))
            factors.extend([g.monic()] * mult)
    return factors


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


@dataclass(frozen=True)
class PFData:
    """Perron-Frobenius data of a primitive substitution matrix."""

    char_poly: ExactPolynomial
    min_poly_of_pf: ExactPolynomial
    pf_lower: Fraction
    pf_upper: Fraction
    is_rational: bool
    primitivity_witness: int

    @property
    def pf_enclosure(self) -> tuple[Fraction, Fraction]:
        return self.pf_lower, self.pf_upper


_PF_WIDTH = Fraction(1, 10**12)


def pf_data(m: SubstitutionMatrix) -> PFData:
    """Characteristic polynomial, minimal polynomial of the dominant
    eigenvalue, and a rational enclosure of it with width <= 1e-12."""
    witness = is_primitive(m)
    if witness is None:
        raise NotPrimitiveError("matrix is not primitive")
    char = characteristic_polynomial(m)
    chain = SturmChain(char)
    # the dominant eigenvalue lies in [1, max row sum]; rational roots of a
    # monic integer polynomial are integers, so no root can sit at 1/2
    lower = Fraction(1, 2)
    upper = Fraction(max(m.row_sums()) + 1)
    lo, hi = isolate_max_root(chain, lower, upper, Fraction(1, 2**32))
    while chain.count(lo, hi) > 1:
        mid = (lo + hi) / 2
        if chain.count(mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    candidates = []
    for f in dict.fromkeys(_irreducible_factors(char)):
        fchain = SturmChain(f)
        if fchain.sign_at(lo) == 0:
            # an irreducible factor with a rational root is X - lo itself,
            # whose only root is excluded from (lo, hi]
            continue
        if fchain.count(lo, hi) >= 1:
            candidates.append(f)
    if len(candidates) != 1:
        raise AssertionError("dominant root not isolated to a unique factor")
    min_poly = candidates[0]
    if min_poly.degree == 1:
        root = -min_poly.coefficient(0)
        half = _PF_WIDTH / 4
        plo, phi = root - half, root + half
    else:
        mchain = SturmChain(min_poly)
        plo, phi = isolate_max_root(mchain, lower, upper, _PF_WIDTH / 2)
        while mchain.count(plo, phi) > 1:
            mid = (plo + phi) / 2
            if mchain.count(mid, phi) >= 1:
                plo = mid
            else:
                phi = mid
    assert min_poly.sign_at(plo) * min_poly.sign_at(phi) < 0
    return PFData(
        char_poly=char,
        min_poly_of_pf=min_poly,
        pf_lower=plo,
        pf_upper=phi,
        is_rational=min_poly.degree == 1,
        primitivity_witness=witness,
    )


@dataclass(frozen=True)
class FixedPointSeed:
    """sigma**power fixes an infinite word starting at start_letter."""

    power: int
    start_letter: str


def fixed_point_seed(s: Substitution) -> FixedPointSeed:
    """Seed with the smallest power, ties broken by alphabet order."""
    matrix = substitution_matrix(s)
    if is_primitive(matrix) is None:
        raise NotPrimitiveError("substitution is not primitive")
    k = len(s.alphabet)
    first = {a: s.image(a)[0] for a in s.alphabet}
    lengths = {a: 1 for a in s.alphabet}
    heads = {a: a for a in s.alphabet}
    bound = k * ((k - 1) * k + 1)
    for power in range(1, bound + 1):
        heads = {a: first[heads[a]] for a in s.alphabet}
        lengths = {a: sum(lengths[b] for b in s.image(a)) for a in s.alphabet}
        for a in s.alphabet:
            if heads[a] == a and lengths[a] >= 2:
                return FixedPointSeed(power, a)
    raise NoGrowingFixedPointError("no growing fixed point exists")


def fixed_word(s: Substitution, seed: FixedPointSeed) -> Iterator[str]:
    """Letters of the one-sided fixed word, streamed lazily.

    The word is emitted as start_letter, then u, sigma^p(u), sigma^{2p}(u),
    ... where sigma^p(start_letter) = start_letter + u.  Each block is
    expanded with an explicit stack, so memory stays proportional to the
    expansion depth and each letter costs amortized O(1).
    """
    p, a0 = seed.power, seed.start_letter
    table = {a: s.apply_power(a, p) for a in s.alphabet}
    head = table[a0]
    if not head.startswith(a0) or len(head) < 2:
        raise ValueError("invalid seed for this substitution")
    tail = head[1:]
    yield a0
    level = 0
    while True:
        stack = [(tail, 0, level)]
        while stack:
            word, idx, lev = stack[-1]
            if idx == len(word):
                stack.pop()
                continue
            stack[-1] = (word, idx + 1, lev)
            ch = word[idx]
            if lev == 0:
                yield ch
            else:
                stack.append((table[ch], 0, lev - 1))
        level += 1


def fixed_word_prefix(s: Substitution, seed: FixedPointSeed, n: int) -> str:
    if n < 0:
        raise ValueError("prefix length must be >= 0")
    return "".join(islice(fixed_word(s, seed), n))


def gap_bound(s: Substitution) -> int:
    """Upper bound for the gap between successive copies of any letter in a
    fixed word: twice the longest image length at the primitivity witness."""
    matrix = substitution_matrix(s)
    witness = is_primitive(matrix)
    if witness is None:
        raise NotPrimitiveError("substitution is not primitive")
    if len(s.alphabet) < 2:
        raise WrongAlphabetSizeError("gap bound needs at least two letters")
    return 2 * max(s.image_lengths(witness).values())


@dataclass(frozen=True)
class AperiodicByIrrationalPF:
    """The dominant eigenvalue is irrational, which forces aperiodicity of
    every fixed word of a primitive substitution."""


@dataclass(frozen=True)
class EventuallyPeriodic:
    preperiod: int
    period: int


@dataclass(frozen=True)
class InconclusiveUpTo:
    preperiod_bound: int
    period_bound: int


AperiodicityVerdict = Union[AperiodicByIrrationalPF, EventuallyPeriodic, InconclusiveUpTo]


def aperiodicity_verdict(
    s: Substitution, prefix_bound: int = 1000, period_bound: int = 200
) -> AperiodicityVerdict:
    """Verdict for the fixed word of a primitive substitution.

    Irrational dominant eigenvalue settles aperiodicity outright.  With a
    rational eigenvalue, a bounded periodicity search runs on the letter
    sequence; a witness is only trusted after it also explains one further
    application of sigma**power to the checked prefix (self-similarity),
    since a finite prefix match alone proves nothing.  Everything else is
    reported as inconclusive: with a rational eigenvalue this tool does not
    decide aperiodicity.
    """
    data = pf_data(substitution_matrix(s))
    if not data.is_rational:
        return AperiodicByIrrationalPF()
    seed = fixed_point_seed(s)
    need = prefix_bound + 10 * period_bound
    prefix = fixed_word_prefix(s, seed, need)
    witness = detect_period(prefix, prefix_bound, period_bound)
    if witness is None:
        return InconclusiveUpTo(prefix_bound, period_bound)
    lengths = s.image_lengths(seed.power)
    extended_len = sum(lengths[ch] for ch in prefix)
    extended = fixed_word_prefix(s, seed, extended_len)
    if verify_witness(extended, witness):
        return EventuallyPeriodic(witness.preperiod, witness.period)
    return InconclusiveUpTo(prefix_bound, period_bound)
