"""Generating functions of letters in a fixed word: truncated series,
prefix polynomials, concatenation and recursion laws, differencing and
summatory transforms, periodicity certificates, and rationality verdicts.

Everything here is exact rational arithmetic; there is no floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    CountMismatchError,
    DegreeOverflowError,
    InsufficientOccurrencesError,
    NotPrimitiveError,
    WitnessInvalidError,
)
from .periodicity import PeriodWitness, detect_period, verify_witness
from .polynomials import ExactPolynomial, _frac
from .substitutions import (
    AperiodicByIrrationalPF,
    FixedPointSeed,
    InconclusiveUpTo,
    Substitution,
    aperiodicity_verdict,
    fixed_word,
    fixed_word_prefix,
    gap_bound,
    is_primitive,
    substitution_matrix,
)

DEFAULT_BOUNDS = (1000, 200)


@dataclass(frozen=True)
class TruncatedSeries:
    """First order+1 coefficients of a formal power series."""

    order: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError("need exactly order + 1 coefficients")

    @classmethod
    def from_coefficients(cls, coeffs) -> TruncatedSeries:
        cs = tuple(_frac(c) for c in coeffs)
        return cls(len(cs) - 1, cs)

    def coefficient(self, n: int) -> Fraction:
        return self.coefficients[n]


def char_prefix_poly(word: str, letter: str) -> ExactPolynomial:
    """Polynomial with a 1 at every position of the letter in the word."""
    return ExactPolynomial([int(ch == letter) for ch in word])


def position_prefix_poly(word: str, letter: str) -> ExactPolynomial:
    """Coefficient of X**n is the 0-based position of the n-th occurrence
    (n >= 1) of the letter; the zero polynomial if it is absent."""
    coeffs = [0]
    for i, ch in enumerate(word):
        if ch == letter:
            coeffs.append(i)
    return ExactPolynomial(coeffs)


def char_series(
    s: Substitution, seed: FixedPointSeed, letter: str, order: int
) -> TruncatedSeries:
    if letter not in s.alphabet:
        raise KeyError(f"letter {letter!r} not in alphabet")
    prefix = fixed_word_prefix(s, seed, order + 1)
    return TruncatedSeries.from_coefficients(int(ch == letter) for ch in prefix)


def weighted_series(
    s: Substitution, seed: FixedPointSeed, weights: dict, order: int
) -> TruncatedSeries:
    """Series whose n-th coefficient is the weight of the n-th letter."""
    if set(weights) != set(s.alphabet.letters):
        raise ValueError("weighting must cover exactly the alphabet")
    table = {a: _frac(weights[a]) for a in s.alphabet}
    prefix = fixed_word_prefix(s, seed, order + 1)
    return TruncatedSeries.from_coefficients(table[ch] for ch in prefix)


def position_series(
    s: Substitution,
    seed: FixedPointSeed,
    letter: str,
    n_terms: int,
    scan_bound: Optional[int] = None,
) -> TruncatedSeries:
    """First n_terms occurrence positions, as coefficients of X**1..X**n_terms
    with constant term 0."""
    if letter not in s.alphabet:
        raise KeyError(f"letter {letter!r} not in alphabet")
    if n_terms < 0:
        raise ValueError("n_terms must be >= 0")
    if n_terms == 0:
        return TruncatedSeries.from_coefficients([0])
    if scan_bound is None:
        if len(s.alphabet) >= 2 and is_primitive(substitution_matrix(s)) is not None:
            scan_bound = gap_bound(s) * (n_terms + 2)
        else:
            scan_bound = 4 * n_terms + 64
    coeffs = [0]
    for i, ch in enumerate(fixed_word(s, seed)):
        if i >= scan_bound:
            break
        if ch == letter:
            coeffs.append(i)
            if len(coeffs) == n_terms + 1:
                return TruncatedSeries.from_coefficients(coeffs)
    raise InsufficientOccurrencesError(
        f"found only {len(coeffs) - 1} of {n_terms} occurrences of {letter!r} "
        f"within {scan_bound} letters"
    )


def concat_char(
    cu: ExactPolynomial, cv: ExactPolynomial, len_u: int
) -> ExactPolynomial:
    """Indicator polynomial of a concatenation: cu + X**len_u * cv."""
    if len_u < 0:
        raise ValueError("block length must be >= 0")
    if cu.degree >= len_u:
        raise DegreeOverflowError(
            f"degree {cu.degree} is not below the block length {len_u}"
        )
    return cu + cv.shift(len_u)


def concat_pos(
    pu: ExactPolynomial,
    pv: ExactPolynomial,
    len_u: int,
    count_u: int,
    count_v: int,
) -> ExactPolynomial:
    """Position polynomial of a concatenation.

    The occurrence index shifts by count_u (not by the block length), and
    every position from the second block gains len_u:

        P(uv) = P(u) + X**count_u * P(v)
                + len_u * (X**(count_u+1) + ... + X**(count_u+count_v))
    """
    if pu.degree > count_u or pv.degree > count_v:
        raise CountMismatchError(
            "polynomial degree exceeds the stated occurrence count"
        )
    if min(len_u, count_u, count_v) < 0:
        raise ValueError("lengths and counts must be non-negative")
    out = pu + pv.shift(count_u)
    if count_v and len_u:
        ramp = ExactPolynomial([0] * (count_u + 1) + [len_u] * count_v)
        out = out + ramp
    return out


def _char_level_table(s: Substitution, target: str, level: int) -> dict[str, list[int]]:
    """coeff lists of the indicator polynomial of `target` in sigma**level of
    every letter, assembled from image lengths without expanding words."""
    cur = {a: ([1] if a == target else []) for a in s.alphabet}
    lengths = {a: 1 for a in s.alphabet}
    for _ in range(level):
        nxt = {}
        for a in s.alphabet:
            total = sum(lengths[b] for b in s.image(a))
            acc = [0] * total
            off = 0
            for b in s.image(a):
                seg = cur[b]
                acc[off : off + len(seg)] = seg
                off += lengths[b]
            nxt[a] = acc
        cur = nxt
        lengths = {a: sum(lengths[b] for b in s.image(a)) for a in s.alphabet}
    return cur


def recursive_char_poly(
    s: Substitution, target: str, source: str, level: int
) -> ExactPolynomial:
    """Indicator polynomial of `target` in sigma**level(source), computed by
    the concatenation recursion with exponents taken from image lengths."""
    if level < 0:
        raise ValueError("level must be >= 0")
    for letter in (target, source):
        if letter not in s.alphabet:
            raise KeyError(f"letter {letter!r} not in alphabet")
    table = _char_level_table(s, target, level)
    return ExactPolynomial(table[source])


def recursive_pos_poly(
    s: Substitution, target: str, source: str, level: int
) -> ExactPolynomial:
    """Position polynomial of `target` in sigma**level(source), via repeated
    application of the concatenation law with counts and lengths from the
    substitution matrix powers."""
    if level < 0:
        raise ValueError("level must be >= 0")
    for letter in (target, source):
        if letter not in s.alphabet:
            raise KeyError(f"letter {letter!r} not in alphabet")
    # per letter: (dense position coefficients, occurrence count, length)
    cur = {a: ([0], 1 if a == target else 0, 1) for a in s.alphabet}
    for _ in range(level):
        nxt = {}
        for a in s.alphabet:
            acc = [0]
            cnt = 0
            off = 0
            for b in s.image(a):
                poly_b, cnt_b, len_b = cur[b]
                if cnt_b:
                    acc.extend([0] * (cnt + cnt_b + 1 - len(acc)))
                    for j in range(1, cnt_b + 1):
                        shifted = poly_b[j] if j < len(poly_b) else 0
                        acc[cnt + j] = shifted + off
                cnt += cnt_b
                off += len_b
            nxt[a] = (acc, cnt, off)
        cur = nxt
    return ExactPolynomial(cur[source][0])


def difference_transform(ts: TruncatedSeries, m: int) -> TruncatedSeries:
    """Coefficients of (1 - X)**m times the series, truncated at the same
    order."""
    if m < 0:
        raise ValueError("order of differencing must be >= 0")
    cs = list(ts.coefficients)
    for _ in range(m):
        cs = [cs[0]] + [cs[n] - cs[n - 1] for n in range(1, len(cs))]
    return TruncatedSeries(ts.order, tuple(cs))


def summatory_transform(ts: TruncatedSeries) -> TruncatedSeries:
    out = []
    acc = Fraction(0)
    for c in ts.coefficients:
        acc += c
        out.append(acc)
    return TruncatedSeries(ts.order, tuple(out))


@dataclass(frozen=True)
class RationalForm:
    """numerator / ((1 - X**period) * (1 - X)**summatory_power).

    summatory_power is 0 for eventually periodic coefficient sequences; the
    position pipeline sets it to 1 after undoing one differencing step.
    """

    numerator: ExactPolynomial
    period: int
    summatory_power: int = 0

    def expand(self, order: int) -> TruncatedSeries:
        cs = [Fraction(0)] * (order + 1)
        for n in range(order + 1):
            c = self.numerator.coefficient(n)
            if n >= self.period:
                c += cs[n - self.period]
            cs[n] = c
        for _ in range(self.summatory_power):
            acc = Fraction(0)
            for n in range(order + 1):
                acc += cs[n]
                cs[n] = acc
        return TruncatedSeries(order, tuple(cs))


def rational_form_from_witness(coeffs, witness: PeriodWitness) -> RationalForm:
    """Certificate numerator/(1 - X**d) built from a verified witness: the
    preperiodic head times (1 - X**d) plus the shifted period block."""
    seq = [_frac(c) for c in coeffs]
    n0, d = witness.preperiod, witness.period
    if len(seq) < n0 + 2 * d or not verify_witness(seq, witness):
        raise WitnessInvalidError(f"witness {witness} does not hold on the data")
    head = ExactPolynomial(seq[:n0])
    block = ExactPolynomial(seq[n0 : n0 + d])
    one_minus_xd = ExactPolynomial([1] + [0] * (d - 1) + [-1])
    numerator = head * one_minus_xd + block.shift(n0)
    form = RationalForm(numerator, d)
    if form.expand(len(seq) - 1).coefficients != tuple(seq):
        raise WitnessInvalidError("re-expansion of the rational form failed")
    return form


@dataclass(frozen=True)
class Rational:
    form: RationalForm
    witness: PeriodWitness


@dataclass(frozen=True)
class TranscendentalByAperiodicity:
    reason: str


SeriesVerdict = Union[Rational, TranscendentalByAperiodicity, InconclusiveUpTo]

CHARACTERISTIC = "characteristic"
POSITION = "position"


def _indicator_witnesses(
    s: Substitution, seed: FixedPointSeed, bounds: tuple[int, int]
) -> dict[str, Optional[PeriodWitness]]:
    """Verified periodicity witnesses of each letter's indicator sequence.

    A witness found on the base prefix must also explain the prefix obtained
    by one further application of sigma**power, mirroring the substitution
    self-similarity check; otherwise it is discarded.
    """
    max_pre, max_per = bounds
    need = max_pre + 10 * max_per
    prefix = fixed_word_prefix(s, seed, need)
    lengths = s.image_lengths(seed.power)
    extended: Optional[str] = None
    out: dict[str, Optional[PeriodWitness]] = {}
    for letter in s.alphabet:
        indicator = [int(ch == letter) for ch in prefix]
        w = detect_period(indicator, max_pre, max_per)
        if w is not None:
            if extended is None:
                extended_len = sum(lengths[ch] for ch in prefix)
                extended = fixed_word_prefix(s, seed, extended_len)
            if not verify_witness([int(ch == letter) for ch in extended], w):
                w = None
        out[letter] = w
    return out


def series_verdict(
    s: Substitution,
    seed: FixedPointSeed,
    letter: str,
    kind: str = CHARACTERISTIC,
    bounds: tuple[int, int] = DEFAULT_BOUNDS,
) -> SeriesVerdict:
    """Rationality/transcendence verdict for one letter's generating function.

    A letter with a verified periodicity witness gets a Rational certificate
    regardless of the substitution-level verdict (an aperiodic substitution
    can still place one letter periodically).  Transcendence is only claimed
    when the dominant eigenvalue is irrational and the letter is pinned down
    by elimination: the witness-free letters are exactly two, and at least
    two letters of an aperiodic fixed word must be non-periodic because the
    letter indicators sum to the all-ones sequence.  Everything else is
    inconclusive.
    """
    if letter not in s.alphabet:
        raise KeyError(f"letter {letter!r} not in alphabet")
    if is_primitive(substitution_matrix(s)) is None:
        raise NotPrimitiveError("substitution is not primitive")
    if kind not in (CHARACTERISTIC, POSITION):
        raise ValueError(f"unknown kind {kind!r}")
    max_pre, max_per = bounds
    statuses = _indicator_witnesses(s, seed, bounds)

    if kind == CHARACTERISTIC:
        w = statuses[letter]
        if w is not None:
            need = max_pre + 10 * max_per
            indicator = [
                int(ch == letter) for ch in fixed_word_prefix(s, seed, need)
            ]
            return Rational(rational_form_from_witness(indicator, w), w)
        if _transcendental_by_elimination(s, statuses, letter, bounds):
            return TranscendentalByAperiodicity(_elimination_reason(s))
        return InconclusiveUpTo(max_pre, max_per)

    # position kind: difference once (bounded gaps make the differenced
    # sequence take finitely many values), detect, then multiply the
    # certificate back by 1/(1 - X)
    need = max_pre + 10 * max_per
    try:
        pos = position_series(s, seed, letter, need)
    except InsufficientOccurrencesError:
        return InconclusiveUpTo(max_pre, max_per)
    diff = difference_transform(pos, 1)
    w = detect_period(diff.coefficients, max_pre, max_per)
    if w is not None:
        base = rational_form_from_witness(diff.coefficients, w)
        form = RationalForm(base.numerator, base.period, summatory_power=1)
        if form.expand(pos.order).coefficients != pos.coefficients:
            raise WitnessInvalidError("position re-expansion failed")
        return Rational(form, w)
    if _transcendental_by_elimination(s, statuses, letter, bounds):
        return TranscendentalByAperiodicity(_elimination_reason(s))
    return InconclusiveUpTo(max_pre, max_per)


def _transcendental_by_elimination(
    s: Substitution,
    statuses: dict[str, Optional[PeriodWitness]],
    letter: str,
    bounds: tuple[int, int],
) -> bool:
    verdict = aperiodicity_verdict(s, *bounds)
    if not isinstance(verdict, AperiodicByIrrationalPF):
        return False
    undetermined = [a for a in s.alphabet if statuses[a] is None]
    return len(undetermined) == 2 and letter in undetermined


def _elimination_reason(s: Substitution) -> str:
    if len(s.alphabet) == 2:
        return "aperiodic-by-irrational-eigenvalue"
    return "aperiodic-by-irrational-eigenvalue-and-elimination"
