"""Geometric realisation of a fixed word: natural tile lengths from the
dominant left eigenvector, the increasing endpoint sequence, its generating
function, and the two-letter classification.

Lengths are exact (rational, or in Q(sqrt(D)) when the minimal polynomial of
the dominant eigenvalue is quadratic); for higher-degree eigenvalues the
lengths fall back to certified rational approximations and every result is
flagged as approximate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import WrongAlphabetSizeError
from .genfun import RationalForm, rational_form_from_witness
from .periodicity import detect_period
from .polynomials import ExactPolynomial
from .quadratic import QuadraticReal
from .substitutions import (
    AperiodicByIrrationalPF,
    EventuallyPeriodic,
    FixedPointSeed,
    PFData,
    Substitution,
    aperiodicity_verdict,
    fixed_word_prefix,
    pf_data,
    substitution_matrix,
)

TileLength = Union[Fraction, QuadraticReal]


def _is_positive(x) -> bool:
    if isinstance(x, QuadraticReal):
        return x.sign() > 0
    return x > 0


def _square_free_split(n: int) -> tuple[int, int]:
    """n = m*m * d with d square-free; returns (m, d)."""
    m, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        m *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return m, d * n


def pf_as_quadratic(data: PFData) -> Optional[QuadraticReal]:
    """The dominant eigenvalue as an exact quadratic number, when its minimal
    polynomial has degree at most 2."""
    poly = data.min_poly_of_pf
    if poly.degree == 1:
        return QuadraticReal(-poly.coefficient(0), 0)
    if poly.degree != 2:
        return None
    b, c = poly.coefficient(1), poly.coefficient(0)
    disc = b * b - 4 * c
    inner = disc.numerator * disc.denominator
    m, d = _square_free_split(inner)
    # the dominant eigenvalue is the larger root, so the surd term is +
    return QuadraticReal(-b / 2, Fraction(m, 2 * disc.denominator), d)


@dataclass(frozen=True)
class LengthAssignment:
    """Tile length per letter; for natural lengths the vector is a left
    eigenvector of the substitution matrix for the dominant eigenvalue."""

    by_letter: dict[str, TileLength]
    exact: bool
    radicand: Optional[int] = None
    error_bound: Optional[Fraction] = None

    def __post_init__(self):
        for letter, value in self.by_letter.items():
            if not _is_positive(value):
                raise ValueError(f"length of {letter!r} must be positive")

    def values_in_order(self, s: Substitution) -> list[TileLength]:
        return [self.by_letter[a] for a in s.alphabet]


def _length_map(lengths) -> dict[str, TileLength]:
    if isinstance(lengths, LengthAssignment):
        return lengths.by_letter
    return dict(lengths)


def _kernel_vector(rows: list[list]) -> list:
    """Nonzero kernel vector of a square matrix over a field, by full
    row reduction; the kernel must be one-dimensional."""
    k = len(rows)
    rows = [list(r) for r in rows]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, k) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(k):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_of_col[c] = r
        r += 1
    free = [c for c in range(k) if c not in pivot_of_col]
    if len(free) != 1:
        raise ArithmeticError(f"kernel dimension {len(free)}, expected 1")
    f = free[0]
    vec: list = [Fraction(0)] * k
    vec[f] = Fraction(1)
    for c, i in pivot_of_col.items():
        vec[c] = -rows[i][f]
    return vec


def natural_lengths(s: Substitution) -> LengthAssignment:
    """Left eigenvector of the substitution matrix for the dominant
    eigenvalue, normalized so the last letter's tile has length 1."""
    matrix = substitution_matrix(s)
    data = pf_data(matrix)  # raises NotPrimitiveError
    k = matrix.k
    lam = pf_as_quadratic(data)
    if lam is not None:
        # left eigenvector: transpose, subtract lambda on the diagonal;
        # entries live in Fraction or QuadraticReal, never bare int
        rows = [
            [Fraction(matrix.rows[j][i]) - (lam if i == j else 0) for j in range(k)]
            for i in range(k)
        ]
        vec = _kernel_vector(rows)
        last = vec[-1]
        vec = [x / last for x in vec]
        values = {}
        radicand = None
        for letter, value in zip(s.alphabet, vec):
            if isinstance(value, QuadraticReal) and not value.is_rational:
                radicand = value.d
        rational = radicand is None
        for letter, value in zip(s.alphabet, vec):
            if isinstance(value, QuadraticReal) and rational:
                value = value.a
            values[letter] = value
        return LengthAssignment(values, exact=True, radicand=radicand)
    return _approximate_lengths(s, matrix, data)


def _approximate_lengths(s, matrix, data) -> LengthAssignment:
    """Power iteration with exact rational arithmetic; the result is flagged
    approximate and carries the computed eigen-residual as its error bound."""
    k = matrix.k
    vec = [1] * k
    for _ in range(300):
        vec = [sum(vec[i] * matrix.rows[i][j] for i in range(k)) for j in range(k)]
    last = vec[-1]
    values = [Fraction(x, last) for x in vec]
    lam = (data.pf_lower + data.pf_upper) / 2
    image = [sum(values[i] * matrix.rows[i][j] for i in range(k)) for j in range(k)]
    residual = max(abs(image[j] - lam * values[j]) for j in range(k))
    bound = residual + (data.pf_upper - data.pf_lower)
    return LengthAssignment(
        dict(zip(s.alphabet.letters, values)), exact=False, error_bound=bound
    )


def endpoint_sequence(
    s: Substitution, seed: FixedPointSeed, lengths, n: int
) -> list[TileLength]:
    """t_0 = 0 and t_{m+1} = t_m + length of the m-th tile; n+1 values."""
    table = _length_map(lengths)
    for letter in s.alphabet:
        if letter not in table:
            raise ValueError(f"no length for letter {letter!r}")
        if not _is_positive(table[letter]):
            raise ValueError(f"length of {letter!r} must be positive")
    prefix = fixed_word_prefix(s, seed, n)
    zero = next(iter(table.values())) * 0
    out = [zero]
    acc = zero
    for ch in prefix:
        acc = acc + table[ch]
        out.append(acc)
    return out


@dataclass(frozen=True)
class GeometricSeries:
    """Truncated series of the endpoint generating function, together with
    the per-letter weights it decomposes over."""

    order: int
    coefficients: tuple
    weights: dict[str, TileLength]


def geometric_series(
    s: Substitution, seed: FixedPointSeed, lengths, order: int
) -> GeometricSeries:
    table = _length_map(lengths)
    points = endpoint_sequence(s, seed, table, order)
    return GeometricSeries(order, tuple(points), dict(table))


def geometric_identity_ok(
    s: Substitution, seed: FixedPointSeed, lengths, order: int
) -> bool:
    """Coefficientwise check that (1 - X) * G equals X * C_g on the
    truncation: successive endpoint differences are the tile lengths."""
    table = _length_map(lengths)
    points = endpoint_sequence(s, seed, table, order)
    prefix = fixed_word_prefix(s, seed, order)
    if points[0] != 0:
        return False
    return all(
        points[m + 1] - points[m] == table[prefix[m]] for m in range(order)
    )


@dataclass(frozen=True)
class TwoLetterReduction:
    """C_g collapses onto the first letter's indicator series:
    C_g = difference * C_{first} + second_weight / (1 - X)."""

    difference: TileLength
    first_weight: TileLength
    second_weight: TileLength
    verified: bool


def reduce_two_letter(
    s: Substitution, seed: FixedPointSeed, lengths, order: int = 1000
) -> TwoLetterReduction:
    table = _length_map(lengths)
    if len(s.alphabet) != 2:
        raise WrongAlphabetSizeError("reduction requires exactly two letters")
    first, second = s.alphabet.letters
    g1, g2 = table[first], table[second]
    prefix = fixed_word_prefix(s, seed, order + 1)
    diff = g1 - g2
    verified = all(
        table[ch] == diff * int(ch == first) + g2 for ch in prefix
    )
    return TwoLetterReduction(diff, g1, g2, verified)


@dataclass(frozen=True)
class TwoLetterClassification:
    """Exactly one of: equal tile lengths (rational with an explicit closed
    form), unequal lengths over an eventually periodic word (rational with a
    certificate), unequal lengths over an aperiodic word (transcendental),
    or inconclusive."""

    case: str  # "equal-lengths" | "periodic-rational" | "transcendental" | "inconclusive"
    shared_length: Optional[TileLength] = None
    numerator: Optional[ExactPolynomial] = None
    period: Optional[int] = None
    difference: Optional[TileLength] = None
    second_weight: Optional[TileLength] = None
    reason: Optional[str] = None
    verified: bool = False


def classify_two_letter(
    s: Substitution,
    seed: FixedPointSeed,
    lengths,
    bounds: tuple[int, int] = (1000, 200),
    check_order: int = 1000,
) -> TwoLetterClassification:
    table = _length_map(lengths)
    if len(s.alphabet) != 2:
        raise WrongAlphabetSizeError("classification requires exactly two letters")
    first, second = s.alphabet.letters
    g1, g2 = table[first], table[second]
    points = endpoint_sequence(s, seed, table, check_order)
    if g1 == g2:
        ok = all(points[n] == g1 * n for n in range(check_order + 1))
        return TwoLetterClassification(
            "equal-lengths", shared_length=g1, verified=ok
        )
    verdict = aperiodicity_verdict(s, *bounds)
    if isinstance(verdict, EventuallyPeriodic):
        max_pre, max_per = bounds
        need = max_pre + 10 * max_per
        indicator = [
            int(ch == first) for ch in fixed_word_prefix(s, seed, need)
        ]
        witness = detect_period(indicator, max_pre, max_per)
        if witness is None:
            return TwoLetterClassification("inconclusive", verified=False)
        form = rational_form_from_witness(indicator, witness)
        # G = difference * X * P / ((1-X)(1-X^d)) + second * X / (1-X)^2
        expanded = RationalForm(form.numerator, form.period, 1).expand(check_order)
        ok = all(
            points[n]
            == (expanded.coefficients[n - 1] if n else 0) * (g1 - g2) + g2 * n
            for n in range(check_order + 1)
        )
        return TwoLetterClassification(
            "periodic-rational",
            numerator=form.numerator,
            period=form.period,
            difference=g1 - g2,
            second_weight=g2,
            verified=ok,
        )
    if isinstance(verdict, AperiodicByIrrationalPF):
        return TwoLetterClassification(
            "transcendental",
            difference=g1 - g2,
            second_weight=g2,
            reason="aperiodic-word-with-unequal-algebraic-lengths",
            verified=True,
        )
    return TwoLetterClassification("inconclusive", verified=False)
