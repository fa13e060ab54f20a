"""Supertile structure of the Fibonacci substitution a -> ab, b -> a.

Level-3n supertiles pair up into three block types (AB, AA, BA) whose
lengths are even, so the fixed word decomposes into blocks starting at even
offsets.  The indicator polynomials of the three blocks satisfy an explicit
recursion, and certified root-free intervals for them near -1 bound the
roots of the full characteristic generating function.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import islice

from .errors import NoRootInIntervalError, TooLargeError
from .genfun import char_prefix_poly, char_series
from .polynomials import ExactPolynomial
from .realroots import (
    ExclusionCertificate,
    SturmChain,
    certify_positive,
    isolate_max_root,
    nudge_off_root,
)
from .substitutions import (
    FixedPointSeed,
    Substitution,
    fixed_point_seed,
    fixed_word,
    fixed_word_prefix,
)

FIBONACCI = Substitution.from_rules({"a": "ab", "b": "a"})
FIBONACCI_SEED = FixedPointSeed(1, "a")

MAX_SUPERTILE_LEVEL = 40
MAX_PAIR_LEVEL = 6  # pair polynomials grow like (2+sqrt(5))**n; degree ~1e4 at 6

_PAIR_LABELS = ("R", "S", "T")


def fibonacci_numbers(count: int) -> list[int]:
    """f_1 = f_2 = 1, one-indexed: returns [f_1, ..., f_count]."""
    out = [1, 1]
    while len(out) < count:
        out.append(out[-1] + out[-2])
    return out[:count]


def supertile_word(n: int, which: str = "A") -> str:
    """sigma**n applied to a (which='A') or to b (which='B')."""
    if which not in ("A", "B"):
        raise ValueError("which must be 'A' or 'B'")
    if n < 0:
        raise ValueError("level must be >= 0")
    if which == "B":
        return "b" if n == 0 else supertile_word(n - 1, "A")
    if n > MAX_SUPERTILE_LEVEL:
        raise TooLargeError(f"level {n} supertile would not fit in memory")
    prev, cur = "b", "a"
    for _ in range(n):
        prev, cur = cur, cur + prev
    return cur


@dataclass(frozen=True)
class SupertilePolys:
    """Indicator polynomials of the letter a over the three level-n pair
    blocks, with their lengths."""

    level: int
    poly_r: ExactPolynomial
    poly_s: ExactPolynomial
    poly_t: ExactPolynomial
    len_r: int
    len_s: int
    len_t: int

    def by_label(self) -> dict[str, ExactPolynomial]:
        return {"R": self.poly_r, "S": self.poly_s, "T": self.poly_t}

    def lengths_by_label(self) -> dict[str, int]:
        return {"R": self.len_r, "S": self.len_s, "T": self.len_t}


def supertile_lengths(n: int) -> tuple[int, int, int]:
    """(|R_n|, |S_n|, |T_n|) = (f_{3n+3}, 2*f_{3n+2}, f_{3n+3})."""
    if n < 1:
        raise ValueError("pair level must be >= 1")
    fib = fibonacci_numbers(3 * n + 4)
    return fib[3 * n + 2], 2 * fib[3 * n + 1], fib[3 * n + 2]


def pair_polynomials(n: int) -> SupertilePolys:
    """Pair polynomials at level n, computed by the block recursion

        R' = R S T T,   S' = R' R,   T' = R S T R

    from the explicitly expanded level-1 blocks; words are never expanded
    beyond level 1 and all exponents come from Fibonacci numbers."""
    if n < 1:
        raise ValueError("pair level must be >= 1")
    if n > MAX_PAIR_LEVEL:
        raise TooLargeError(
            f"pair level {n} exceeds the supported range {MAX_PAIR_LEVEL}"
        )
    a3, b3 = supertile_word(3, "A"), supertile_word(3, "B")
    poly_r = char_prefix_poly(a3 + b3, "a")
    poly_s = char_prefix_poly(a3 + a3, "a")
    poly_t = char_prefix_poly(b3 + a3, "a")
    level = 1
    while level < n:
        fib = fibonacci_numbers(3 * level + 5)
        f32, f33, f34 = fib[3 * level + 1], fib[3 * level + 2], fib[3 * level + 3]
        next_r = (
            poly_r
            + poly_s.shift(f33)
            + (poly_t + poly_t.shift(f33)).shift(f33 + 2 * f32)
        )
        next_s = next_r + poly_r.shift(3 * f33 + 2 * f32)
        next_t = (
            poly_r
            + poly_s.shift(f33)
            + poly_t.shift(f33 + 2 * f32)
            + poly_r.shift(2 * f34)
        )
        poly_r, poly_s, poly_t = next_r, next_s, next_t
        level += 1
    len_r, len_s, len_t = supertile_lengths(n)
    return SupertilePolys(n, poly_r, poly_s, poly_t, len_r, len_s, len_t)


def induced_three_letter_substitution() -> Substitution:
    """Block-level substitution induced by the pair decomposition."""
    return Substitution.from_rules({"r": "rstt", "s": "rsttr", "t": "rstr"})


def block_sequence(limit: int):
    """First `limit` pair-block labels of the fixed word, as 'R'/'S'/'T'."""
    induced = induced_three_letter_substitution()
    seed = fixed_point_seed(induced)
    return [ch.upper() for ch in islice(fixed_word(induced, seed), limit)]


def verify_decomposition(n: int, order: int) -> bool:
    """Check that the N-truncation of the letter-a series is reproduced by
    laying the level-n blocks along the induced block sequence, with every
    block offset even."""
    polys = pair_polynomials(n)
    table = polys.by_label()
    lengths = polys.lengths_by_label()
    coeffs = [0] * (order + 1)
    offset = 0
    blocks_needed = order // min(lengths.values()) + 2
    for label in block_sequence(blocks_needed):
        if offset > order:
            break
        if offset % 2:
            return False
        for e, c in enumerate(table[label].coefficients):
            if c and offset + e <= order:
                coeffs[offset + e] = 1
        offset += lengths[label]
    if offset <= order:
        return False  # ran out of blocks, scan bound too small
    target = char_series(FIBONACCI, FIBONACCI_SEED, "a", order)
    return all(
        Fraction(c) == t for c, t in zip(coeffs, target.coefficients)
    )


@dataclass(frozen=True)
class PositionIdentityReport:
    """Brute-force verification of the closed forms tying occurrence
    positions of a and b to the running count of a's.

    The validated forms are p_a(n) = (n-1) + S(n-2) and
    p_b(n) = (2n-1) + S(n-2), with S(m) the number of a's among
    w_0..w_m and S(-1) = 0.  first_fail_shifted_* record where the
    rejected off-by-one index convention (p_a(n) = n-2+S(n-1),
    p_b(n) = 2n-2+S(n-1)) first disagrees with the scan."""

    prefix_length: int
    terms_a: int
    terms_b: int
    difference_identity_ok: bool
    closed_form_a_ok: bool
    closed_form_b_ok: bool
    summatory_inverse_ok: bool
    first_fail_shifted_a: int | None
    first_fail_shifted_b: int | None

    @property
    def all_ok(self) -> bool:
        return (
            self.difference_identity_ok
            and self.closed_form_a_ok
            and self.closed_form_b_ok
            and self.summatory_inverse_ok
        )


def fib_position_identities(order: int) -> PositionIdentityReport:
    prefix = fixed_word_prefix(FIBONACCI, FIBONACCI_SEED, order)
    running = [0] * (order + 1)  # running[m+1] = S(m) = # of a's in w_0..w_m
    pos_a, pos_b = [], []
    for i, ch in enumerate(prefix):
        running[i + 1] = running[i] + (ch == "a")
        (pos_a if ch == "a" else pos_b).append(i)

    def s_incl(m: int) -> int:
        return running[m + 1] if m >= 0 else 0

    terms = min(len(pos_a), len(pos_b))
    diff_ok = all(pos_b[i] - pos_a[i] == i + 1 for i in range(terms))
    a_ok = all(pos_a[n - 1] == (n - 1) + s_incl(n - 2) for n in range(1, len(pos_a) + 1))
    b_ok = all(pos_b[n - 1] == (2 * n - 1) + s_incl(n - 2) for n in range(1, len(pos_b) + 1))
    summ_ok = all(s_incl(pos_a[n - 1]) == n for n in range(1, len(pos_a) + 1))
    shift_a = next(
        (n for n in range(1, len(pos_a) + 1) if pos_a[n - 1] != n - 2 + s_incl(n - 1)),
        None,
    )
    shift_b = next(
        (n for n in range(1, len(pos_b) + 1) if pos_b[n - 1] != 2 * n - 2 + s_incl(n - 1)),
        None,
    )
    return PositionIdentityReport(
        prefix_length=order,
        terms_a=len(pos_a),
        terms_b=len(pos_b),
        difference_identity_ok=diff_ok,
        closed_form_a_ok=a_ok,
        closed_form_b_ok=b_ok,
        summatory_inverse_ok=summ_ok,
        first_fail_shifted_a=shift_a,
        first_fail_shifted_b=shift_b,
    )


@dataclass(frozen=True)
class PositivityBound:
    """Certified rational alpha_hat < 0 such that all three level-n pair
    polynomials are strictly positive on (alpha_hat, 0); by the even-offset
    decomposition this makes the characteristic series of a positive on
    (alpha_hat, 1)."""

    level: int
    alpha_hat: Fraction
    binding: str
    bracket: tuple[Fraction, Fraction]
    certificates: dict[str, ExclusionCertificate]


def positivity_bound(n: int, tolerance=Fraction(1, 10**8)) -> PositivityBound:
    """Locate the largest root in (-1, 0) among the three pair polynomials,
    return a rational upper bound within `tolerance`, and certify all three
    polynomials positive on (alpha_hat, 0)."""
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    polys = pair_polynomials(n)
    chains = {label: SturmChain(p) for label, p in polys.by_label().items()}
    zero = Fraction(0)
    brackets: dict[str, tuple[Fraction, Fraction]] = {}
    for label, chain in chains.items():
        low = Fraction(-1)
        if chain.sign_at(low) == 0:
            # a root exactly at -1 (the S blocks always have one) is outside
            # the open interval; step inside before counting
            low = nudge_off_root(chain, low, zero)
        if chain.count(low, zero) >= 1:
            brackets[label] = isolate_max_root(chain, low, zero, tolerance)
    if not brackets:
        raise NoRootInIntervalError(
            "no pair polynomial has a root in (-1, 0); the letter-a series "
            "would be positive on all of (-1, 1) - review before trusting"
        )
    while True:
        binding = max(brackets, key=lambda lb: brackets[lb][1])
        lo_b, hi_b = brackets[binding]
        overlapping = [
            lb
            for lb in brackets
            if lb != binding and brackets[lb][1] > lo_b
        ]
        if not overlapping:
            break
        # distinct real roots: shrink until the maximum is unambiguous
        for lb in overlapping + [binding]:
            u, v = brackets[lb]
            brackets[lb] = isolate_max_root(chains[lb], u - tolerance, v, (v - u) / 4)
    alpha_hat = brackets[binding][1]
    certificates = {
        label: certify_positive(chain, alpha_hat, zero)
        for label, chain in chains.items()
    }
    return PositivityBound(
        level=n,
        alpha_hat=alpha_hat,
        binding=binding,
        bracket=brackets[binding],
        certificates=certificates,
    )
