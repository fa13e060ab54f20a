from fractions import Fraction as F
from itertools import islice

import pytest

from subgf.errors import (
    DuplicateRuleError,
    EmptyImageError,
    NoGrowingFixedPointError,
    NotPrimitiveError,
    RuleSyntaxError,
    UnknownLetterError,
    WrongAlphabetSizeError,
)
from subgf.polynomials import ExactPolynomial as P
from subgf.substitutions import (
    AperiodicByIrrationalPF,
    EventuallyPeriodic,
    FixedPointSeed,
    InconclusiveUpTo,
    Substitution,
    SubstitutionMatrix,
    aperiodicity_verdict,
    characteristic_polynomial,
    fixed_point_seed,
    fixed_word,
    fixed_word_prefix,
    gap_bound,
    is_primitive,
    parse_substitution,
    pf_data,
    substitution_matrix,
)


class TestParser:
    def test_fibonacci(self, fib):
        assert fib.alphabet.letters == ("a", "b")
        assert fib.rules == {"a": "ab", "b": "a"}

    def test_identity_single_letter(self):
        s = parse_substitution("a->a")
        assert s.rules == {"a": "a"}

    def test_comments_blanks_and_spacing(self):
        s = parse_substitution("\n# intro\n a ->  ab  # trailing\n\nb->a\n")
        assert s.rules == {"a": "ab", "b": "a"}

    def test_empty_image(self):
        with pytest.raises(EmptyImageError) as err:
            parse_substitution("a->\n")
        assert err.value.line == 1

    def test_duplicate_rule(self):
        with pytest.raises(DuplicateRuleError) as err:
            parse_substitution("a->ab\nb->a\na->b")
        assert err.value.line == 3

    def test_unknown_letter_in_image(self):
        with pytest.raises(UnknownLetterError) as err:
            parse_substitution("a->ab\nb->ac")
        assert err.value.line == 2
        assert err.value.column >= 4

    def test_missing_arrow(self):
        with pytest.raises(RuleSyntaxError):
            parse_substitution("a = ab")

    def test_multi_letter_lhs_rejected(self):
        with pytest.raises(RuleSyntaxError):
            parse_substitution("ab->a")

    def test_non_letter_in_image(self):
        with pytest.raises(RuleSyntaxError) as err:
            parse_substitution("a->a b")
        assert err.value.line == 1

    def test_empty_file(self):
        with pytest.raises(RuleSyntaxError):
            parse_substitution("# nothing here\n")


class TestMatrix:
    def test_fibonacci(self, fib):
        assert substitution_matrix(fib).rows == ((1, 1), (1, 0))

    def test_xyz(self, xyz):
        assert substitution_matrix(xyz).rows == ((1, 2, 1), (1, 1, 0), (0, 1, 1))

    def test_identity(self):
        assert substitution_matrix(parse_substitution("a->a")).rows == ((1,),)

    def test_power_homomorphism(self, corpus):
        for s in corpus.values():
            base = substitution_matrix(s)
            for m in range(1, 11):
                assert substitution_matrix(s.power(m)).rows == base.power(m).rows

    def test_row_sums_are_image_lengths(self, xyz):
        m = substitution_matrix(xyz)
        assert m.row_sums() == tuple(len(xyz.image(a)) for a in xyz.alphabet)


class TestPrimitivity:
    def test_fibonacci_witness(self, fib):
        assert is_primitive(substitution_matrix(fib)) == 2

    def test_all_positive_is_one(self, rst):
        assert is_primitive(substitution_matrix(rst)) == 1

    def test_non_primitive(self):
        s = parse_substitution("a->ab\nb->b")
        assert is_primitive(substitution_matrix(s)) is None

    def test_witness_minimality_against_integer_powers(self, corpus, rst):
        mats = [substitution_matrix(s) for s in corpus.values()]
        mats.append(substitution_matrix(rst))
        for m in mats:
            w = is_primitive(m)
            assert w is not None
            assert m.power(w).is_positive()
            for e in range(1, w):
                assert not m.power(e).is_positive()


class TestPFData:
    def test_fibonacci(self, fib):
        data = pf_data(substitution_matrix(fib))
        assert data.char_poly == P([-1, -1, 1])
        assert data.min_poly_of_pf == P([-1, -1, 1])
        assert not data.is_rational
        assert data.pf_upper - data.pf_lower <= F(1, 10**12)
        assert F("1.618033") < data.pf_lower and data.pf_upper < F("1.618034")

    def test_enclosure_sign_change(self, fib):
        data = pf_data(substitution_matrix(fib))
        poly = data.min_poly_of_pf
        assert poly.sign_at(data.pf_lower) * poly.sign_at(data.pf_upper) < 0

    def test_xyz(self, xyz):
        data = pf_data(substitution_matrix(xyz))
        assert data.min_poly_of_pf == P([1, -3, 1])
        assert not data.is_rational
        assert F("2.618033") < data.pf_lower and data.pf_upper < F("2.618035")

    def test_induced_three_letter(self, rst):
        data = pf_data(substitution_matrix(rst))
        assert data.min_poly_of_pf == P([-1, -4, 1])
        assert F("4.236067") < data.pf_lower and data.pf_upper < F("4.236069")

    def test_rational_eigenvalue(self, abab):
        data = pf_data(substitution_matrix(abab))
        assert data.is_rational
        assert data.min_poly_of_pf == P([-2, 1])
        assert data.pf_lower < 2 < data.pf_upper

    def test_degree_four_minimal_polynomial(self):
        s = parse_substitution("a->ab\nb->c\nc->d\nd->a")
        data = pf_data(substitution_matrix(s))
        assert data.min_poly_of_pf == P([-1, 0, 0, -1, 1])
        assert not data.is_rational

    def test_not_primitive(self):
        s = parse_substitution("a->ab\nb->b")
        with pytest.raises(NotPrimitiveError):
            pf_data(substitution_matrix(s))

    def test_char_poly_via_trace_recurrence(self):
        m = SubstitutionMatrix(((2, 1), (1, 2)))
        assert characteristic_polynomial(m) == P([3, -4, 1])


class TestFixedPoints:
    def test_seeds(self, fib, xyz):
        assert fixed_point_seed(fib) == FixedPointSeed(1, "a")
        assert fixed_point_seed(xyz) == FixedPointSeed(1, "x")

    def test_swap_start_needs_square(self):
        s = parse_substitution("a->ba\nb->ab")
        assert fixed_point_seed(s) == FixedPointSeed(2, "a")

    def test_identity_has_no_growing_seed(self):
        with pytest.raises((NoGrowingFixedPointError, NotPrimitiveError)):
            fixed_point_seed(parse_substitution("a->a"))

    def test_prefixes(self, fib, fib_seed, xyz, xyz_seed):
        assert fixed_word_prefix(fib, fib_seed, 13) == "abaababaabaab"
        assert fixed_word_prefix(xyz, xyz_seed, 14) == "xyzyxyzyxyxyzy"
        assert fixed_word_prefix(fib, fib_seed, 0) == ""

    def test_prefix_of_prefix(self, fib, fib_seed):
        long = fixed_word_prefix(fib, fib_seed, 500)
        for n in (0, 1, 13, 100, 499):
            assert long.startswith(fixed_word_prefix(fib, fib_seed, n))

    def test_self_similarity(self, corpus):
        for s in corpus.values():
            seed = fixed_point_seed(s)
            prefix = fixed_word_prefix(s, seed, 200)
            image = s.apply_power(prefix, seed.power)
            assert image.startswith(prefix)
            assert fixed_word_prefix(s, seed, len(image)) == image

    def test_stream_is_lazy(self, fib, fib_seed):
        stream = fixed_word(fib, fib_seed)
        assert "".join(islice(stream, 5)) == "abaab"
        assert "".join(islice(stream, 3)) == "aba"


class TestGapBound:
    def test_fibonacci_value(self, fib):
        assert gap_bound(fib) == 6

    def test_xyz_value(self, xyz):
        # witness power 2; image lengths there are (10, 6, 4)
        assert gap_bound(xyz) == 20

    def test_single_letter_rejected(self):
        with pytest.raises(WrongAlphabetSizeError):
            gap_bound(parse_substitution("a->aa"))

    def test_measured_gaps_within_bound(self, corpus):
        for s in corpus.values():
            seed = fixed_point_seed(s)
            bound = gap_bound(s)
            prefix = fixed_word_prefix(s, seed, 10**5)
            for letter in s.alphabet:
                last = -1
                worst = 0
                for i, ch in enumerate(prefix):
                    if ch == letter:
                        worst = max(worst, i - last)
                        last = i
                assert last >= 0
                assert worst <= bound


class TestAperiodicityVerdict:
    def test_fibonacci(self, fib):
        assert aperiodicity_verdict(fib) == AperiodicByIrrationalPF()

    def test_eventually_periodic(self, abab):
        assert aperiodicity_verdict(abab) == EventuallyPeriodic(0, 2)

    def test_thue_morse_inconclusive(self, thue_morse):
        verdict = aperiodicity_verdict(thue_morse, 10**4, 10**3)
        assert verdict == InconclusiveUpTo(10**4, 10**3)

    def test_not_primitive(self):
        with pytest.raises(NotPrimitiveError):
            aperiodicity_verdict(parse_substitution("a->ab\nb->b"))


def test_substitution_validation():
    with pytest.raises(ValueError):
        Substitution.from_rules({"a": ""})
    with pytest.raises(ValueError):
        Substitution.from_rules({"a": "ax"})
    with pytest.raises(ValueError):
        Substitution(parse_substitution("a->a").alphabet, ("a", "a"))
