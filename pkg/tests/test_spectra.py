from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pstforge.errors import EmptySpectrum, InvalidParam
from pstforge.spectra import (
    Parity,
    Spectrum,
    format_levels,
    gen_linear,
    gen_random_odd_gaps,
    gen_ts,
    parse_levels,
    ts_closed_form_couplings,
    validate_pst,
)

F = Fraction


class TestSpectrum:
    def test_canonical_descending(self):
        s = Spectrum.from_levels([F(1, 2), F(3, 2)], Parity.EVEN)
        assert s.positive_levels == (F(3, 2), F(1, 2))
        assert s.n_sites == 4

    def test_full_spectrum_even(self):
        s = Spectrum.from_levels([F(3, 2), F(1, 2)], Parity.EVEN)
        assert s.full_spectrum() == (F(3, 2), F(1, 2), F(-1, 2), F(-3, 2))

    def test_full_spectrum_odd_contains_zero(self):
        s = Spectrum.from_levels([F(2), F(1)], Parity.ODD)
        assert s.full_spectrum() == (F(2), F(1), F(0), F(-1), F(-2))
        assert s.n_sites == 5

    def test_rejects_nonpositive_and_duplicates(self):
        with pytest.raises(InvalidParam):
            Spectrum.from_levels([F(1), F(-2)], Parity.EVEN)
        with pytest.raises(InvalidParam):
            Spectrum.from_levels([F(1), F(1)], Parity.EVEN)
        with pytest.raises(EmptySpectrum):
            Spectrum.from_levels([], Parity.EVEN)

    def test_scaled(self):
        s = Spectrum.from_levels([F(3, 2)], Parity.EVEN).scaled(F(2))
        assert s.positive_levels == (F(3),)


class TestValidatePst:
    def test_valid_even(self):
        report = validate_pst(Spectrum.from_levels([F(3, 2), F(1, 2)], Parity.EVEN))
        assert report.is_valid
        assert report.gap_violations == ()

    def test_valid_odd(self):
        assert validate_pst(Spectrum.from_levels([F(2), F(1)], Parity.ODD)).is_valid

    def test_even_integer_levels_fail_across_zero(self):
        report = validate_pst(Spectrum.from_levels([F(2), F(1)], Parity.EVEN))
        assert not report.is_valid
        # the cross-zero gap 2*L_min = 2 is the only even gap
        assert [(pair, gap) for pair, gap in report.gap_violations] == [((1, 2), F(2))]

    def test_valid_even_implies_half_odd_integers(self):
        spec = gen_random_odd_gaps(8, Parity.EVEN, 13, 5)
        assert validate_pst(spec).is_valid
        for lam in spec.positive_levels:
            assert lam.denominator == 2 and lam.numerator % 2 == 1

    def test_valid_odd_implies_odd_smallest_integer(self):
        spec = gen_random_odd_gaps(8, Parity.ODD, 13, 5)
        assert validate_pst(spec).is_valid
        for lam in spec.positive_levels:
            assert lam.denominator == 1
        assert spec.positive_levels[-1].numerator % 2 == 1

    @given(st.permutations(list(range(4))))
    @settings(max_examples=24, deadline=None)
    def test_order_insensitive(self, order):
        base = [F(9, 2), F(7, 2), F(3, 2), F(1, 2)]
        shuffled = [base[i] for i in order]
        verdict = validate_pst(Spectrum.from_levels(shuffled, Parity.EVEN)).is_valid
        assert verdict == validate_pst(Spectrum.from_levels(base, Parity.EVEN)).is_valid


class TestGenerators:
    def test_linear_even(self):
        assert gen_linear(4).positive_levels == (F(3, 2), F(1, 2))

    def test_linear_odd(self):
        assert gen_linear(5).positive_levels == (F(2), F(1))

    def test_linear_smallest(self):
        assert gen_linear(2).positive_levels == (F(1, 2),)

    def test_linear_rejects_tiny(self):
        with pytest.raises(InvalidParam):
            gen_linear(1)

    def test_ts_examples(self):
        assert gen_ts(4, 0, 0).positive_levels == (F(5, 2), F(3, 2))
        assert gen_ts(4, 1, 1).positive_levels == (F(15, 2), F(9, 2))
        assert gen_ts(2, 0, 0).positive_levels == (F(3, 2),)

    def test_ts_rejects_odd_sites(self):
        with pytest.raises(InvalidParam):
            gen_ts(5, 0, 0)

    def test_ts_closed_form_examples(self):
        assert ts_closed_form_couplings(4, 0, 0) == (F(15, 4), F(1), F(15, 4))
        assert ts_closed_form_couplings(4, 1, 1) == (F(135, 4), F(9), F(135, 4))
        # the 2-chain has eigenvalues +/-J_1, so J_1^2 must equal L_1^2
        assert ts_closed_form_couplings(2, 0, 0) == (F(9, 4),)

    def test_ts_s0_is_shifted_half_integer_ladder(self):
        # with S=0 the levels are {k - 1/2 + i} for k = T + 1
        for n_sites in range(2, 21, 2):
            for T in range(4):
                k = T + 1
                expected = {F(2 * k - 1, 2) + i for i in range(1, n_sites // 2 + 1)}
                assert set(gen_ts(n_sites, T, 0).positive_levels) == expected

    def test_random_forced_cases(self):
        assert gen_random_odd_gaps(1, Parity.EVEN, 1, 123).positive_levels == (F(1, 2),)
        assert gen_random_odd_gaps(3, Parity.ODD, 1, 7).positive_levels == (F(3), F(2), F(1))

    def test_random_seed_determinism(self):
        a = gen_random_odd_gaps(50, Parity.EVEN, 99, 42)
        b = gen_random_odd_gaps(50, Parity.EVEN, 99, 42)
        c = gen_random_odd_gaps(50, Parity.EVEN, 99, 43)
        assert a.positive_levels == b.positive_levels
        assert a.positive_levels != c.positive_levels
        assert validate_pst(a).is_valid

    def test_random_rejects_bad_gap_max(self):
        for bad in (0, -1, 2, 10):
            with pytest.raises(InvalidParam):
                gen_random_odd_gaps(3, Parity.EVEN, bad, 0)

    @given(
        st.integers(min_value=1, max_value=40),
        st.sampled_from([Parity.EVEN, Parity.ODD]),
        st.integers(min_value=0, max_value=49),
        st.integers(min_value=0, max_value=2**32 - 1),
    )
    @settings(max_examples=80, deadline=None)
    def test_random_always_valid(self, n_levels, parity, half_gap, seed):
        spec = gen_random_odd_gaps(n_levels, parity, 2 * half_gap + 1, seed)
        assert validate_pst(spec).is_valid

    @given(st.integers(min_value=1, max_value=100), st.integers(0, 5), st.integers(0, 5))
    @settings(max_examples=60, deadline=None)
    def test_generator_outputs_always_valid(self, half, T, S):
        assert validate_pst(gen_linear(2 * half)).is_valid
        if 2 * half + 1 >= 3:
            assert validate_pst(gen_linear(2 * half + 1)).is_valid
        assert validate_pst(gen_ts(2 * half, T, S)).is_valid


class TestTextFormat:
    def test_parse_format_roundtrip(self):
        levels = parse_levels("9/2, 7/2,3/2,1/2")
        assert levels == (F(9, 2), F(7, 2), F(3, 2), F(1, 2))
        assert format_levels(levels) == "9/2,7/2,3/2,1/2"

    def test_parse_rejects_empty(self):
        with pytest.raises(InvalidParam):
            parse_levels("  ,, ")
