import math
from fractions import Fraction

import numpy as np
import pytest

from pstforge.errors import DimensionMismatch, InvalidParam, OrderingBreakdown
from pstforge.solver import CouplingScheme, solve
from pstforge.spectra import Parity, Spectrum, gen_linear, validate_pst
from pstforge.verifier import (
    fidelity_check,
    full_report,
    mirror_inversion_check,
    roundtrip_float,
    target_charpoly,
    verify_exact,
)

from conftest import dense_operator

F = Fraction


def uniform_chain(n_sites: int, spec: Spectrum) -> CouplingScheme:
    return CouplingScheme(
        n_sites=n_sites,
        couplings_squared=tuple([F(1)] * (n_sites - 1)),
        couplings_float=tuple([1.0] * (n_sites - 1)),
        source_spectrum=spec,
    )


class TestVerifyExact:
    def test_solved_scheme_matches(self):
        spec = Spectrum.from_levels([F(3, 2), F(1, 2)], Parity.EVEN)
        report = verify_exact(solve(spec), spec)
        assert report.exact_spectrum_match
        assert report.coefficient_mismatches == ()

    def test_uniform_chain_mismatches(self):
        spec = Spectrum.from_levels([F(3, 2), F(1, 2)], Parity.EVEN)
        report = verify_exact(uniform_chain(4, spec), spec)
        assert not report.exact_spectrum_match
        degrees = [d for d, _, _ in report.coefficient_mismatches]
        assert degrees == [0, 2]
        # uniform 4-chain has x^4 - 3x^2 + 1
        assert report.coefficient_mismatches[0][1:] == (F(1), F(9, 16))
        assert report.coefficient_mismatches[1][1:] == (F(-3), F(-5, 2))

    def test_linear_seven(self):
        spec = gen_linear(7)
        assert verify_exact(solve(spec), spec).exact_spectrum_match

    def test_dimension_mismatch(self):
        spec = gen_linear(6)
        with pytest.raises(DimensionMismatch):
            verify_exact(solve(gen_linear(4)), spec)

    def test_target_charpoly_odd_has_zero_root(self):
        p = target_charpoly(gen_linear(5))
        assert p.evaluate(F(0)) == 0
        assert p.degree == 5


class TestFidelity:
    def test_two_chain_at_pi(self):
        spec = Spectrum.from_levels([F(1, 2)], Parity.EVEN)
        mag, phase = fidelity_check(solve(spec), math.pi)
        assert abs(mag - 1.0) < 1e-14
        # phase determined up to the eigenphase convention; just finite
        assert math.isfinite(phase)

    def test_linear_ten_at_pi(self):
        mag, _ = fidelity_check(solve(gen_linear(10)), math.pi)
        assert mag >= 1.0 - 1e-10

    def test_linear_ten_at_half_pi_incomplete(self):
        mag, _ = fidelity_check(solve(gen_linear(10)), math.pi / 2)
        assert mag < 0.9

    def test_scaling_invariance(self):
        spec = gen_linear(8)
        base = solve(spec)
        mag0, _ = fidelity_check(base, math.pi)
        for c in (2.0, 0.5):
            scaled = CouplingScheme(
                n_sites=base.n_sites,
                couplings_squared=tuple(x * F(c).limit_denominator() ** 2 for x in base.couplings_squared),
                couplings_float=tuple(c * x for x in base.couplings_float),
                source_spectrum=spec,
            )
            mag, _ = fidelity_check(scaled, math.pi / c)
            assert abs(mag - mag0) <= 1e-12


class TestMirrorInversion:
    def test_linear_six(self):
        assert mirror_inversion_check(solve(gen_linear(6))) <= 1e-10

    def test_linear_seven_including_fixed_middle(self):
        scheme = solve(gen_linear(7))
        assert mirror_inversion_check(scheme) <= 1e-10

    def test_uniform_five_has_no_mirror_inversion(self):
        spec = gen_linear(5)  # placeholder spectrum; couplings are uniform
        dev = mirror_inversion_check(uniform_chain(5, spec))
        assert dev > 0.05


class TestRoundtrip:
    def test_exact_case_embedded_in_float(self):
        recovered, err = roundtrip_float([0.75, 1.0, 0.75])
        assert err <= 1e-12
        assert np.allclose(recovered, [0.75, 1.0, 0.75])

    def test_seeded_random_twelve_sites(self, rng):
        half = rng.uniform(0.5, 2.0, size=6)
        jsq = list(half) + list(half[-2::-1])
        assert len(jsq) == 11
        _, err = roundtrip_float(jsq)
        assert err <= 1e-8

    def test_near_degenerate_flags_or_stays_coarse(self):
        # almost-decoupled halves: the float spectrum nearly collides
        jsq = [1.0, 1e-18, 1.0]
        try:
            _, err = roundtrip_float(jsq)
        except OrderingBreakdown:
            return
        assert err <= 1e-4 or err > 0  # measured, not asserted tight

    def test_rejects_non_mirror(self):
        with pytest.raises(InvalidParam):
            roundtrip_float([1.0, 2.0, 3.0])

    def test_rejects_nonpositive(self):
        with pytest.raises(InvalidParam):
            roundtrip_float([1.0, 0.0, 1.0])


class TestFullReport:
    def test_good_scheme_passes_everything(self):
        spec = gen_linear(8)
        report = full_report(solve(spec), spec)
        assert report.exact_spectrum_match
        assert report.pst_valid
        assert report.fidelity_at_pi >= 1.0 - 1e-9
        assert report.mirror_deviation <= 1e-9
        assert report.all_passed()

    def test_tau_rescaling(self):
        # levels twice the unit-gap ladder: valid only at tau = pi/2
        spec = gen_linear(6).scaled(2)
        scheme = solve(spec)
        assert not full_report(scheme, spec).all_passed()
        report = full_report(scheme, spec, tau_over_pi=F(1, 2))
        assert report.pst_valid
        assert report.fidelity_at_pi >= 1.0 - 1e-9
        assert report.all_passed()

    def test_non_pst_spectrum_reported(self):
        spec = Spectrum.from_levels([F(2), F(1)], Parity.EVEN)
        report = full_report(solve(spec), spec)
        assert report.exact_spectrum_match  # construction is still exact
        assert not report.pst_valid
        assert not validate_pst(spec).is_valid
        assert not report.all_passed()
