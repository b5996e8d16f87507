"""Tests for the large-quantum-number scaling laws."""

import math
import random

import pytest

from fractalatom import (
    DegenerateExponentError,
    DomainError,
    Fractality,
    QuadratureError,
    RydbergExponents,
    ScaleFreeBoundaryError,
    UnstableFractalityError,
    exponents_embedded,
    exponents_full,
    fit_loglog_slope,
    rydberg_asymptote,
    rydberg_exponents,
    solve_level,
    theta_closed_form,
    theta_quadrature,
)

HYDROGEN = Fractality(3.0, 2.0)


class TestThetaClosedForm:
    def test_hydrogen_value(self):
        # alpha = kappa = 1: sqrt(pi/2) Gamma(1/2) / Gamma(2) = pi / sqrt(2)
        assert theta_closed_form(HYDROGEN, 1.0) == pytest.approx(
            math.pi / math.sqrt(2.0), rel=1e-14
        )

    def test_equal_alpha_kappa_family(self):
        # alpha = kappa = 0.7 rescales the hydrogen constant by 1/0.7
        assert theta_closed_form(Fractality(2.1, 1.4), 0.7) == pytest.approx(
            math.pi / (0.7 * math.sqrt(2.0)), rel=1e-13
        )

    def test_guards(self):
        soil = Fractality(1.79, 1.48)
        with pytest.raises(UnstableFractalityError):
            theta_closed_form(soil, 2.0 * 1.48 - 1.79)
        with pytest.raises(ScaleFreeBoundaryError):
            theta_closed_form(Fractality(2.4, 1.8), 1.2)
        with pytest.raises(DegenerateExponentError):
            theta_closed_form(Fractality(3.0, 1.5), 0.0)


class TestThetaQuadrature:
    @pytest.mark.parametrize(
        "f,kappa",
        [
            (HYDROGEN, 1.0),
            (Fractality(2.1, 1.4), 0.7),
            (Fractality(2.5, 1.0), -0.5),
            (Fractality(2.5, 1.7), 0.9),
            (Fractality(3.2, 1.1), -1.0),
        ],
    )
    def test_agrees_with_closed_form(self, f, kappa):
        closed = theta_closed_form(f, kappa)
        quad = theta_quadrature(f, kappa, abs_tol=1e-12)
        assert quad == pytest.approx(closed, rel=1e-10)

    def test_rejects_near_scale_free_endpoint(self):
        # margin 0.06 puts the endpoint exponent below the quadrature floor
        f = Fractality(2.02, 1.5)
        with pytest.raises(QuadratureError):
            theta_quadrature(f, 2.0 * 1.5 - 2.02)

    def test_rejects_bad_tolerance(self):
        with pytest.raises(DomainError):
            theta_quadrature(HYDROGEN, 1.0, abs_tol=0.0)


class TestRydbergExponents:
    def test_hydrogen(self):
        exps = exponents_full(HYDROGEN)
        assert isinstance(exps, RydbergExponents)
        assert exps.energy_exponent == pytest.approx(-2.0, abs=1e-12)
        assert exps.size_exponent == pytest.approx(2.0, abs=1e-12)
        assert exps.theta == pytest.approx(2.2214414690791831, rel=1e-12)

    def test_equal_alpha_kappa_point(self):
        exps = exponents_full(Fractality(2.1, 1.4))
        assert exps.energy_exponent == pytest.approx(-2.0, abs=1e-12)
        assert exps.size_exponent == pytest.approx(2.0 / 0.7, rel=1e-12)
        assert exps.theta == pytest.approx(3.1734878129702616, rel=1e-12)

    def test_confining_full(self):
        exps = exponents_full(Fractality(2.5, 1.0))
        assert exps.energy_exponent == pytest.approx(2.0 / 7.0 * 1.0, rel=1e-12)
        assert exps.size_exponent == pytest.approx(4.0 / 7.0, rel=1e-12)

    def test_embedded_point(self):
        exps = exponents_embedded(Fractality(2.5, 1.0))
        assert exps.energy_exponent == pytest.approx(-1.0, abs=1e-12)
        assert exps.size_exponent == pytest.approx(1.0, abs=1e-12)
        assert exps.theta == pytest.approx(
            theta_closed_form(Fractality(2.5, 1.0), 1.0), rel=1e-14
        )

    def test_energy_size_identity(self):
        rng = random.Random(31)
        for _ in range(40):
            d_s = rng.uniform(0.6, 1.9)
            d_v = rng.uniform(d_s + 0.1, d_s + 1.4)
            kappa = 2.0 * d_s - d_v
            if abs(kappa) < 1e-3 or 2.0 * (d_v - d_s) - kappa < 0.05:
                continue
            f = Fractality(d_v, d_s)
            exps = rydberg_exponents(f, kappa)
            assert exps.energy_exponent == pytest.approx(
                -kappa * exps.size_exponent, rel=1e-13
            )
            assert exps.size_exponent == pytest.approx(
                2.0 / (2.0 * f.alpha() - kappa), rel=1e-13
            )

    def test_guards(self):
        with pytest.raises(UnstableFractalityError):
            exponents_full(Fractality(1.79, 1.48))
        with pytest.raises(ScaleFreeBoundaryError) as excinfo:
            rydberg_exponents(Fractality(2.4, 1.8), 1.2)
        assert "alpha" in str(excinfo.value)


class TestRydbergAsymptote:
    def test_hydrogen_exact_at_every_n(self):
        for n in (1, 2, 5, 10, 40):
            r_n, e_n = rydberg_asymptote(HYDROGEN, 1.0, n)
            assert r_n == pytest.approx(2.0 * n**2, rel=1e-12)
            assert e_n == pytest.approx(0.5 / n**2, rel=1e-12)

    def test_matches_solved_levels_at_large_n(self):
        f = Fractality(2.5, 1.0)
        for n in (30, 40):
            level = solve_level(f, -0.5, n)
            _, e_n = rydberg_asymptote(f, -0.5, n)
            assert e_n == pytest.approx(level.e_abs, rel=2e-2)

    def test_energy_size_power_relation(self):
        f = Fractality(2.6, 1.5)
        kappa = 2.0 * 1.5 - 2.6
        r_n, e_n = rydberg_asymptote(f, kappa, 7)
        assert e_n == pytest.approx(r_n**-kappa, rel=1e-12)

    def test_rejects_bad_n(self):
        with pytest.raises(DomainError):
            rydberg_asymptote(HYDROGEN, 1.0, 0)
        with pytest.raises(DomainError):
            rydberg_asymptote(HYDROGEN, 1.0, 2.5)
        with pytest.raises(DomainError):
            rydberg_asymptote(HYDROGEN, 1.0, True)


class TestFitLoglogSlope:
    def test_exact_power_law(self):
        ns = [2, 3, 5, 8, 13, 21]
        values = [3.7 * n**-1.75 for n in ns]
        assert fit_loglog_slope(ns, values) == pytest.approx(-1.75, abs=1e-12)

    def test_positive_slope(self):
        ns = [1, 2, 4, 8]
        values = [0.2 * n**0.5 for n in ns]
        assert fit_loglog_slope(ns, values) == pytest.approx(0.5, abs=1e-12)

    def test_rejects_bad_samples(self):
        with pytest.raises(DomainError):
            fit_loglog_slope([1.0], [2.0])
        with pytest.raises(DomainError):
            fit_loglog_slope([1.0, 2.0], [2.0])
        with pytest.raises(DomainError):
            fit_loglog_slope([1.0, -2.0], [2.0, 3.0])
        with pytest.raises(DomainError):
            fit_loglog_slope([1.0, 2.0], [2.0, 0.0])
