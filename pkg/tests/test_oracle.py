"""Tests for the direct-integration eigenvalue oracle."""

import math

import numpy as np
import pytest

from fractalatom import (
    ComparisonRow,
    DomainError,
    Fractality,
    OracleConfig,
    OracleLevel,
    UnstableFractalityError,
    compare_wkb_oracle,
    effective_equation_coefficients,
    fit_loglog_slope,
    langer_momentum,
    radial_momentum,
    shoot_eigenvalue,
    solve_level,
    turning_points,
    wavefunction_samples,
)

HYDROGEN = Fractality(3.0, 2.0)
PLANAR = Fractality(2.0, 1.0)


class TestOracleConfig:
    def test_defaults(self):
        c = OracleConfig()
        assert c.r_inner == 1e-6
        assert c.r_outer_factor == 3.0
        assert c.grid_points == 20000
        assert c.node_tol == 1e-9

    def test_validation(self):
        with pytest.raises(DomainError):
            OracleConfig(r_inner=0.0)
        with pytest.raises(DomainError):
            OracleConfig(r_outer_factor=1.0)
        with pytest.raises(DomainError):
            OracleConfig(grid_points=999)
        with pytest.raises(DomainError):
            OracleConfig(grid_points=2000.0)
        with pytest.raises(DomainError):
            OracleConfig(node_tol=1.0)


class TestEffectiveEquationCoefficients:
    def test_hydrogen_value(self):
        # c = 1 kills the bare coefficient: Q(1) = 2 (1 - e)
        assert effective_equation_coefficients(HYDROGEN, 1.0, 0.5, 1.0) == pytest.approx(
            1.0, rel=1e-14
        )

    def test_planar_keeps_attractive_quarter(self):
        # c = 0: the bare coefficient contributes +1/(4 r^2)
        q = effective_equation_coefficients(PLANAR, 1.0, 0.5, 2.0)
        assert q == pytest.approx(2.0 * (0.5 - 0.5) + 0.25 / 4.0, rel=1e-13)

    def test_equals_squared_bare_momentum_inside(self):
        for f, kappa, e_abs in (
            (HYDROGEN, 1.0, 0.3),
            (Fractality(2.5, 1.0), -0.5, 2.0),
            (Fractality(2.1, 1.4), 0.7, 0.5),
        ):
            lo, hi = turning_points(f, kappa, e_abs)
            for frac in (0.3, 0.6, 0.9):
                r = lo + frac * (hi - lo)
                try:
                    p = radial_momentum(f, kappa, e_abs, r)
                except DomainError:
                    continue  # bare allowed region is slightly narrower
                assert effective_equation_coefficients(
                    f, kappa, e_abs, r
                ) == pytest.approx(p**2, rel=1e-12)

    def test_negative_outside_allowed_region(self):
        # outer side: energy term dominates
        assert effective_equation_coefficients(HYDROGEN, 1.0, 0.5, 50.0) < 0.0
        # inner side goes negative only when |c| > 1 (repulsive bare term)
        f = Fractality(3.5, 1.0)  # c = -1.5
        assert effective_equation_coefficients(f, -1.5, 1.0, 1e-4) < 0.0

    def test_rejects_bad_arguments(self):
        with pytest.raises(DomainError):
            effective_equation_coefficients(HYDROGEN, 1.0, -0.5, 1.0)
        with pytest.raises(DomainError):
            effective_equation_coefficients(HYDROGEN, 1.0, 0.5, 0.0)
        with pytest.raises(DomainError):
            effective_equation_coefficients(HYDROGEN, 0.0, 0.5, 1.0)


class TestShootEigenvalue:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_hydrogen(self, n):
        level = shoot_eigenvalue(HYDROGEN, 1.0, n)
        assert isinstance(level, OracleLevel)
        assert level.e_abs == pytest.approx(0.5 / n**2, rel=1e-6)
        assert level.node_count == n - 1
        assert level.boundary_residual <= 1e-3

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_planar_no_barrier(self, n):
        # d_v = 2 d_s: no centrifugal barrier, allowed region reaches r = 0
        level = shoot_eigenvalue(PLANAR, 1.0, n)
        assert level.e_abs == pytest.approx(0.5 / (n - 0.5) ** 2, rel=1e-4)
        assert level.node_count == n - 1

    def test_agrees_with_wkb_where_wkb_is_exact(self):
        # at alpha = kappa the quantization rule is exact, so the comparison
        # measures pure oracle error
        f = Fractality(2.1, 1.4)
        wkb = solve_level(f, 0.7, 5)
        oracle = shoot_eigenvalue(f, 0.7, 5)
        assert oracle.e_abs == pytest.approx(wkb.e_abs, rel=1e-5)

    def test_confining_branch(self):
        f = Fractality(2.5, 1.0)
        wkb = solve_level(f, -0.5, 5)
        oracle = shoot_eigenvalue(f, -0.5, 5)
        assert oracle.e_abs == pytest.approx(wkb.e_abs, rel=5e-3)
        assert oracle.node_count == 4

    def test_accepts_matching_seed_level(self):
        seed = solve_level(HYDROGEN, 1.0, 2)
        level = shoot_eigenvalue(HYDROGEN, 1.0, 2, seed_level=seed)
        assert level.e_abs == pytest.approx(0.125, rel=1e-6)

    def test_rejects_mismatched_seed_level(self):
        seed = solve_level(HYDROGEN, 1.0, 3)
        with pytest.raises(DomainError):
            shoot_eigenvalue(HYDROGEN, 1.0, 2, seed_level=seed)

    def test_rejects_bad_quantum_number(self):
        with pytest.raises(DomainError):
            shoot_eigenvalue(HYDROGEN, 1.0, 0)
        with pytest.raises(DomainError):
            shoot_eigenvalue(HYDROGEN, 1.0, True)

    def test_refuses_unstable_fractality(self):
        soil = Fractality(1.79, 1.48)
        with pytest.raises(UnstableFractalityError):
            shoot_eigenvalue(soil, 2.0 * 1.48 - 1.79, 1)


class TestCompareWkbOracle:
    def test_rows_sorted_and_deduplicated(self):
        rows = compare_wkb_oracle(HYDROGEN, 1.0, [3, 1, 1, 2])
        assert [row.n for row in rows] == [1, 2, 3]
        assert all(isinstance(row, ComparisonRow) for row in rows)

    def test_empty_request(self):
        assert compare_wkb_oracle(HYDROGEN, 1.0, []) == []

    def test_hydrogen_rel_diffs_tiny(self):
        rows = compare_wkb_oracle(HYDROGEN, 1.0, [1, 2, 4])
        for row in rows:
            assert row.rel_diff <= 1e-5
            assert row.rel_diff == pytest.approx(
                abs(row.wkb_e_abs - row.oracle_e_abs) / row.oracle_e_abs, rel=1e-12
            )

    def test_error_decreases_with_n_confining(self):
        f = Fractality(2.5, 1.0)
        rows = compare_wkb_oracle(f, -0.5, [5, 10])
        assert rows[1].rel_diff < rows[0].rel_diff


class TestWavefunctionSamples:
    def test_indicial_exponent_hydrogen(self):
        # near r = 0 the regular branch is r^((1+|c|)/2) = r^1
        level = solve_level(HYDROGEN, 1.0, 1)
        r, psi = wavefunction_samples(HYDROGEN, 1.0, level.e_abs, 4.0 * level.r_max)
        mask = (r > 1e-5) & (r < 1e-3)
        slope = fit_loglog_slope(r[mask], np.abs(psi[mask]))
        assert slope == pytest.approx(1.0, rel=2e-2)

    def test_indicial_exponent_generic(self):
        f = Fractality(2.1, 1.4)  # c = 0.7 -> exponent 0.85
        level = solve_level(f, 0.7, 1)
        r, psi = wavefunction_samples(f, 0.7, level.e_abs, 4.0 * level.r_max)
        mask = (r > 1e-5) & (r < 1e-3)
        slope = fit_loglog_slope(r[mask], np.abs(psi[mask]))
        assert slope == pytest.approx(0.85, rel=2e-2)

    def test_normalized_to_unit_peak(self):
        level = solve_level(HYDROGEN, 1.0, 2)
        r, psi = wavefunction_samples(HYDROGEN, 1.0, level.e_abs, 4.0 * level.r_max)
        assert np.max(np.abs(psi)) == pytest.approx(1.0, rel=1e-12)
        assert r.shape == psi.shape
        assert np.all(np.diff(r) > 0.0)

    def test_node_count_visible_in_samples(self):
        level = solve_level(HYDROGEN, 1.0, 3)
        r, psi = wavefunction_samples(HYDROGEN, 1.0, level.e_abs, 4.0 * level.r_max)
        # count strict sign changes away from the tiny start-up amplitude
        body = psi[np.abs(psi) > 1e-6]
        signs = np.sign(body)
        changes = int(np.sum(signs[1:] * signs[:-1] < 0.0))
        assert changes == 2

    def test_rejects_bad_energy(self):
        with pytest.raises(DomainError):
            wavefunction_samples(HYDROGEN, 1.0, -0.5, 10.0)
