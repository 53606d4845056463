import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from conftest import (
    expected_zeta_cdi_grid,
    radiometer_statistics,
    radiometer_statistics_signal,
    sample_exponential_gains,
    zeta_star_csi_ref,
)
from covertfade.detection import (
    WillieParams,
    detection_report,
    expected_zeta_cdi,
    expected_zeta_star_csi,
    optimal_threshold_csi,
    p_fa,
    p_md,
    threshold_cdi_approx,
    threshold_cdi_exact,
    zeta_linear_csi,
    zeta_star_cdi,
    zeta_star_csi,
)
from covertfade.errors import DegenerateHypothesesError, DomainError

SW2 = 0.05


def willie(n_d=50, p_d=0.0, h_w2=None, sigma_w2=SW2):
    return WillieParams(sigma_w2=sigma_w2, n_d=n_d, p_d=p_d, h_w2=h_w2)


class TestErrorProbabilities:
    def test_p_fa_tiny_threshold(self):
        assert p_fa(1e-12, willie()) == pytest.approx(1.0, abs=1e-9)

    def test_p_fa_single_sample_exponential_tail(self):
        assert p_fa(SW2, willie(n_d=1)) == pytest.approx(math.exp(-1.0), rel=1e-12)

    def test_p_fa_monte_carlo_oracle(self):
        stats = radiometer_statistics(n_d=50, variance=SW2, trials=1_000_000, seed=101)
        empirical = float(np.mean(stats > SW2))
        assert p_fa(SW2, willie()) == pytest.approx(empirical, abs=0.002)

    def test_p_md_tiny_threshold(self):
        w = willie(p_d=0.01, h_w2=1.0)
        assert p_md(1e-12, w) == pytest.approx(0.0, abs=1e-12)

    def test_p_md_no_power_complements_p_fa(self):
        w = willie(p_d=0.0, h_w2=1.0)
        for lam in (0.02, SW2, 0.1):
            assert p_md(lam, w) == pytest.approx(1.0 - p_fa(lam, w), abs=1e-14)

    def test_p_md_monte_carlo_oracle(self):
        w = willie(p_d=0.01, h_w2=1.0)
        lam = optimal_threshold_csi(w)
        stats = radiometer_statistics_signal(
            n_d=50, p_d=0.01, h_w=1.0, sigma_w2=SW2, trials=1_000_000, seed=102
        )
        empirical = float(np.mean(stats <= lam))
        assert p_md(lam, w) == pytest.approx(empirical, abs=0.002)

    def test_threshold_domain(self):
        with pytest.raises(DomainError):
            p_fa(0.0, willie())
        with pytest.raises(DomainError):
            p_md(-1.0, willie(p_d=0.01, h_w2=1.0))

    def test_report_fields(self):
        w = willie(p_d=0.02, h_w2=1.0)
        rep = detection_report(SW2, w)
        assert rep.zeta == rep.p_fa + rep.p_md
        assert 0.0 <= rep.p_fa <= 1.0 and 0.0 <= rep.p_md <= 1.0


class TestCsiThreshold:
    def test_unit_snr_closed_form(self):
        w = willie(p_d=SW2, h_w2=1.0)
        assert optimal_threshold_csi(w) == pytest.approx(2.0 * SW2 * math.log(2.0), rel=1e-12)

    def test_high_snr_asymptote(self):
        w = willie(p_d=SW2 * 1e8, h_w2=1.0)
        lam = optimal_threshold_csi(w)
        assert lam / (SW2 * math.log(1e8)) == pytest.approx(1.0, rel=1e-6)

    def test_is_argmin_of_zeta(self):
        w = willie(p_d=0.05, h_w2=1.0)
        res = minimize_scalar(
            lambda lam: p_fa(lam, w) + p_md(lam, w),
            bounds=(1e-6, 10.0 * SW2),
            method="bounded",
            options={"xatol": 1e-12},
        )
        assert optimal_threshold_csi(w) == pytest.approx(res.x, abs=1e-8)

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateHypothesesError):
            optimal_threshold_csi(willie(p_d=0.0, h_w2=1.0))
        with pytest.raises(DegenerateHypothesesError):
            optimal_threshold_csi(willie(p_d=0.05, h_w2=0.0))


class TestZetaStarCsi:
    def test_zero_power_limit(self):
        assert zeta_star_csi(willie(p_d=0.0, h_w2=1.0)) == 1.0
        assert zeta_star_csi(willie(p_d=0.05, h_w2=0.0)) == 1.0

    def test_perfect_detection_limit(self):
        assert zeta_star_csi(willie(p_d=1e9, h_w2=1.0)) < 1e-6

    def test_monte_carlo_oracle(self):
        w = willie(p_d=0.02, h_w2=1.0)
        lam = optimal_threshold_csi(w)
        h0 = radiometer_statistics(50, SW2, 1_000_000, seed=103)
        h1 = radiometer_statistics_signal(50, 0.02, 1.0, SW2, 1_000_000, seed=104)
        empirical = float(np.mean(h0 > lam)) + float(np.mean(h1 <= lam))
        assert zeta_star_csi(w) == pytest.approx(empirical, abs=0.003)

    def test_equals_error_sum_at_optimum(self):
        w = willie(p_d=0.02, h_w2=1.0)
        lam = optimal_threshold_csi(w)
        assert zeta_star_csi(w) == pytest.approx(p_fa(lam, w) + p_md(lam, w), abs=1e-12)


class TestZetaLinearCsi:
    def test_intercept(self):
        assert zeta_linear_csi(willie(p_d=0.0, h_w2=1.0)) == 1.0

    def test_single_sample_closed_form(self):
        w = willie(n_d=1, p_d=0.01, h_w2=2.0)
        expected = 1.0 - 2.0 * math.exp(-1.0) * 0.01 / SW2
        assert zeta_linear_csi(w) == pytest.approx(expected, rel=1e-12)

    def test_slope_matches_finite_difference(self):
        h = 1e-6
        fd = (
            zeta_star_csi(willie(p_d=2 * h, h_w2=1.0))
            - zeta_star_csi(willie(p_d=0.0, h_w2=1.0))
        ) / (2 * h)
        slope = (zeta_linear_csi(willie(p_d=1.0, h_w2=1.0)) - 1.0) / 1.0
        assert slope == pytest.approx(fd, rel=1e-3)


class TestCdiThreshold:
    def test_approx_returns_noise_floor(self):
        assert threshold_cdi_approx(0.05) == 0.05
        assert threshold_cdi_approx(1.0) == 1.0
        with pytest.raises(DomainError):
            threshold_cdi_approx(0.0)

    def test_exact_approaches_noise_floor_at_low_power(self):
        lam = threshold_cdi_exact(willie(p_d=1e-4))
        assert abs(lam - SW2) / SW2 <= 0.05

    def test_exact_unimodality_spot_check(self):
        w = willie(p_d=0.05)
        lam = threshold_cdi_exact(w)
        here = expected_zeta_cdi(lam, w)
        assert here <= expected_zeta_cdi(0.5 * lam, w)
        assert here <= expected_zeta_cdi(2.0 * lam, w)

    def test_exact_against_grid_scan_oracle(self):
        w = willie(p_d=0.05)
        grid = np.linspace(0.5 / 10_000, 0.5, 10_000)
        values = expected_zeta_cdi_grid(grid, p_d=0.05, sigma_w2=SW2, n_d=50)
        lam_oracle = grid[int(np.argmin(values))]
        assert threshold_cdi_exact(w) == pytest.approx(lam_oracle, abs=1e-4)


class TestExpectedZetaCdi:
    def test_no_power_is_one(self):
        for lam in (0.01, SW2, 0.2):
            assert expected_zeta_cdi(lam, willie(p_d=0.0)) == 1.0

    def test_single_sample_sampling_oracle(self):
        w = willie(n_d=1, p_d=0.02)
        lam = SW2
        g = sample_exponential_gains(1_000_000, seed=105)
        oracle = math.exp(-lam / SW2) + float(
            np.mean(-np.expm1(-lam / (g * 0.02 + SW2)))
        )
        assert expected_zeta_cdi(lam, w) == pytest.approx(oracle, abs=0.002)

    def test_sampling_oracle_fifty_samples(self):
        from scipy.special import gammainc as sp_gammainc

        w = willie(p_d=0.02)
        g = sample_exponential_gains(1_000_000, seed=106)
        oracle = p_fa(SW2, w) + float(
            np.mean(sp_gammainc(50, 50 * SW2 / (g * 0.02 + SW2)))
        )
        assert expected_zeta_cdi(SW2, w) == pytest.approx(oracle, abs=0.002)


class TestZetaStarCdi:
    def test_no_power_is_one(self):
        assert zeta_star_cdi(willie(p_d=0.0)) == 1.0

    def test_matches_composed_oracle(self):
        w = willie(n_d=100, p_d=0.01)
        grid = np.linspace(0.02, 0.15, 4000)
        values = expected_zeta_cdi_grid(grid, p_d=0.01, sigma_w2=SW2, n_d=100)
        assert zeta_star_cdi(w) == pytest.approx(float(np.min(values)), abs=1e-5)

    def test_large_error_regime_matches_csi(self):
        for n_d, p_d in [(50, 0.001), (100, 0.0008)]:
            cdi = zeta_star_cdi(willie(n_d=n_d, p_d=p_d))
            csi = expected_zeta_star_csi(willie(n_d=n_d, p_d=p_d))
            assert csi >= 0.9
            assert abs(cdi - csi) <= 0.01


class TestExpectedZetaStarCsi:
    def test_no_power_is_one(self):
        assert expected_zeta_star_csi(willie(p_d=0.0)) == 1.0

    def test_small_power_linear_expansion(self):
        # averaged linear form: 1 - N^N e^-N / (sigma_w2 Gamma(N)) * P
        n = 50
        slope = math.exp(n * math.log(n) - n - math.lgamma(n)) / SW2
        for p_d in (1e-5, 1e-6):
            value = expected_zeta_star_csi(willie(p_d=p_d))
            assert value == pytest.approx(1.0 - slope * p_d, abs=5e-3 * slope * p_d + 1e-12)

    def test_sampling_oracle(self):
        w = willie(p_d=0.005)
        g = sample_exponential_gains(1_000_000, seed=107)
        oracle = float(np.mean(zeta_star_csi_ref(g * 0.005, SW2, 50)))
        assert expected_zeta_star_csi(w) == pytest.approx(oracle, abs=0.001)


class TestInvariants:
    def test_threshold_optimality_over_grid(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            w = willie(
                n_d=int(rng.integers(1, 101)),
                p_d=float(rng.uniform(0.001, 0.2)),
                h_w2=float(rng.uniform(0.05, 4.0)),
                sigma_w2=float(rng.uniform(0.01, 0.1)),
            )
            floor = zeta_star_csi(w)
            lam_star = optimal_threshold_csi(w)
            for lam in np.linspace(0.05 * lam_star, 5.0 * lam_star, 100):
                assert p_fa(lam, w) + p_md(lam, w) >= floor - 1e-10

    def test_zeta_star_csi_monotone_in_power_and_samples(self):
        powers = [0.001, 0.005, 0.02, 0.1, 0.5]
        values = [zeta_star_csi(willie(p_d=p, h_w2=1.0)) for p in powers]
        assert all(b <= a for a, b in zip(values, values[1:]))
        counts = [1, 5, 20, 50, 100]
        values = [zeta_star_csi(willie(n_d=n, p_d=0.05, h_w2=1.0)) for n in counts]
        assert all(b <= a for a, b in zip(values, values[1:]))

    def test_linear_approximation_order(self):
        ratios = []
        for p in (1e-3, 1e-4, 1e-5):
            w = willie(p_d=p, h_w2=1.0)
            ratios.append((zeta_star_csi(w) - zeta_linear_csi(w)) / p)
        assert ratios[0] > ratios[1] > ratios[2] > 0.0

    def test_proposition_one_numeric(self):
        for n_d, p_d in [(50, 0.0005), (100, 0.0005), (75, 0.001)]:
            cdi = zeta_star_cdi(willie(n_d=n_d, p_d=p_d))
            if cdi >= 0.9:
                csi = expected_zeta_star_csi(willie(n_d=n_d, p_d=p_d))
                assert abs(cdi - csi) <= 0.01

    def test_expected_zeta_star_csi_strictly_decreasing(self):
        powers = [0.0, 1e-4, 1e-3, 1e-2, 0.1, 1.0]
        values = [expected_zeta_star_csi(willie(p_d=p)) for p in powers]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_outputs_in_unit_interval(self):
        for p_d in (0.0, 0.001, 0.05, 1.0):
            assert 0.0 <= zeta_star_cdi(willie(p_d=p_d)) <= 1.0
            assert 0.0 <= expected_zeta_star_csi(willie(p_d=p_d)) <= 1.0
            if p_d > 0:
                assert 0.0 <= zeta_star_csi(willie(p_d=p_d, h_w2=1.0)) <= 1.0
