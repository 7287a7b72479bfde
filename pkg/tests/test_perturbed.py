import math

import numpy as np
import pytest
from scipy import integrate

from telhaz.hazard import ConstantHazard, PolynomialHazard
from telhaz.perturbed import PerturbedModel
from telhaz.presets import FIG3_TIMES, model_fig1, model_fig2, model_fig3
from telhaz.telegraph import TelegraphParams, w_atom_prob, w_density


@pytest.fixture(scope="module")
def fig_model():
    return model_fig3()  # c=1, lam=15, alpha=15, beta=0.001


class TestConstruction:
    def test_dominance_enforced(self):
        hazard = PolynomialHazard(15.0, 0.001, 1.0)  # min rate 1.001
        with pytest.raises(ValueError):
            PerturbedModel(hazard, TelegraphParams(c=1.5, lam=1.0))
        PerturbedModel(hazard, TelegraphParams(c=1.0, lam=1.0))  # boundary passes

    def test_validation_can_be_skipped(self):
        hazard = ConstantHazard(0.5)
        model = PerturbedModel(hazard, TelegraphParams(c=2.0, lam=1.0), validate=False)
        assert model.noise.c == 2.0


class TestBand:
    def test_degenerate_at_zero(self, fig_model):
        band = fig_model.band(0.0)
        assert band.a == 0.0 and band.b == 0.0 and band.width == 0.0

    def test_brackets_the_cdf_strictly(self, fig_model):
        for t in np.linspace(0.05, 2.0, 30):
            band = fig_model.band(float(t))
            cdf = fig_model.hazard.cdf(float(t))
            assert band.a < cdf < band.b
            assert band.width == pytest.approx(band.b - band.a, rel=1e-10, abs=1e-15)

    def test_terminal_width_limits(self):
        # positive limit only when the excess hazard mass stays integrable
        assert model_fig2("a").terminal_band_width() == 0.0
        assert model_fig2("b").terminal_band_width() == 0.0
        soft = model_fig2("c")
        nu_exact = 3.0 * math.pi / 4.0 - 1.5 * math.log(2.0)  # closed-form integral
        assert soft.total_excess_hazard == pytest.approx(nu_exact, rel=1e-10)
        assert soft.terminal_band_width() == pytest.approx(math.exp(-nu_exact), rel=1e-10)

    def test_band_approaches_its_limits(self):
        soft = model_fig2("c")
        nu = soft.total_excess_hazard
        band = soft.band(30.0)
        assert band.a == pytest.approx(-math.expm1(-nu), abs=1e-9)
        assert band.b == pytest.approx(1.0, abs=1e-12)
        assert band.nu == nu

    def test_width_condition_constant_low_rate(self):
        model = PerturbedModel(ConstantHazard(0.5), TelegraphParams(c=1.0, lam=1.0), validate=False)
        for t in (0.1, 1.0, 5.0, 50.0):
            assert model.band_width_nondecreasing(t)  # r < c <= c*coth always

    def test_width_condition_flips_for_bimodal_case(self):
        model = model_fig2("a")
        ts = np.linspace(1e-3, 2.0, 400)
        flags = np.array([model.band_width_nondecreasing(float(t)) for t in ts])
        assert flags[0]
        assert np.count_nonzero(flags[1:] != flags[:-1]) >= 1

    def test_width_condition_eventually_false_for_growing_rate(self):
        model = model_fig2("b")  # rate 1 + e^t
        for t in np.linspace(0.5, 3.0, 12):
            assert not model.band_width_nondecreasing(float(t))

    def test_width_condition_rejects_origin(self, fig_model):
        with pytest.raises(ValueError):
            fig_model.band_width_nondecreasing(0.0)

    def test_bimodal_width_has_two_local_maxima(self):
        model = model_fig2("a")
        ts = np.linspace(1e-3, 2.5, 1500)
        width = np.array([model.band(float(t)).width for t in ts])
        interior = (width[1:-1] > width[:-2]) & (width[1:-1] > width[2:])
        assert np.count_nonzero(interior) == 2


class TestAtomsAndDensity:
    def test_atom_matches_integrated_noise_atom(self, fig_model):
        for t in (0.0, 0.3, 1.0):
            assert fig_model.atom_prob(t) == w_atom_prob(fig_model.noise, t)
        assert fig_model.atom_prob(0.0) == 0.5
        assert fig_model.atom_prob(0.5) == pytest.approx(0.5 * math.exp(-7.5), rel=1e-14)

    def test_density_rejects_endpoints_and_outside(self, fig_model):
        band = fig_model.band(1.0)
        for x in (band.a, band.b, band.a - 0.01, band.b + 0.01):
            with pytest.raises(ValueError):
                fig_model.density(x, 1.0)
        with pytest.raises(ValueError):
            fig_model.density(0.5, 0.0)

    def test_change_of_variables_against_w_density(self, fig_model):
        # f_X(x) = f_W(log(survival/(1-x))) / (1 - x): two separate code paths
        t = 0.7
        band = fig_model.band(t)
        surv = fig_model.hazard.survival(t)
        for x in np.linspace(band.a + 1e-3, band.b - 1e-3, 9):
            w = math.log(surv / (1.0 - x))
            expected = w_density(fig_model.noise, t, w) / (1.0 - x)
            assert fig_model.density(float(x), t) == pytest.approx(expected, rel=1e-11)

    @pytest.mark.parametrize("t", FIG3_TIMES)
    def test_normalization(self, fig_model, t):
        band = fig_model.band(t)
        interior, _ = integrate.quad(
            lambda x: fig_model.density(x, t), band.a, band.b,
            epsabs=1e-10, epsrel=1e-10, limit=300,
        )
        assert 2.0 * fig_model.atom_prob(t) + interior == pytest.approx(1.0, abs=1e-6)

    def test_boundary_limits_within_one_percent(self, fig_model):
        lam, c = fig_model.noise.lam, fig_model.noise.c
        t = 0.25
        band = fig_model.band(t)
        surv = fig_model.hazard.survival(t)
        shared = lam / (2.0 * c * surv) * (1.0 + lam * t / 2.0)
        lower_limit = shared * math.exp(-(lam + c) * t)
        upper_limit = shared * math.exp(-(lam - c) * t)
        assert fig_model.density(band.a + 1e-4, t) == pytest.approx(lower_limit, rel=0.01)
        assert fig_model.density(band.b - 1e-4, t) == pytest.approx(upper_limit, rel=0.01)

    def test_boundary_limits_tighten_with_offset(self, fig_model):
        # the 1e-4 offset has a genuine O(offset) deviation; halving the
        # offset must halve the error, confirming the closed-form limit
        lam, c = fig_model.noise.lam, fig_model.noise.c
        t = 1.0
        band = fig_model.band(t)
        surv = fig_model.hazard.survival(t)
        limit = lam / (2.0 * c * surv) * (1.0 + lam * t / 2.0) * math.exp(-(lam - c) * t)
        errors = [
            abs(fig_model.density(band.b - off, t) - limit) / limit
            for off in (8e-5, 2e-5, 5e-6)
        ]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] < 0.01


class TestCdf:
    def test_atom_at_lower_endpoint(self, fig_model):
        t = 1.0
        band = fig_model.band(t)
        assert fig_model.cdf(band.a, t) == pytest.approx(fig_model.atom_prob(t), rel=1e-9)
        assert fig_model.cdf(band.a - 1e-9, t) == 0.0
        assert fig_model.cdf(band.b, t) == 1.0
        assert fig_model.cdf(band.b + 1e-9, t) == 1.0

    def test_degenerate_time_zero(self, fig_model):
        assert fig_model.cdf(-0.5, 0.0) == 0.0
        assert fig_model.cdf(0.0, 0.0) == 1.0

    def test_monotone_and_matches_density_integral(self, fig_model):
        t = 0.5
        band = fig_model.band(t)
        xs = np.linspace(band.a + 1e-6, band.b - 1e-6, 7)
        values = [fig_model.cdf(float(x), t) for x in xs]
        assert np.all(np.diff(values) >= 0.0)
        for x, value in zip(xs[::3], values[::3]):
            interior, _ = integrate.quad(
                lambda y: fig_model.density(y, t), band.a, float(x),
                epsabs=1e-10, epsrel=1e-10, limit=300,
            )
            assert value == pytest.approx(fig_model.atom_prob(t) + interior, abs=1e-6)

    def test_convergence_in_probability_to_one(self, fig_model):
        threshold = 1.0 - 1e-4
        probs = [fig_model.cdf(threshold, t) for t in (0.75, 1.0, 1.5, 2.0)]
        assert all(a >= b for a, b in zip(probs, probs[1:]))
        assert probs[-1] < 1e-6


class TestMoments:
    def test_zero_at_origin(self, fig_model):
        assert fig_model.mean(0.0) == 0.0
        assert fig_model.variance(0.0) == 0.0

    def test_frozen_values_against_plain_formula(self, fig_model):
        # direct cosh/sinh evaluation, independent of the scaled code path
        lam, c = 15.0, 1.0
        for t in (0.5, 1.0, 2.0):
            surv = fig_model.hazard.survival(t)
            om1 = math.sqrt(lam**2 + c**2)
            om2 = math.sqrt(lam**2 + 4 * c**2)
            m1 = math.exp(-lam * t) * (math.cosh(t * om1) + lam / om1 * math.sinh(t * om1))
            m2 = math.exp(-lam * t) * (math.cosh(t * om2) + lam / om2 * math.sinh(t * om2))
            assert fig_model.mean(t) == pytest.approx(1.0 - surv * m1, rel=1e-10)
            assert fig_model.variance(t) == pytest.approx(surv**2 * (m2 - m1**2), rel=1e-7)

    def test_long_time_limits(self, fig_model):
        assert fig_model.mean(2.0) == pytest.approx(1.0, abs=1e-3)
        assert fig_model.variance(2.0) == pytest.approx(0.0, abs=1e-3)

    def test_mean_increasing_in_time(self, fig_model):
        ts = np.concatenate([np.geomspace(1e-3, 2.5, 512), np.array(FIG3_TIMES)])
        ts.sort()
        means = fig_model.mean(ts)
        assert np.all(np.diff(means) > -1e-14)

    def test_mean_decreasing_in_amplitude(self):
        hazard = PolynomialHazard(15.0, 0.001, 1.0)  # fixed baseline
        for t in (0.5, 1.0):
            means = [
                PerturbedModel(hazard, TelegraphParams(c=c, lam=15.0)).mean(t)
                for c in (0.25, 0.5, 1.0)
            ]
            assert means[0] >= means[1] >= means[2]
            assert means[0] > means[2]

    def test_variance_nonnegative_on_grid(self, fig_model):
        ts = np.linspace(0.0, 2.5, 200)
        assert np.all(fig_model.variance(ts) >= 0.0)


class TestSamplePaths:
    def test_paths_start_at_zero_and_stay_in_band(self, fig_model):
        grid = np.linspace(0.0, 1.0, 101)
        for seed in range(5):
            pairs = fig_model.sample_path_values(1.0, grid, seed=seed)
            assert pairs[0] == (0.0, 0.0)
            for t, x in pairs[1:]:
                band = fig_model.band(t)
                assert band.a - 1e-12 <= x <= band.b + 1e-12

    def test_paths_are_nondecreasing(self, fig_model):
        grid = np.linspace(0.0, 2.0, 301)
        for seed in range(5):
            values = [x for _, x in fig_model.sample_path_values(2.0, grid, seed=seed)]
            assert np.all(np.diff(values) >= -1e-14)

    def test_deterministic_per_seed(self, fig_model):
        grid = np.linspace(0.0, 1.0, 11)
        a = fig_model.sample_path_values(1.0, grid, seed=3)
        b = fig_model.sample_path_values(1.0, grid, seed=3)
        assert a == b

    def test_vanishing_amplitude_recovers_the_cdf(self):
        hazard = PolynomialHazard(15.0, 0.001, 1.0)
        model = PerturbedModel(hazard, TelegraphParams(c=1e-6, lam=15.0))
        grid = np.linspace(0.0, 2.0, 201)
        cdf = hazard.cdf(grid)
        for seed in (0, 1):
            values = np.array([x for _, x in model.sample_path_values(2.0, grid, seed=seed)])
            assert float(np.max(np.abs(values - cdf))) < 1e-4

    def test_grid_validation(self, fig_model):
        with pytest.raises(ValueError):
            fig_model.sample_path_values(1.0, [0.0, 1.5], seed=0)
        with pytest.raises(ValueError):
            fig_model.sample_path_values(1.0, [], seed=0)

    def test_noise_sign_balance_at_late_times(self):
        # P{V(t) = +c} is 1/2 for every t thanks to the fair initial flip
        from telhaz.telegraph import sample_path

        model = model_fig1()
        n = 4000
        t = 0.9
        positive = 0
        for seed in range(n):
            path = sample_path(model.noise, 1.0, seed)
            switches = sum(1 for e in path.event_times if e <= t)
            positive += path.initial_sign * (-1) ** switches > 0
        sigma = math.sqrt(0.25 / n)
        assert abs(positive / n - 0.5) < 3.0 * sigma
