import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special, stats

from telhaz.special import (
    bessel_i0,
    bessel_i0e,
    bessel_i1,
    bessel_i1e,
    bessel_i1e_over_x,
    normal_quantile,
)


class TestBessel:
    def test_values_at_zero(self):
        assert bessel_i0(0.0) == 1.0
        assert bessel_i1(0.0) == 0.0
        assert bessel_i1e_over_x(0.0) == 0.5

    def test_frozen_series_values(self):
        # independent ascending-series evaluation, truncated below 1e-16
        assert bessel_i0(1.0) == pytest.approx(1.2660658777520082, rel=1e-14)
        assert bessel_i1(1.0) == pytest.approx(0.5651591039924851, rel=1e-13)

    @pytest.mark.parametrize("x", np.geomspace(1e-6, 600.0, 41).tolist() + [29.9, 30.0, 30.1])
    def test_against_scipy(self, x):
        assert bessel_i0e(x) == pytest.approx(float(special.i0e(x)), rel=1e-12)
        assert bessel_i1e(x) == pytest.approx(float(special.i1e(x)), rel=1e-12)
        if x <= 700.0:
            assert bessel_i0(x) == pytest.approx(float(special.i0(x)), rel=1e-12)
            assert bessel_i1(x) == pytest.approx(float(special.i1(x)), rel=1e-12)

    def test_i1e_over_x_matches_ratio(self):
        for x in (1e-12, 1e-6, 0.5, 10.0, 29.99, 30.01, 250.0):
            assert bessel_i1e_over_x(x) == pytest.approx(float(special.i1e(x)) / x, rel=1e-12)

    def test_array_input(self):
        xs = np.array([0.0, 0.5, 2.0, 40.0])
        out = bessel_i0e(xs)
        assert out.shape == xs.shape
        assert np.allclose(out, special.i0e(xs), rtol=1e-12)

    def test_huge_argument_overflow_is_explicit(self):
        assert bessel_i0(800.0) == math.inf
        assert np.isfinite(bessel_i0e(800.0))

    def test_negative_argument_rejected(self):
        with pytest.raises(ValueError):
            bessel_i0(-1.0)
        with pytest.raises(ValueError):
            bessel_i1(float("nan"))

    @given(st.floats(min_value=0.0, max_value=100.0), st.floats(min_value=0.0, max_value=100.0))
    @settings(max_examples=60, deadline=None)
    def test_i0_at_least_one_and_increasing(self, x, y):
        lo, hi = sorted((x, y))
        assert bessel_i0(lo) >= 1.0
        assert bessel_i0(hi) >= bessel_i0(lo)


class TestNormalQuantile:
    def test_frozen_values(self):
        assert normal_quantile(0.025) == pytest.approx(1.9599639845400545, abs=1e-9)
        assert normal_quantile(0.158655) == pytest.approx(1.000001049431045, abs=1e-9)
        # the rounded tail of Phi(1) maps back to 1.0 at its own precision
        assert normal_quantile(0.158655) == pytest.approx(1.0, abs=5e-6)
        assert normal_quantile(0.5) == 0.0

    @pytest.mark.parametrize("alpha", np.geomspace(1e-9, 0.499, 25).tolist())
    def test_against_scipy_isf(self, alpha):
        assert normal_quantile(alpha) == pytest.approx(float(stats.norm.isf(alpha)), abs=1e-9)

    def test_round_trip_through_erfc(self):
        for alpha in (1e-8, 1e-4, 0.025, 0.2, 0.45):
            z = normal_quantile(alpha)
            assert 0.5 * math.erfc(z / math.sqrt(2.0)) == pytest.approx(alpha, rel=1e-12)

    @given(
        st.floats(min_value=1e-9, max_value=0.5, exclude_max=True),
        st.floats(min_value=1e-9, max_value=0.5, exclude_max=True),
    )
    @settings(max_examples=60, deadline=None)
    def test_monotone_decreasing(self, a, b):
        lo, hi = sorted((a, b))
        assert normal_quantile(lo) >= normal_quantile(hi)

    @pytest.mark.parametrize("alpha", [0.0, -0.1, 0.6, 1.0, float("nan")])
    def test_domain(self, alpha):
        with pytest.raises(ValueError):
            normal_quantile(alpha)


def test_epanechnikov_l2_constant_by_quadrature():
    # closed form 3*sqrt(5)/25 for the parabolic kernel on [-sqrt(5), sqrt(5)]
    radius = math.sqrt(5.0)

    def k(u):
        return 3.0 / (4.0 * radius) * (1.0 - u * u / 5.0)

    value, _ = integrate.quad(lambda u: k(u) ** 2, -radius, radius, epsabs=1e-13)
    assert value == pytest.approx(3.0 * math.sqrt(5.0) / 25.0, abs=1e-12)
