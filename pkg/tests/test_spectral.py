import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cadmia import spectral
from cadmia.errors import DomainError, FixtureError
from cadmia.spectral import (SpectralBand, SpectralCurve, absorptivity_from_reflectance,
                             band_gap_wavelength, epsilon_nu, load_curve,
                             proportional_sulfate_absorptivity)

BAND = SpectralBand(380.0, 512.331)


class TestBandGap:
    def test_cds_edge(self):
        assert band_gap_wavelength(2.42) == pytest.approx(512.331, abs=0.01)

    def test_unit_energy(self):
        assert band_gap_wavelength(1.0) == pytest.approx(1239.841, abs=1e-3)

    def test_uv_energy(self):
        assert band_gap_wavelength(4.8435) == pytest.approx(4.13567e-15 * 2.99792e17 / 4.8435)
        assert band_gap_wavelength(4.8435) == pytest.approx(255.98, abs=0.01)

    @pytest.mark.parametrize("e", [0.0, -1.0])
    def test_rejects_non_positive(self, e):
        with pytest.raises(DomainError):
            band_gap_wavelength(e)


class TestSpectralBand:
    def test_invalid(self):
        with pytest.raises(DomainError):
            SpectralBand(500.0, 400.0)
        with pytest.raises(DomainError):
            SpectralBand(0.0, 400.0)

    def test_uv_band(self):
        b = SpectralBand(200.0, 512.331)
        assert b.rescale(200.0) == 0.0
        assert b.rescale(512.331) == 1.0


class TestLoadCurve:
    def test_endpoints(self):
        c = load_curve([(380, 1), (512.331, 3)], BAND)
        assert c.lam.tolist() == [0.0, 1.0]
        assert c.values.tolist() == [1.0, 3.0]

    def test_midpoint(self):
        mid = 0.5 * (380.0 + 512.331)
        c = load_curve([(380, 0), (mid, 2), (512.331, 0)], BAND)
        assert c.lam[1] == pytest.approx(0.5, abs=1e-12)
        assert c.values.tolist() == [0.0, 2.0, 0.0]

    def test_rounded_midpoint_maps_affinely(self):
        c = load_curve([(380, 0), (446.17, 2), (512.331, 0)], BAND)
        assert c.lam[1] == pytest.approx((446.17 - 380.0) / 132.331, abs=1e-12)

    def test_discards_out_of_band_and_interpolates_edges(self):
        c = load_curve([(370, 0.0), (390, 1.0), (500, 1.0), (520, 0.0)], BAND)
        assert c.lam[0] == 0.0 and c.lam[-1] == 1.0
        assert c.values[0] == pytest.approx(0.5)
        assert c.values[-1] == pytest.approx(1.0 - 12.331 / 20.0)

    def test_extrapolates_with_clamp(self):
        c = load_curve([(400, 1.0), (450, 0.5)], BAND)
        assert c.values[0] == pytest.approx(1.2)
        assert c.values[-1] == 0.0

    def test_unsorted_input(self):
        c = load_curve([(512.331, 3), (380, 1)], BAND)
        assert c.values.tolist() == [1.0, 3.0]

    @pytest.mark.parametrize("records", [
        [(380, 1.0)],
        [(300, 1.0), (400, 1.0), (600, 1.0)],
        [(380, -1.0), (512.331, 1.0)],
        [(380, 1.0), (380, 2.0), (512.331, 1.0)],
    ])
    def test_errors(self, records):
        with pytest.raises(FixtureError):
            load_curve(records, BAND)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(0.0, 10.0), min_size=2, max_size=12))
    def test_reproduces_in_band_records(self, vals):
        wl = np.linspace(380.0, 512.331, len(vals))
        c = load_curve(zip(wl, vals), BAND)
        got = c(BAND.rescale(wl))
        np.testing.assert_allclose(got, vals, rtol=1e-12, atol=0)


class TestEval:
    def test_linear(self):
        c = SpectralCurve([0, 1], [1, 3])
        assert spectral.eval(c, 0.5) == 2.0

    def test_hat(self):
        c = SpectralCurve([0, 0.5, 1], [0, 2, 0])
        assert spectral.eval(c, 0.25) == 1.0

    def test_exact_at_knots(self):
        c = SpectralCurve([0, 0.3, 0.7, 1], [1, 4, 2, 5])
        np.testing.assert_array_equal(c(c.lam), c.values)

    @pytest.mark.parametrize("x", [-1e-9, 1.0 + 1e-9, float("nan")])
    def test_out_of_range(self, x):
        with pytest.raises(DomainError):
            SpectralCurve([0, 1], [1, 1])(x)

    def test_invalid_curves(self):
        with pytest.raises(FixtureError):
            SpectralCurve([0, 1], [1, -1])
        with pytest.raises(FixtureError):
            SpectralCurve([0, 0.5], [1, 1])
        with pytest.raises(FixtureError):
            SpectralCurve([0, 0.6, 0.5, 1], [1, 1, 1, 1])

    def test_immutable(self):
        c = SpectralCurve([0, 1], [1, 1])
        with pytest.raises(ValueError):
            c.values[0] = 5.0


class TestReflectance:
    def test_unit_reflectance(self):
        c = absorptivity_from_reflectance(SpectralCurve([0, 1], [1, 1]), 3.34e-2, 1e-4, 1.64e5)
        assert np.all(c.values == 0.0)
        assert not np.any(np.signbit(c.values))

    def test_inverse(self):
        k = 3.34e-2 * 1e-4 * 1.64e5
        c = absorptivity_from_reflectance(SpectralCurve([0, 1], [math.exp(-k)] * 2),
                                          3.34e-2, 1e-4, 1.64e5)
        np.testing.assert_allclose(c.values, 1.0, rtol=1e-14)

    def test_table_value(self):
        c = absorptivity_from_reflectance(SpectralCurve([0, 1], [0.5783, 0.5783]),
                                          3.34e-2, 1e-4, 1.64e5)
        np.testing.assert_allclose(c.values, 1.0, atol=1e-3)

    @pytest.mark.parametrize("bad", [0.0, 1.2])
    def test_rejects_invalid(self, bad):
        with pytest.raises(FixtureError, match="lambda=1"):
            absorptivity_from_reflectance(SpectralCurve([0, 1], [0.5, bad]), 1, 1, 1)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.floats(1e-6, 1.0), min_size=2, max_size=10))
    def test_monotone_decreasing(self, vals):
        lam = np.linspace(0, 1, len(vals))
        r = SpectralCurve(lam, vals)
        e = absorptivity_from_reflectance(r, 1.0, 1.0, 1.0).values
        order = np.argsort(r.values)
        assert np.all(np.diff(e[order]) <= 0)


class TestAbsorptivities:
    def test_proportional_copy(self):
        c = SpectralCurve([0, 0.4, 1], [1, 2, 3])
        g = proportional_sulfate_absorptivity(c)
        assert g is not c
        np.testing.assert_array_equal(g.values, c.values)
        np.testing.assert_array_equal(g.lam, c.lam)

    def test_dimensional_ratio(self):
        # eps_g = eps_g_ref * eps_g~ = 4 * eps_c_ref * eps_c~ for the base case
        c = SpectralCurve([0, 1], [0.3, 1.7])
        g = proportional_sulfate_absorptivity(c)
        np.testing.assert_allclose(6.56e5 * g.values, 4 * 1.64e5 * c.values)

    def test_epsilon_nu(self):
        one = SpectralCurve([0, 1], [1, 1])
        np.testing.assert_allclose(epsilon_nu(one, one, 0.25).values, -0.75)
        np.testing.assert_array_equal(epsilon_nu(one, one, 1.0).values, 0.0)
        two = SpectralCurve([0, 1], [2, 2])
        zero = SpectralCurve([0, 1], [0, 0])
        np.testing.assert_allclose(epsilon_nu(two, zero, 0.5).values, 1.0)

    def test_union_grid(self):
        c = SpectralCurve([0, 0.5, 1], [1, 2, 1])
        g = SpectralCurve([0, 0.25, 1], [1, 1, 0])
        e = epsilon_nu(c, g, 2.0)
        assert e.lam.tolist() == [0, 0.25, 0.5, 1]
        for x in (0.1, 0.25, 0.6, 0.9):
            assert e(x) == pytest.approx(2 * c(x) - g(x))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_total_absorbance_non_negative(self, seed):
        rng = np.random.default_rng(seed)
        lam = np.r_[0, np.sort(rng.uniform(0.01, 0.99, 4)), 1]
        c = SpectralCurve(lam, rng.uniform(0, 3, lam.size))
        g = SpectralCurve(lam, rng.uniform(0, 3, lam.size))
        nu = rng.uniform(0.01, 5)
        e = epsilon_nu(c, g, nu)
        z = np.linspace(0, 1, 21)
        prof = rng.uniform(0, 1, z.size)
        S = np.r_[0, np.cumsum(0.5 * (prof[1:] + prof[:-1]) * np.diff(z))]
        for x in rng.uniform(0, 1, 10):
            assert np.all(e(x) * S + z * g(x) >= -1e-12)
