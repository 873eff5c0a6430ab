import numpy as np
import pytest
from scipy import integrate

from ridgelab.targets import (GaussianSpec, combine, gaussian_radon_oracle,
                              make_cusp_radial, make_gaussian)


class TestGaussian:
    def test_peak_value(self):
        f = make_gaussian(GaussianSpec(d=2))
        np.testing.assert_allclose(f(np.zeros(2)), 1.0)

    def test_point_value_1d(self):
        f = make_gaussian(GaussianSpec(d=1))
        np.testing.assert_allclose(f(np.array([1.0])), np.exp(-0.5))

    def test_fourier_at_zero_is_total_mass(self):
        # oracle: integral of exp(-|x|^2/2) over R^2 by polar quadrature
        f = make_gaussian(GaussianSpec(d=2))
        oracle, _ = integrate.quad(
            lambda r: 2 * np.pi * r * np.exp(-r ** 2 / 2), 0, 40)
        np.testing.assert_allclose(f.fourier(np.zeros(2)), oracle, rtol=1e-10)
        np.testing.assert_allclose(oracle, 2 * np.pi, rtol=1e-10)

    def test_fourier_matches_quadrature_1d(self):
        spec = GaussianSpec(d=1, center=np.array([0.3]), width=0.7,
                            amplitude=1.5)
        f = make_gaussian(spec)
        for xi in (0.0, 0.9, 2.4):
            re, _ = integrate.quad(
                lambda x: f(np.array([x])) * np.cos(xi * x), -30, 30)
            im, _ = integrate.quad(
                lambda x: -f(np.array([x])) * np.sin(xi * x), -30, 30)
            np.testing.assert_allclose(f.fourier(np.array([xi])),
                                       re + 1j * im, atol=1e-10)

    def test_translation(self):
        f = make_gaussian(GaussianSpec(d=2, center=np.array([0.5, 0.0])))
        g = make_gaussian(GaussianSpec(d=2))
        x = np.array([0.7, -0.2])
        np.testing.assert_allclose(f(x), g(x - [0.5, 0.0]))

    def test_bandwidth_truncates_spectrum(self):
        f = make_gaussian(GaussianSpec(d=1))
        xi = np.array([f.bandwidth])
        assert abs(f.fourier(xi)) <= 1.1e-14 * abs(f.fourier(np.zeros(1)))

    def test_invalid_width(self):
        with pytest.raises(ValueError):
            GaussianSpec(d=1, width=0.0)


class TestRadonOracle:
    def test_d2_central_slice(self):
        spec = GaussianSpec(d=2)
        omega = np.array([0.6, 0.8])
        np.testing.assert_allclose(gaussian_radon_oracle(spec, omega, 0.0),
                                   np.sqrt(2 * np.pi), rtol=1e-12)

    def test_d3_offset_plane(self):
        spec = GaussianSpec(d=3)
        omega = np.array([0.0, 0.0, 1.0])
        # 2-D Gaussian integral over the plane z = 1
        oracle, _ = integrate.quad(
            lambda r: 2 * np.pi * r * np.exp(-(r ** 2 + 1) / 2), 0, 40)
        np.testing.assert_allclose(gaussian_radon_oracle(spec, omega, 1.0),
                                   oracle, rtol=1e-10)
        np.testing.assert_allclose(oracle, 2 * np.pi * np.exp(-0.5),
                                   rtol=1e-10)

    def test_zero_amplitude(self):
        spec = GaussianSpec(d=2, amplitude=0.0)
        assert gaussian_radon_oracle(spec, np.array([1.0, 0.0]), 0.3) == 0.0

    def test_shifted_peak(self):
        spec = GaussianSpec(d=2, center=np.array([1.0, 0.0]))
        omega = np.array([1.0, 0.0])
        b = np.linspace(-2, 2, 81)
        vals = [gaussian_radon_oracle(spec, omega, bi) for bi in b]
        assert b[int(np.argmax(vals))] == 1.0


class TestCusp:
    def test_pointwise_values(self):
        f = make_cusp_radial(2.0, 2)
        np.testing.assert_allclose(f(np.zeros(2)), 1.0)
        np.testing.assert_allclose(f(np.array([1.0, 0.0])), 0.0)
        np.testing.assert_allclose(f(np.array([0.5, 0.0])), 0.25)

    def test_compact_support(self):
        f = make_cusp_radial(2.5, 2)
        assert f.support_radius == 1.0
        assert f(np.array([1.2, 0.3])) == 0.0

    def test_fourier_matches_quadrature_1d(self):
        f = make_cusp_radial(2.0, 1)
        for xi in (0.0, 1.3, 4.0):
            oracle, _ = integrate.quad(
                lambda x: (1 - abs(x)) ** 2 * np.cos(xi * x), -1, 1)
            np.testing.assert_allclose(f.fourier(np.array([xi])), oracle,
                                       atol=1e-9)


class TestCombine:
    def test_linear_combination(self):
        f = make_gaussian(GaussianSpec(d=2))
        g = make_gaussian(GaussianSpec(d=2, width=0.5))
        h = combine(f, g, 2.0, -1.0)
        x = np.array([0.4, -0.1])
        np.testing.assert_allclose(h(x), 2 * f(x) - g(x))
        xi = np.array([1.0, 2.0])
        np.testing.assert_allclose(h.fourier(xi),
                                   2 * f.fourier(xi) - g.fourier(xi))
