"""Closed forms of the reference law against direct quadrature.

Every function in the module is an integral of the density in disguise, so
scipy.integrate.quad serves as the independent oracle throughout.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from semicircle_lab import semicircle


def test_density_peak_and_support():
    assert semicircle.density(0.0) == pytest.approx(1.0 / math.pi, rel=1e-15)
    for x in (2.0, -2.0, 2.5, -7.0, 100.0):
        if abs(x) > 2.0:
            assert semicircle.density(x) == 0.0
    assert semicircle.density(2.0) == 0.0


def test_density_even_and_normalized():
    xs = np.linspace(-2.0, 2.0, 101)
    assert np.array_equal(semicircle.density(xs), semicircle.density(-xs))
    mass, _ = quad(semicircle.density, -2.0, 2.0)
    assert mass == pytest.approx(1.0, abs=1e-10)


def test_cdf_endpoints():
    assert semicircle.cdf(-2.0) == 0.0
    assert semicircle.cdf(2.0) == 1.0
    assert semicircle.cdf(0.0) == pytest.approx(0.5, abs=1e-15)
    # clamped outside the support
    assert semicircle.cdf(-9.0) == 0.0
    assert semicircle.cdf(9.0) == 1.0


def test_cdf_symmetry():
    xs = np.linspace(-2.0, 2.0, 41)
    assert np.allclose(semicircle.cdf(xs) + semicircle.cdf(-xs), 1.0, atol=1e-14)


def test_cdf_frozen_value_at_one():
    # closed form and quadrature agree; the decimal is frozen from both
    assert semicircle.cdf(1.0) == pytest.approx(0.8044988905221147, abs=1e-15)
    numeric, _ = quad(semicircle.density, -2.0, 1.0)
    assert semicircle.cdf(1.0) == pytest.approx(numeric, abs=1e-10)


def test_cdf_is_integral_of_density():
    for x in np.linspace(-1.9, 1.9, 9):
        numeric, _ = quad(semicircle.density, -2.0, float(x))
        assert semicircle.cdf(float(x)) == pytest.approx(numeric, abs=1e-10)


def test_catalan_moments_exact():
    assert [semicircle.catalan_moment(k) for k in range(9)] == [1, 0, 1, 0, 2, 0, 5, 0, 14]
    assert semicircle.catalan_moment(20) == 16796
    with pytest.raises(ValueError):
        semicircle.catalan_moment(-1)


def test_moments_match_quadrature():
    for k in (2, 4, 6, 8):
        numeric, _ = quad(lambda x, k=k: x**k * semicircle.density(x), -2.0, 2.0)
        assert numeric == pytest.approx(semicircle.catalan_moment(k), abs=1e-8)
    odd, _ = quad(lambda x: x**3 * semicircle.density(x), -2.0, 2.0)
    assert abs(odd) <= 1e-10


def test_stieltjes_frozen_points():
    # s(i) = i (sqrt(5) - 1)/2 and s(2i) = i (sqrt(2) - 1), pure imaginary
    assert semicircle.stieltjes(1j) == pytest.approx(0.6180339887498949j, abs=1e-15)
    assert semicircle.stieltjes(2j) == pytest.approx(0.41421356237309515j, abs=1e-15)


def test_stieltjes_solves_quadratic_and_herglotz():
    rng = np.random.default_rng(7)
    for _ in range(50):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3))
        s = semicircle.stieltjes(z)
        assert abs(s * s + z * s + 1.0) <= 1e-12
        assert s.imag > 0
        assert abs(s) <= 1.0 / z.imag + 1e-12


def test_stieltjes_matches_quadrature():
    # 1/(x - z) = ((x - Re z) + i Im z) / |x - z|^2
    for z in (0.7 + 0.9j, -1.3 + 0.4j, 2.5 + 1.1j):
        re, _ = quad(lambda x: semicircle.density(x) * (x - z.real) / abs(x - z) ** 2, -2, 2)
        im, _ = quad(lambda x: semicircle.density(x) * z.imag / abs(x - z) ** 2, -2, 2)
        assert semicircle.stieltjes(z) == pytest.approx(complex(re, im), abs=1e-8)


def test_stieltjes_rejects_lower_half_plane():
    for z in (1.0, 0.5 - 1j, -2j):
        with pytest.raises(ValueError):
            semicircle.stieltjes(z)


def test_quantile_round_trip():
    ps = np.linspace(0.0, 1.0, 21)
    assert np.allclose(semicircle.cdf(semicircle.quantile(ps)), ps, atol=1e-12)
    assert semicircle.quantile(0.0) == pytest.approx(-2.0, abs=1e-12)
    assert semicircle.quantile(1.0) == pytest.approx(2.0, abs=1e-12)
    assert abs(semicircle.quantile(0.5)) <= 1e-15


def test_quantile_inverts_cdf_on_interior():
    xs = np.linspace(-1.8, 1.8, 13)
    assert np.allclose(semicircle.quantile(semicircle.cdf(xs)), xs, atol=1e-12)


def test_quantile_rejects_bad_levels():
    with pytest.raises(ValueError):
        semicircle.quantile(1.5)
    with pytest.raises(ValueError):
        semicircle.quantile(-0.01)
