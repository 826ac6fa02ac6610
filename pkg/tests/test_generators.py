import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ldagg.errors import DegenerateParameterError, DomainError, LimitParameterError
from ldagg.generators import (
    CATALOGUE_NAMES,
    CesParams,
    Interval,
    catalogue,
    conjugate,
    make_amari,
    make_ces_generator,
    make_cobb_douglas,
    make_itakura_saito,
    make_logistic,
    make_power_mean,
    make_price_generator,
    make_squared,
    parse_generator,
)

CATALOGUE = catalogue()


def _interior_grid(g, n=100):
    lo, hi = g.sample_range
    if lo > 0:
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


class TestClosedFormValues:
    def test_squared(self):
        g = make_squared()
        assert g.phi1_inv(g.phi1(3.0)) == pytest.approx(3.0)
        assert g.phi2(5.0) == 2.0
        assert g.phi(0.0) == 0.0

    def test_cobb_douglas(self):
        g = make_cobb_douglas(1.0)
        assert g.phi2(2.0) == pytest.approx(0.5)
        assert g.phi1_inv(0.0) == pytest.approx(1.0)
        assert make_cobb_douglas(2.5).phi1(math.e) == pytest.approx(2.5)

    def test_ces_sigma_two(self):
        g = make_ces_generator(2.0)
        # a (2 - 1/sigma)(1 - 1/sigma) x**(-1/sigma) = 1.5 * 0.5 / 2 at x = 4
        assert g.phi2(4.0) == pytest.approx(0.375)
        assert g.phi1_inv(g.phi1(9.0)) == pytest.approx(9.0)

    def test_price_generator_sigma_three_is_convex(self):
        g = make_price_generator(3.0)
        assert g.params["b"] > 0
        assert g.phi2(1.5) > 0
        assert g.phi1_inv(g.phi1(2.0)) == pytest.approx(2.0)

    def test_itakura_saito(self):
        g = make_itakura_saito()
        assert g.phi2(2.0) == pytest.approx(0.25)
        assert g.phi1(1.0) == pytest.approx(-1.0)
        assert g.phi1_inv(-1.0) == pytest.approx(1.0)

    def test_logistic(self):
        g = make_logistic()
        assert g.phi2(0.5) == pytest.approx(4.0)
        assert g.phi(0.5) == pytest.approx(-math.log(2.0))
        assert g.phi1(0.5) == pytest.approx(0.0, abs=1e-15)

    def test_amari(self):
        assert make_amari(0.0).phi2(1.0) == pytest.approx(1.0)
        g = make_amari(0.5)
        x = 4.0
        expected = 4.0 * (x - x**0.75) / (1.0 - 0.25)
        assert g.phi(x) == pytest.approx(expected)

    def test_power_mean_minus_one_is_itakura_saito(self):
        g = make_power_mean(-1.0)
        assert g.phi2(3.0) == pytest.approx(make_itakura_saito().phi2(3.0))


class TestErrors:
    @pytest.mark.parametrize("sigma", [0.0, 0.5, 1.0])
    def test_ces_degenerate(self, sigma):
        with pytest.raises(DegenerateParameterError):
            make_ces_generator(sigma)

    @pytest.mark.parametrize("sigma", [1.0, 2.0])
    def test_price_degenerate(self, sigma):
        with pytest.raises(DegenerateParameterError):
            make_price_generator(sigma)

    @pytest.mark.parametrize("alpha", [-1.0, 1.0])
    def test_amari_endpoints(self, alpha):
        with pytest.raises(LimitParameterError):
            make_amari(alpha)

    def test_power_mean_zero(self):
        with pytest.raises(LimitParameterError):
            make_power_mean(0.0)

    def test_domain_error_names_value(self):
        with pytest.raises(DomainError, match="-2.0"):
            make_cobb_douglas().phi(-2.0)

    def test_boundary_is_not_clamped(self):
        with pytest.raises(DomainError):
            make_logistic().phi1(1.0)
        with pytest.raises(DomainError):
            make_itakura_saito().phi(0.0)

    def test_conjugate_outside_image(self):
        with pytest.raises(DomainError):
            conjugate(make_itakura_saito()).phi(1.0)

    def test_ces_params_validation(self):
        with pytest.raises(DegenerateParameterError):
            CesParams(1.0, [1.0, 1.0])
        with pytest.raises(ValueError):
            CesParams(2.0, [1.0, -1.0])


class TestCatalogueInvariants:
    @pytest.mark.parametrize("g", CATALOGUE, ids=CATALOGUE_NAMES)
    def test_strict_convexity(self, g):
        assert np.all(g.phi2(_interior_grid(g)) > 0)

    @pytest.mark.parametrize("g", CATALOGUE, ids=CATALOGUE_NAMES)
    def test_derivatives_match_finite_differences(self, g):
        x = _interior_grid(g, 25)
        h = 1e-5 * np.maximum(1.0, np.abs(x))
        fd1 = (g.phi(x + h) - g.phi(x - h)) / (2 * h)
        fd2 = (g.phi1(x + h) - g.phi1(x - h)) / (2 * h)
        np.testing.assert_allclose(fd1, g.phi1(x), rtol=1e-6, atol=1e-9)
        np.testing.assert_allclose(fd2, g.phi2(x), rtol=1e-6)

    @pytest.mark.parametrize("g", CATALOGUE, ids=CATALOGUE_NAMES)
    def test_inverse_gradient(self, g):
        x = _interior_grid(g)
        np.testing.assert_allclose(g.phi1_inv(g.phi1(x)), x, rtol=1e-10)

    @pytest.mark.parametrize("g", CATALOGUE, ids=CATALOGUE_NAMES)
    def test_conjugate_derivative_is_inverse_gradient(self, g):
        gs = conjugate(g)
        y = g.phi1(_interior_grid(g, 25))
        h = 1e-5 * np.maximum(1.0, np.abs(y))
        fd = (gs.phi(y + h) - gs.phi(y - h)) / (2 * h)
        np.testing.assert_allclose(fd, g.phi1_inv(y), rtol=1e-6)

    @pytest.mark.parametrize("g", CATALOGUE, ids=CATALOGUE_NAMES)
    def test_biconjugate_recovers_generator(self, g):
        x = _interior_grid(g, 20)
        gss = conjugate(conjugate(g))
        np.testing.assert_allclose(gss.phi(x), g.phi(x), rtol=1e-9, atol=1e-9)


class TestConjugateValues:
    def test_cobb_douglas_conjugate_is_exponential(self):
        assert conjugate(make_cobb_douglas()).phi(1.0) == pytest.approx(math.e)

    def test_squared_conjugate(self):
        assert conjugate(make_squared()).phi(4.0) == pytest.approx(4.0)

    def test_formula_matches_closed_form(self):
        g = make_ces_generator(3.0)
        stripped = type(g)(**{**g.__dict__, "conjugate_phi": None})
        y = g.phi1(np.array([0.5, 1.0, 2.0]))
        np.testing.assert_allclose(conjugate(stripped).phi(y), conjugate(g).phi(y), rtol=1e-12)


class TestGrammar:
    @pytest.mark.parametrize("name", CATALOGUE_NAMES)
    def test_round_trip_names(self, name):
        assert parse_generator(name).name == name

    def test_price_scale_parameter(self):
        g = parse_generator("price:sigma=3,b=0.25")
        assert g.params["b"] == 0.25

    @pytest.mark.parametrize("text", ["nope", "ces", "ces:sigma=x", "cd:q=1", "price:b=1"])
    def test_rejects_bad_names(self, text):
        with pytest.raises(ValueError):
            parse_generator(text)


class TestScaling:
    @given(c=st.floats(0.1, 10.0), d=st.floats(-5.0, 5.0), x=st.floats(0.3, 3.0))
    @settings(max_examples=50, deadline=None)
    def test_scaled_curvature(self, c, d, x):
        g = make_ces_generator(2.0)
        s = g.scaled(c, d)
        assert s.phi2(x) == pytest.approx(c * g.phi2(x), rel=1e-12)
        assert s.phi1_inv(s.phi1(x)) == pytest.approx(x, rel=1e-10)

    def test_scaled_rejects_nonpositive(self):
        with pytest.raises(DegenerateParameterError):
            make_squared().scaled(0.0)


class TestInterval:
    def test_open_ends(self):
        iv = Interval(0.0, 1.0)
        np.testing.assert_array_equal(iv.contains(np.array([0.0, 0.5, 1.0])), [False, True, False])

    def test_shift_and_scale(self):
        iv = Interval(0.0, 1.0).shifted(2.0).scaled(3.0)
        assert (iv.lo, iv.hi) == (6.0, 9.0)
