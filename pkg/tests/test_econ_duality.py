import numpy as np
import pytest

from ldagg.econ.duality import (
    cd_dual_pair,
    cd_price_index,
    ces_dual_pair,
    curvature_link_ratio,
    demand_from_prices,
    duality_residual,
)
from ldagg.errors import DegenerateParameterError
from ldagg.generators import CesParams


class TestDualityResidual:
    def test_trivial(self):
        assert duality_residual([1.0, 1.0], [1.0, 1.0], 2.0, 1.0) == 0.0

    def test_sensitivity(self):
        c, pair = ces_dual_pair(CesParams(2.0, [0.5, 0.5]), [1.0, 4.0], 1.0)
        bumped = duality_residual(c, [1.0, 4.0], 1.01, pair.z_star.value)
        assert bumped == pytest.approx(0.01 * pair.z_star.value, rel=1e-9)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            duality_residual([1.0], [1.0, 2.0], 1.0, 1.0)


class TestDemand:
    def test_equal_prices(self):
        c, pair = ces_dual_pair(CesParams(2.0, [0.5, 0.5]), [1.0, 1.0], 4.0)
        np.testing.assert_allclose(c, [4.0, 4.0])
        assert pair.z_star.value == pytest.approx(2.0)
        assert pair.x_star.value == pytest.approx(4.0)

    def test_unequal_prices(self):
        c, pair = ces_dual_pair(CesParams(2.0, [0.5, 0.5]), [1.0, 4.0], 1.0)
        np.testing.assert_allclose(c, [2.56, 0.16])
        assert pair.z_star.value == pytest.approx(3.2)
        assert pair.product_residual <= 1e-12

    def test_symmetry(self):
        c = demand_from_prices(CesParams(0.7, [1.0, 1.0, 1.0]), [2.0, 2.0, 2.0], 3.0)
        assert np.ptp(c) == pytest.approx(0.0, abs=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegenerateParameterError):
            CesParams(1.0, [1.0])

    def test_random_draws(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            sigma = float(rng.choice([rng.uniform(-3.0, -0.1), rng.uniform(0.1, 0.9), rng.uniform(1.1, 4.0)]))
            m = int(rng.integers(2, 6))
            p = CesParams(sigma, rng.uniform(0.2, 3.0, m))
            prices = rng.uniform(0.2, 5.0, m)
            c_star = float(rng.uniform(0.1, 10.0))
            c, pair = ces_dual_pair(p, prices, c_star)
            total = float(np.dot(c, prices))
            assert pair.product_residual <= 1e-9 * (1.0 + total)
            assert pair.x_star.value == pytest.approx(c_star, rel=1e-10)


class TestCobbDouglasDual:
    def test_identity_holds(self):
        c, pair = cd_dual_pair([0.3, 0.7], [1.5, 0.8], 2.0)
        assert pair.product_residual <= 1e-12
        assert pair.x_star.value == pytest.approx(2.0)
        # expenditure shares equal the exponents
        np.testing.assert_allclose(c * [1.5, 0.8] / (pair.z_star.value * 2.0), [0.3, 0.7])

    def test_requires_unit_exponents(self):
        with pytest.raises(ValueError):
            cd_price_index([0.5, 0.7], [1.0, 1.0])


class TestCurvatureLink:
    @pytest.mark.parametrize("sigma", [0.7, 2.0, 3.0, -1.5])
    def test_ratio_is_constant(self, sigma):
        r = curvature_link_ratio(sigma, [0.3, 0.9, 1.7, 4.0])
        np.testing.assert_allclose(r, r[0], rtol=1e-12)
