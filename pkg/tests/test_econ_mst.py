import math

import numpy as np
import pytest

from ldagg.econ.mst import (
    MstParams,
    implied_lda_weights,
    mst_lda_residual,
    mst_log_partials,
    mst_value,
)
from ldagg.errors import DegenerateParameterError, DomainError


class TestValue:
    def test_example(self):
        v = mst_value(MstParams(-1, (1.0, 1.0)), [1.0, 2.0]).value
        assert v == pytest.approx((1 - math.exp(-1)) * (1 - math.exp(-2)))
        assert v == pytest.approx(0.54665, abs=1e-4)

    def test_saturation(self):
        assert mst_value(MstParams(-1, (1.0,)), [20.0]).value == pytest.approx(1.0, abs=1e-8)

    def test_vanishes_at_zero(self):
        assert mst_value(MstParams(-1, (1.0, 2.0)), [1e-9, 1.0]).value < 1e-8

    def test_factor_outside_unit_interval(self):
        with pytest.raises(DomainError):
            mst_value(MstParams(1, (1.0,)), [1.0])

    def test_param_validation(self):
        with pytest.raises(ValueError):
            MstParams(0, (1.0,))
        with pytest.raises(ValueError):
            MstParams(-1, (1.0, -2.0))

    def test_log_partials_match_finite_difference(self):
        p = MstParams(-1, (0.7, 1.3))
        x = np.array([1.1, 0.4])
        h = 1e-6
        fd = [(math.log(mst_value(p, x + h * e).value) - math.log(mst_value(p, x - h * e).value)) / (2 * h)
              for e in np.eye(2)]
        np.testing.assert_allclose(mst_log_partials(p, x), fd, rtol=1e-7)


class TestNotAnLda:
    p = MstParams(-1, (1.0, 1.0))

    def test_implied_weights(self):
        w = implied_lda_weights(self.p, [1.0, 2.0])
        np.testing.assert_allclose(w, [math.exp(-1) / (1 - math.exp(-1)), 2 * math.exp(-2) / (1 - math.exp(-2))])
        np.testing.assert_allclose(w, [0.5820, 0.3130], atol=1e-4)

    def test_residual(self):
        r = mst_lda_residual(self.p, [1.0, 2.0])
        assert r == pytest.approx(0.269, abs=1e-3)
        assert r > 1e-3

    def test_doubled_probes(self):
        assert mst_lda_residual(self.p, [2.0, 4.0]) > 1e-3

    def test_scan(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            p = MstParams(-1, tuple(rng.uniform(0.2, 3.0, 2)))
            t = rng.uniform(0.2, 3.0)
            assert mst_lda_residual(p, [t, 1.5 * t], index=1) > 1e-3

    def test_single_probe_rejected(self):
        with pytest.raises(DegenerateParameterError):
            mst_lda_residual(self.p, [1.0, 1.0])
