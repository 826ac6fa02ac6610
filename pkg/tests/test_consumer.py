import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ldagg.consumer import (
    ConsumerProgram,
    consumption_money_gap,
    oracle_solve,
    solve,
    stationarity_residuals,
)
from ldagg.errors import DomainError
from ldagg.generators import (
    POSITIVE,
    REAL,
    _build,
    make_amari,
    make_ces_generator,
    make_cobb_douglas,
    make_itakura_saito,
    make_price_generator,
    make_squared,
)

UTILITY_GENERATORS = [
    make_cobb_douglas(),
    make_cobb_douglas(3.0),
    make_itakura_saito(),
    make_ces_generator(2.0),
    make_ces_generator(0.75),
    make_ces_generator(3.0),
    make_price_generator(0.5),
    make_amari(0.5),
]
IDS = [g.name for g in UTILITY_GENERATORS]

LOG2 = np.log(2.0)


def _flat_tail_generator():
    """Curvature 1/x up to 2, then constant 1/2."""
    return _build(
        "flat-tail",
        POSITIVE,
        REAL,
        phi=lambda x: np.where(x < 2, x * np.log(np.minimum(x, 2)) - x, 2 * LOG2 - 2 + LOG2 * (x - 2) + (x - 2) ** 2 / 4),
        phi1=lambda x: np.where(x < 2, np.log(np.minimum(x, 2)), LOG2 + (x - 2) / 2),
        phi2=lambda x: np.where(x < 2, 1 / np.minimum(x, 2), 0.5),
        phi1_inv=lambda y: np.where(y < LOG2, np.exp(np.minimum(y, LOG2)), 2 + 2 * (y - LOG2)),
    )


class TestProgram:
    @pytest.mark.parametrize("gamma", [0.0, 1.0, -0.2])
    def test_gamma_open_interval(self, gamma):
        with pytest.raises(DomainError):
            ConsumerProgram(10.0, 2.0, gamma, make_cobb_douglas())

    def test_rejects_increasing_curvature(self):
        with pytest.raises(DomainError, match="non-increasing"):
            ConsumerProgram(10.0, 1.0, 0.5, make_ces_generator(-1.0))

    def test_rejects_budget(self):
        with pytest.raises(DomainError):
            ConsumerProgram(0.0, 1.0, 0.5, make_cobb_douglas())


class TestSolve:
    def test_cobb_douglas_example(self):
        prog = ConsumerProgram(10.0, 2.0, 0.3, make_cobb_douglas())
        sol = solve(prog)
        assert sol.c_star == pytest.approx(1.5, rel=1e-9)
        assert sol.m == pytest.approx(7.0, rel=1e-9)
        assert sol.budget_residual <= 1e-9 * prog.r
        assert sol.c_interval is None

    @given(
        r=st.floats(0.5, 100.0),
        p=st.floats(0.1, 10.0),
        gamma=st.floats(0.02, 0.98),
    )
    @settings(max_examples=100, deadline=None)
    def test_cobb_douglas_closed_form(self, r, p, gamma):
        sol = solve(ConsumerProgram(r, p, gamma, make_cobb_douglas()))
        assert sol.c_star == pytest.approx(gamma * r / p, rel=1e-9)
        assert sol.m == pytest.approx((1 - gamma) * r, rel=1e-9)

    @pytest.mark.parametrize("g", UTILITY_GENERATORS, ids=IDS)
    def test_symmetric_split(self, g):
        prog = ConsumerProgram(6.0, 1.5, 0.5, g)
        sol = solve(prog)
        assert sol.c_star == pytest.approx(sol.m / prog.p_star, rel=1e-9)
        res_c, res_m = stationarity_residuals(prog, sol)
        assert res_c == pytest.approx(res_m, abs=1e-12)

    def test_consumption_dominates_above_half(self):
        for gamma in (0.55, 0.7, 0.9):
            prog = ConsumerProgram(10.0, 2.0, gamma, make_cobb_douglas())
            sol = solve(prog)
            assert sol.c_star > sol.m / prog.p_star

    @pytest.mark.parametrize("g", UTILITY_GENERATORS, ids=IDS)
    def test_first_order_conditions(self, g):
        rng = np.random.default_rng(17)
        for _ in range(20):
            prog = ConsumerProgram(float(rng.uniform(1, 20)), float(rng.uniform(0.5, 4)), float(rng.uniform(0.1, 0.9)), g)
            sol = solve(prog)
            res_c, res_m = stationarity_residuals(prog, sol)
            assert abs(res_c) <= 1e-7 and abs(res_m) <= 1e-7
            assert consumption_money_gap(prog, sol) <= 1e-8
            assert sol.budget_residual <= 1e-9 * prog.r
            assert 0 < sol.c_star < prog.ceiling and 0 < sol.m < prog.r

    def test_overshoot_sign(self):
        prog = ConsumerProgram(8.0, 1.0, 0.25, make_ces_generator(2.0))
        sol = solve(prog)
        bumped = dataclasses.replace(sol, c_star=1.01 * sol.c_star)
        assert stationarity_residuals(prog, bumped)[0] > 0
        assert prog.h(bumped.c_star) < 0

    def test_flat_curvature_returns_interval(self):
        prog = ConsumerProgram(6.0, 1.0, 0.5, _flat_tail_generator())
        sol = solve(prog)
        lo, hi = sol.c_interval
        assert lo == pytest.approx(2.0, abs=1e-9)
        assert hi == pytest.approx(4.0, abs=1e-9)
        assert sol.c_star == pytest.approx(3.0)

    def test_corner_solution_rejected(self):
        with pytest.raises(DomainError, match="corner"):
            solve(ConsumerProgram(6.0, 1.0, 0.3, make_squared()))


class TestComparativeStatics:
    @pytest.mark.parametrize("g", UTILITY_GENERATORS[:4], ids=IDS[:4])
    def test_monotone(self, g):
        base = dict(r=10.0, p_star=2.0, gamma=0.4)

        def c_of(**kw):
            return solve(ConsumerProgram(utility_g=g, **{**base, **kw})).c_star

        cs = [c_of(gamma=v) for v in np.linspace(0.1, 0.9, 9)]
        assert np.all(np.diff(cs) >= 0)
        cs = [c_of(r=v) for v in np.linspace(2.0, 20.0, 9)]
        assert np.all(np.diff(cs) >= 0)
        cs = [c_of(p_star=v) for v in np.linspace(0.5, 4.0, 9)]
        assert np.all(np.diff(cs) <= 0)


class TestOracle:
    def test_cobb_douglas(self):
        sol = oracle_solve(ConsumerProgram(10.0, 2.0, 0.3, make_cobb_douglas()))
        assert sol.c_star == pytest.approx(1.5, abs=1e-4 * 5.0)

    def test_ces_power(self):
        prog = ConsumerProgram(8.0, 1.0, 0.25, make_ces_generator(2.0))
        assert oracle_solve(prog).c_star == pytest.approx(solve(prog).c_star, abs=1e-4 * prog.ceiling)

    def test_grid_minimum(self):
        with pytest.raises(ValueError):
            oracle_solve(ConsumerProgram(1.0, 1.0, 0.5, make_cobb_douglas()), grid=100)

    @pytest.mark.parametrize("g", UTILITY_GENERATORS, ids=IDS)
    def test_agreement(self, g):
        rng = np.random.default_rng(23)
        for _ in range(50):
            prog = ConsumerProgram(float(rng.uniform(1, 20)), float(rng.uniform(0.5, 4)), float(rng.uniform(0.1, 0.9)), g)
            assert oracle_solve(prog).c_star == pytest.approx(solve(prog).c_star, abs=1e-4 * prog.ceiling)
