"""Quantity / price index pairs tied by ``sum_i x_i z_i = x_star * z_star``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..aggregator import AggregateValue, ces, cobb_douglas, price_index, _positive
from ..generators import CesParams, make_ces_generator, make_price_generator


@dataclass(frozen=True)
class DualPair:
    x_star: AggregateValue
    z_star: AggregateValue
    product_residual: float


def duality_residual(x, z, x_star: float, z_star: float) -> float:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if x.shape != z.shape:
        raise ValueError(f"length mismatch: {x.size} quantities, {z.size} prices")
    return abs(math.fsum((x * z).tolist()) - float(x_star) * float(z_star))


def demand_from_prices(p: CesParams, prices, c_star: float) -> np.ndarray:
    """CES demands ``c_i = c_star (beta_i p_star / p_i)**sigma`` at index level ``c_star``.

    The demands aggregate back to ``c_star`` under :func:`ces` and satisfy the
    product identity with ``p_star = price_index(p, prices)``.
    """
    q = _positive(prices, "prices")
    if not c_star > 0:
        raise ValueError(f"c_star must be positive, got {c_star}")
    p_star = price_index(p, q).value
    return c_star * (p.beta * p_star / q) ** p.sigma


def ces_dual_pair(p: CesParams, prices, c_star: float) -> tuple:
    """Demands and the resulting :class:`DualPair` for a CES consumption index."""
    c = demand_from_prices(p, prices, c_star)
    p_star = price_index(p, prices)
    pair = DualPair(ces(p, c), p_star, duality_residual(c, prices, c_star, p_star.value))
    return c, pair


def cd_price_index(betas, prices) -> AggregateValue:
    """Dual of a Cobb-Douglas index with exponents summing to one:
    ``prod_i (p_i / beta_i)**beta_i``."""
    q = _positive(prices, "prices")
    b = np.atleast_1d(np.asarray(betas, dtype=float))
    if not math.isclose(math.fsum(b.tolist()), 1.0, rel_tol=1e-12):
        raise ValueError("Cobb-Douglas price index needs exponents summing to 1")
    return AggregateValue(math.exp(math.fsum((b * np.log(q / b)).tolist())), "CobbDouglas")


def cd_demand_from_prices(betas, prices, c_star: float) -> np.ndarray:
    """Cobb-Douglas demands: expenditure share ``beta_i`` on each good."""
    q = _positive(prices, "prices")
    b = np.atleast_1d(np.asarray(betas, dtype=float))
    p_star = cd_price_index(b, q).value
    return b * p_star * c_star / q


def cd_dual_pair(betas, prices, c_star: float) -> tuple:
    c = cd_demand_from_prices(betas, prices, c_star)
    p_star = cd_price_index(betas, prices)
    pair = DualPair(cobb_douglas(betas, c), p_star, duality_residual(c, prices, c_star, p_star.value))
    return c, pair


def curvature_link_ratio(sigma: float, ys) -> np.ndarray:
    """``phi2_price(y) / inv(phi2_ces)(y)`` on sample points ``ys``.

    For a dual CES pair the price generator's curvature is a constant multiple
    of the functional inverse of the quantity generator's curvature, so the
    returned ratios are all equal.
    """
    g = make_ces_generator(sigma)
    gp = make_price_generator(sigma) if sigma != 2.0 else None
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    # phi2_ces(x) = C x**(-1/sigma)  =>  inverse(y) = (y / C)**(-sigma)
    c = g.phi2(1.0)
    inverse = (ys / c) ** (-sigma)
    curv = gp.phi2(ys) if gp is not None else 1.0 / ys**2
    return curv / inverse
