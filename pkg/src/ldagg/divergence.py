"""Separable Bregman divergences, dual symmetry, and limit identities."""

from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateParameterError, DomainError
from .generators import (
    Generator,
    conjugate,
    make_amari,
    make_cobb_douglas,
    make_itakura_saito,
    make_price_generator,
    power_generator,
    ces_exponent,
)


def _pair(g: Generator, x, y) -> tuple:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return g.check(x), g.check(y)


def bregman(g: Generator, x, y) -> float:
    """``sum_i phi(x_i) - phi(y_i) - (x_i - y_i) phi'(y_i)``.

    Coordinate terms are summed with :func:`math.fsum`; tiny negative values
    from cancellation are reported as 0.
    """
    x, y = _pair(g, x, y)
    terms = np.atleast_1d(g.phi(x) - g.phi(y) - (x - y) * g.phi1(y))
    return max(math.fsum(terms.tolist()), 0.0)


def bregman_terms(g: Generator, x, y) -> np.ndarray:
    """Per-coordinate divergence terms (no clipping)."""
    x, y = _pair(g, x, y)
    return np.atleast_1d(g.phi(x) - g.phi(y) - (x - y) * g.phi1(y))


def dual_bregman_residual(g: Generator, x, y) -> float:
    """``|D_phi(x||y) - D_conj(phi'(y) || phi'(x))|``."""
    x, y = _pair(g, x, y)
    gs = conjugate(g)
    return abs(bregman(g, x, y) - bregman(gs, g.phi1(y), g.phi1(x)))


def kullback_leibler(x, y) -> float:
    return bregman(make_cobb_douglas(1.0), x, y)


def itakura_saito(x, y) -> float:
    return bregman(make_itakura_saito(), x, y)


def is_limit_residual(sigma: float, x, z) -> float:
    """Distance between the price-generator divergence and Itakura-Saito.

    The price generator uses the scale ``1 / ((2 - sigma)(1 - sigma))``; the
    distance tends to 0 as ``sigma -> 2``.
    """
    sigma = float(sigma)
    if sigma == 2.0:
        raise DegenerateParameterError("sigma = 2 is the limit point itself")
    g = make_price_generator(sigma)
    return abs(bregman(g, x, z) - itakura_saito(x, z))


def kl_limit_residual(sigma: float, x, z) -> float:
    """Distance between a scaled CES-generator divergence and Kullback-Leibler.

    With exponent ``k = 2 - 1/sigma`` the generator ``x**k / (k (k - 1))`` has a
    divergence that tends to KL as ``sigma -> 1``.
    """
    sigma = float(sigma)
    if sigma in (0.0, 0.5, 1.0):
        raise DegenerateParameterError(f"sigma={sigma} has no scaled CES generator")
    k = ces_exponent(sigma)
    g = power_generator(f"ces-scaled:sigma={sigma}", 1.0 / (k * (k - 1.0)), k, {"sigma": sigma})
    return abs(bregman(g, x, z) - kullback_leibler(x, z))


def amari_limit_residual(alpha: float, x, z, target: str = None) -> float:
    """Distance of the Amari divergence to KL (``alpha -> 1``) or IS (``alpha -> -1``).

    ``target`` defaults to ``"kl"`` for ``alpha >= 0`` and ``"is"`` otherwise.
    """
    alpha = float(alpha)
    if not -1.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (-1, 1), got {alpha}")
    if target is None:
        target = "kl" if alpha >= 0 else "is"
    ref = {"kl": kullback_leibler, "is": itakura_saito}[target]
    return abs(bregman(make_amari(alpha), x, z) - ref(x, z))
