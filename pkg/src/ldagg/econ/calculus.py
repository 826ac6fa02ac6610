"""Elasticities, marginal rates of substitution and homogeneity of aggregators.

Closed forms hold for any LDA ``x_star`` with generator ``phi`` and weights
``gamma`` (total ``Gamma``); each has a finite-difference counterpart that
only evaluates the aggregator.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple, Sequence, Union

import numpy as np

from ..aggregator import WeightedData, lda_mean
from ..generators import Generator

Aggregate = Callable[[np.ndarray], float]


def _as_function(g: Union[Generator, Aggregate], weights=None) -> Aggregate:
    if isinstance(g, Generator):
        return lambda v: lda_mean(g, WeightedData(v, weights)).value
    return lambda v: float(g(np.asarray(v, dtype=float)))


def _step(x: float) -> float:
    return 1e-6 * max(1.0, abs(x))


def partial(f: Aggregate, x, i: int, h: float = None) -> float:
    """Central difference ``d f / d x_i``."""
    x = np.asarray(x, dtype=float)
    h = _step(x[i]) if h is None else h
    up, dn = x.copy(), x.copy()
    up[i] += h
    dn[i] -= h
    return (f(up) - f(dn)) / (2.0 * h)


# --- elasticities -------------------------------------------------------------------


def elasticity(g: Generator, d: WeightedData, i: int) -> float:
    """``gamma_i x_i phi''(x_i) / (x_star phi''(x_star / Gamma))``."""
    x_star = lda_mean(g, d).value
    gam = d.gamma_sum
    xi = d.values[i]
    return float(d.weights[i] * xi * g.phi2(xi) / (x_star * g.phi2(x_star / gam)))


def elasticities(g: Generator, d: WeightedData) -> np.ndarray:
    x_star = lda_mean(g, d).value
    inner = g.phi2(x_star / d.gamma_sum)
    return d.weights * d.values * np.atleast_1d(g.phi2(d.values)) / (x_star * inner)


def elasticity_fd(f: Union[Generator, Aggregate], d: Union[WeightedData, Sequence], i: int) -> float:
    """``x_i / x_star * d x_star / d x_i`` by central differences."""
    if isinstance(d, WeightedData):
        x, fn = d.values, _as_function(f, d.weights)
    else:
        x, fn = np.asarray(d, dtype=float), _as_function(f)
    return float(x[i] * partial(fn, x, i) / fn(x))


def elasticity_sum(g: Generator, d: WeightedData) -> float:
    return math.fsum(elasticities(g, d).tolist())


def _random_data(g: Generator, rng: np.random.Generator) -> WeightedData:
    m = int(rng.integers(2, 6))
    return WeightedData(g.sample(rng, m), rng.uniform(0.2, 2.0, m))


def max_elasticity_sum_gap(g: Generator, trials: int, rng: np.random.Generator) -> float:
    return max(abs(elasticity_sum(g, _random_data(g, rng)) - 1.0) for _ in range(trials))


def elasticity_sum_diagnostic(g: Generator, trials: int = 100, seed: int = 0,
                              tol: float = 1e-8) -> str:
    """``"always_one"`` if the elasticities sum to 1 on every random instance."""
    if trials < 100:
        raise ValueError("elasticity_sum_diagnostic needs at least 100 trials")
    gap = max_elasticity_sum_gap(g, trials, np.random.default_rng(seed))
    return "always_one" if gap <= tol else "not_one"


# --- substitution -------------------------------------------------------------------


def mrs(g: Generator, d: WeightedData, i: int, j: int) -> float:
    """Marginal rate of substitution ``gamma_i phi''(x_i) / (gamma_j phi''(x_j))``."""
    if i == j:
        raise ValueError("mrs needs two distinct goods")
    x, w = d.values, d.weights
    return float(w[i] * g.phi2(x[i]) / (w[j] * g.phi2(x[j])))


def mrs_fd(f: Union[Generator, Aggregate], d: Union[WeightedData, Sequence], i: int, j: int) -> float:
    """Ratio of finite-difference partials of the aggregator."""
    if i == j:
        raise ValueError("mrs needs two distinct goods")
    if isinstance(d, WeightedData):
        x, fn = d.values, _as_function(f, d.weights)
    else:
        x, fn = np.asarray(d, dtype=float), _as_function(f)
    return partial(fn, x, i) / partial(fn, x, j)


def _log_slope(s_of: Callable[[np.ndarray], float], x: np.ndarray, j: int, h: float) -> float:
    """``d log S / d log x_j`` with ``x_i`` held fixed."""
    up, dn = x.copy(), x.copy()
    up[j] *= math.exp(h)
    dn[j] *= math.exp(-h)
    slope = (math.log(s_of(up)) - math.log(s_of(dn))) / (2.0 * h)
    if slope == 0.0:
        raise FloatingPointError("marginal rate did not move; step underflow")
    return slope


def substitution_elasticity(g: Generator, d: WeightedData, i: int, j: int, h: float = 1e-5) -> float:
    """``d log(x_j / x_i) / d log S`` moving ``x_j`` only, ``S`` from :func:`mrs`."""
    w = d.weights
    return 1.0 / _log_slope(lambda v: mrs(g, WeightedData(v, w), i, j), d.values.copy(), j, h)


def substitution_elasticity_fn(f: Aggregate, x, i: int, j: int, h: float = 1e-4) -> float:
    """Same quantity for an arbitrary aggregator, ``S`` from finite-difference partials."""
    x = np.asarray(x, dtype=float)
    return 1.0 / _log_slope(lambda v: mrs_fd(f, v, i, j), x.copy(), j, h)


def unit_substitution_weights(g: Generator, x) -> np.ndarray:
    """Weights forcing unit substitution between every pair of goods.

    Solves ``gamma_i x_i phi''(x_i) = gamma_j x_j phi''(x_j)`` for all pairs in
    the least-squares sense with ``sum gamma = 1``.
    """
    x = np.asarray(x, dtype=float)
    m = x.size
    t = np.atleast_1d(x * g.phi2(x))
    rows = []
    for a in range(m):
        for b in range(a + 1, m):
            r = np.zeros(m)
            r[a], r[b] = t[a], -t[b]
            rows.append(r)
    rows.append(np.ones(m))
    rhs = np.zeros(len(rows))
    rhs[-1] = 1.0
    sol, *_ = np.linalg.lstsq(np.vstack(rows), rhs, rcond=None)
    return sol


# --- homogeneity ----------------------------------------------------------------------


class HomogeneityResult(NamedTuple):
    degree: float
    is_homogeneous: bool
    estimates: tuple


def homogeneity_probe(f: Union[Generator, Aggregate], d: Union[WeightedData, Sequence],
                      lambdas: Sequence[float] = (0.5, 2.0, 3.0), tol: float = 1e-7) -> HomogeneityResult:
    """Fit ``log(f(lam x) / f(x)) / log(lam)`` for each ``lam``.

    ``f`` is a generator (aggregated with ``d``'s weights) or any callable on
    the value vector.  Homogeneous iff all estimates agree within ``tol``.
    """
    if isinstance(d, WeightedData):
        x, fn = d.values, _as_function(f, d.weights)
    else:
        x, fn = np.asarray(d, dtype=float), _as_function(f)
    base = fn(x)
    est = tuple(math.log(fn(lam * x) / base) / math.log(lam) for lam in lambdas)
    spread = max(est) - min(est)
    return HomogeneityResult(math.fsum(est) / len(est), spread <= tol, est)


def curvature_exponent(g: Generator, xs) -> np.ndarray:
    """Log-log slope ``x phi'''(x) / phi''(x)`` of the generator's curvature.

    Constant for power generators (``-1/sigma`` for CES) and exactly ``-1``
    for Cobb-Douglas.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if g.phi3 is not None:
        third = g.phi3(xs)
    else:
        h = 1e-5 * np.maximum(1.0, np.abs(xs))
        third = (g.phi2(xs + h) - g.phi2(xs - h)) / (2.0 * h)
    return xs * third / g.phi2(xs)
