"""Low-distortion aggregators and the classical economic closed forms.

The general aggregator for generator ``phi`` and positive weights ``gamma``::

    mu = Gamma * inv_phi1( sum_i (gamma_i / Gamma) phi1(x_i) ),  Gamma = sum_i gamma_i

With the squared generator this is the weighted *sum*; pass ``normalize=True``
(or weights summing to one) to get a mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateParameterError, DomainError
from .generators import CesParams, Generator, conjugate, make_itakura_saito, make_price_generator, make_ces_generator
from .divergence import bregman_terms
from .search import golden_section

FAMILIES = ("LDA", "CES", "NormalizedCES", "CobbDouglas", "Leontief", "MST")


@dataclass(frozen=True, eq=False)
class WeightedData:
    """Positive values ``x_i`` with positive weights ``gamma_i``."""

    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.values, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if x.ndim != 1 or x.size == 0:
            raise ValueError("need a non-empty 1-d sequence of values")
        if w.shape != x.shape:
            raise ValueError(f"{w.size} weights for {x.size} values")
        if not np.all(np.isfinite(x)) or np.any(x <= 0):
            bad = x[~(np.isfinite(x) & (x > 0))][0]
            raise DomainError(f"values must be positive and finite, got {bad!r}")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ValueError(f"weights must be positive, got {w.tolist()}")
        x.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "values", x)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, values) -> "WeightedData":
        x = np.atleast_1d(np.asarray(values, dtype=float))
        return cls(x, np.full(x.shape, 1.0 / x.size))

    @property
    def gamma_sum(self) -> float:
        return math.fsum(self.weights.tolist())

    @property
    def m(self) -> int:
        return int(self.values.size)

    def normalized(self) -> "WeightedData":
        return WeightedData(self.values, self.weights / self.gamma_sum)

    def with_values(self, values) -> "WeightedData":
        return WeightedData(values, self.weights)


@dataclass(frozen=True)
class AggregateValue:
    value: float
    family: str

    def __float__(self) -> float:
        return self.value


def quasi_mean(g: Generator, values, weights) -> float:
    """``inv_phi1(sum_i w_i phi1(x_i))`` for weights summing to one.

    Works on any part of the generator's domain (including conjugate domains
    with negative values), unlike :class:`WeightedData`.
    """
    x = g.check(np.atleast_1d(np.asarray(values, dtype=float)))
    w = np.asarray(weights, dtype=float)
    grad = math.fsum((w * np.atleast_1d(g.phi1(x))).tolist())
    return float(g.phi1_inv(grad))


def lda_mean(g: Generator, d: WeightedData, normalize: bool = False) -> AggregateValue:
    gamma = d.gamma_sum
    inner = quasi_mean(g, d.values, d.weights / gamma)
    return AggregateValue(inner if normalize else gamma * inner, "LDA")


def _positive(x, what="inputs") -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(x > 0)) or not np.all(np.isfinite(x)):
        bad = x[~((x > 0) & np.isfinite(x))][0]
        raise DomainError(f"{what} must be positive, got {bad!r}")
    return x


def _check_len(p: CesParams, x: np.ndarray) -> None:
    if len(p) != x.size:
        raise ValueError(f"{len(p)} weights for {x.size} values")


def ces(p: CesParams, x) -> AggregateValue:
    """``(sum_i beta_i x_i**rho)**(1/rho)`` with ``rho = (sigma - 1)/sigma``."""
    x = _positive(x)
    _check_len(p, x)
    rho = p.rho
    s = math.fsum((p.beta * x**rho).tolist())
    return AggregateValue(s ** (1.0 / rho), "CES")


def ces_lda_weights(p: CesParams) -> np.ndarray:
    """LDA weights ``beta_i * B**(1/(sigma - 1))`` reproducing :func:`ces`."""
    return p.beta * p.beta_sum ** (1.0 / (p.sigma - 1.0))


def ces_generator_for(sigma: float) -> Generator:
    """CES generator; at ``sigma = 1/2`` the power form has a zero exponent and
    the Itakura-Saito generator (same curvature up to scale) is used instead."""
    return make_itakura_saito() if sigma == 0.5 else make_ces_generator(sigma)


def ces_as_lda_residual(p: CesParams, x) -> float:
    x = _positive(x)
    d = WeightedData(x, ces_lda_weights(p))
    return abs(ces(p, x).value - lda_mean(ces_generator_for(p.sigma), d).value)


def normalized_ces(p: CesParams, x) -> AggregateValue:
    """CES rescaled by ``B**(1/(1 - sigma))`` so its LDA weights equal ``beta``."""
    v = ces(p, x).value * p.beta_sum ** (1.0 / (1.0 - p.sigma))
    return AggregateValue(v, "NormalizedCES")


def cobb_douglas(betas, x) -> AggregateValue:
    """``prod_i x_i**beta_i`` (evaluated in log space); zero exponents allowed."""
    x = _positive(x)
    b = np.atleast_1d(np.asarray(betas, dtype=float))
    if b.shape != x.shape:
        raise ValueError(f"{b.size} exponents for {x.size} values")
    if np.any(b < 0):
        raise ValueError("Cobb-Douglas exponents must be non-negative")
    return AggregateValue(math.exp(math.fsum((b * np.log(x)).tolist())), "CobbDouglas")


def leontief(betas, x) -> AggregateValue:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    b = np.atleast_1d(np.asarray(betas, dtype=float))
    if b.shape != x.shape:
        raise ValueError(f"{b.size} weights for {x.size} values")
    return AggregateValue(float(np.min(b * x)), "Leontief")


def price_index(p: CesParams, prices) -> AggregateValue:
    """Dual CES price index ``(sum_i beta_i**sigma p_i**(1 - sigma))**(1/(1 - sigma))``."""
    q = _positive(prices, "prices")
    _check_len(p, q)
    s = p.sigma
    total = math.fsum((p.beta**s * q ** (1.0 - s)).tolist())
    return AggregateValue(total ** (1.0 / (1.0 - s)), "CES")


def price_lda_weights(p: CesParams) -> np.ndarray:
    """LDA weights ``delta_i Delta**(sigma/(1 - sigma))`` with ``delta_i = beta_i**sigma``."""
    delta = p.beta**p.sigma
    return delta * math.fsum(delta.tolist()) ** (p.sigma / (1.0 - p.sigma))


def price_generator_for(sigma: float) -> Generator:
    """Price-index generator; at ``sigma = 2`` the power form degenerates and the
    Itakura-Saito generator (its limit) is used instead."""
    return make_itakura_saito() if sigma == 2.0 else make_price_generator(sigma)


def price_as_lda_residual(p: CesParams, prices) -> float:
    q = _positive(prices, "prices")
    d = WeightedData(q, price_lda_weights(p))
    return abs(price_index(p, q).value - lda_mean(price_generator_for(p.sigma), d).value)


# --- brute-force oracles -------------------------------------------------------


def _oracle(g: Generator, d: WeightedData, first: bool, tol: float) -> float:
    w = d.weights / d.gamma_sum
    x = g.check(d.values)
    lo, hi = float(np.min(x)), float(np.max(x))
    if hi - lo <= tol:
        return 0.5 * (lo + hi)

    if first:
        def objective(y):
            terms = bregman_terms(g, np.full_like(x, y), x)
            return math.fsum((w * terms).tolist())
    else:
        def objective(y):
            terms = bregman_terms(g, x, np.full_like(x, y))
            return math.fsum((w * terms).tolist())

    y = golden_section(objective, lo, hi, tol=tol)
    assert lo <= y <= hi, "golden-section left its bracket"
    return y


def oracle_argmin_first(g: Generator, d: WeightedData, tol: float = 1e-8) -> float:
    """Minimise ``sum_i gamma_i D(y || x_i)`` over ``y`` by golden-section search.

    Runs on normalised weights over ``[min x, max x]`` and rescales by ``Gamma``,
    so the result is directly comparable with :func:`lda_mean`.
    """
    return d.gamma_sum * _oracle(g, d, True, tol)


def oracle_argmin_second(g: Generator, d: WeightedData, tol: float = 1e-8) -> float:
    """Minimise ``sum_i gamma_i D(x_i || y)`` (normalised weights).

    The minimiser is the weighted arithmetic mean for every generator.
    """
    return _oracle(g, d, False, tol)


# --- regime probe ----------------------------------------------------------------

_MIRROR = {"concave": "convex", "convex": "concave", "affine": "affine", "neither": "neither"}


@dataclass(frozen=True)
class ConcavityReport:
    verdict: str
    dual_verdict: str
    mirrored: bool
    bound_holds: bool
    dual_bound_holds: bool
    trials: int


def _classify(g: Generator, rng: np.random.Generator, trials: int, slack: float):
    concave = convex = True
    below_sum = above_sum = True
    for _ in range(trials):
        m = int(rng.integers(2, 6))
        w = rng.dirichlet(np.ones(m))
        x, y = g.sample(rng, m), g.sample(rng, m)
        fx, fy = quasi_mean(g, x, w), quasi_mean(g, y, w)
        fmid = quasi_mean(g, 0.5 * (x + y), w)
        tol = slack * (1.0 + abs(fx) + abs(fy))
        chord = 0.5 * (fx + fy)
        concave &= fmid >= chord - tol
        convex &= fmid <= chord + tol
        for v, fv in ((x, fx), (y, fy)):
            s = float(np.dot(w, v))
            below_sum &= fv <= s + slack * (1.0 + abs(s))
            above_sum &= fv >= s - slack * (1.0 + abs(s))
    if concave and convex:
        verdict, bound = "affine", below_sum and above_sum
    elif concave:
        verdict, bound = "concave", below_sum
    elif convex:
        verdict, bound = "convex", above_sum
    else:
        verdict, bound = "neither", True
    return verdict, bound


def concavity_probe(g: Generator, trials: int = 200, seed: int = 0,
                    slack: float = 1e-9) -> ConcavityReport:
    """Classify the aggregator (unit total weight) of ``g`` and of its conjugate.

    Midpoint tests on random pairs of inputs decide concave / convex / affine /
    neither.  The report also says whether the two verdicts mirror each other
    and whether the weighted-sum bound for the detected regime held on every
    sample (concave below the sum, convex above it).
    """
    if trials < 100:
        raise ValueError("concavity_probe needs at least 100 trials")
    rng = np.random.default_rng(seed)
    verdict, bound = _classify(g, rng, trials, slack)
    dual_verdict, dual_bound = _classify(conjugate(g), rng, trials, slack)
    return ConcavityReport(
        verdict=verdict,
        dual_verdict=dual_verdict,
        mirrored=_MIRROR[verdict] == dual_verdict,
        bound_holds=bound,
        dual_bound_holds=dual_bound,
        trials=trials,
    )


# --- limit families ---------------------------------------------------------------


def leontief_limit_gaps(betas, x, sigmas: Sequence[float] = (0.1, 0.05, 0.01)) -> list:
    """``|CES_sigma - min_i beta_i x_i|`` along ``sigma -> 0+``.

    The CES weights are ``beta_i**rho`` so that the CES is
    ``(sum (beta_i x_i)**rho)**(1/rho)``, which tends to the weighted minimum.
    """
    b = np.atleast_1d(np.asarray(betas, dtype=float))
    target = leontief(b, x).value
    gaps = []
    for s in sigmas:
        if not s > 0:
            raise DegenerateParameterError("Leontief limit needs sigma > 0")
        rho = (s - 1.0) / s
        gaps.append(abs(ces(CesParams(s, b**rho), x).value - target))
    return gaps


def cobb_douglas_limit_gaps(betas, x, sigmas: Sequence[float] = (1.5, 1.1, 1.01, 1.001)) -> list:
    """``|CES_sigma - Cobb-Douglas|`` along ``sigma -> 1`` with exponents normalised to sum 1."""
    b = np.atleast_1d(np.asarray(betas, dtype=float))
    b = b / math.fsum(b.tolist())
    target = cobb_douglas(b, x).value
    return [abs(ces(CesParams(s, b), x).value - target) for s in sigmas]
