"""Product-of-saturations aggregators ``prod_i (1 - exp(theta gamma_i x_i))``.

These are the classic diminishing-returns yield laws.  They are not LDAs: the
only generator compatible with their partial derivatives would need weights
that change with the inputs, which :func:`mst_lda_residual` measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..aggregator import AggregateValue
from ..errors import DegenerateParameterError, DomainError


@dataclass(frozen=True)
class MstParams:
    theta: int
    gammas: tuple

    def __post_init__(self):
        if self.theta not in (-1, 1):
            raise ValueError(f"theta must be -1 or +1, got {self.theta}")
        g = tuple(float(v) for v in np.atleast_1d(self.gammas))
        if not g or any(not v > 0 for v in g):
            raise ValueError("MST rates must be positive")
        object.__setattr__(self, "gammas", g)

    @property
    def gamma(self) -> np.ndarray:
        return np.asarray(self.gammas)

    def __len__(self) -> int:
        return len(self.gammas)


def mst_factors(p: MstParams, x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.size != len(p):
        raise ValueError(f"{len(p)} rates for {x.size} values")
    f = -np.expm1(p.theta * p.gamma * x)
    bad = ~((f > 0) & (f < 1))
    if np.any(bad):
        i = int(np.argmax(bad))
        raise DomainError(f"MST factor {i} is {f[i]!r}, outside (0, 1)")
    return f


def mst_value(p: MstParams, x) -> AggregateValue:
    """Product of the saturation factors (summed in log space)."""
    f = mst_factors(p, x)
    return AggregateValue(math.exp(math.fsum(np.log(f).tolist())), "MST")


def mst_function(p: MstParams):
    """The aggregator as a plain callable on value vectors."""
    return lambda x: mst_value(p, x).value


def mst_log_partials(p: MstParams, x) -> np.ndarray:
    """``d log x_star / d x_i = -theta gamma_i e^{theta gamma_i x_i} / (1 - e^{theta gamma_i x_i})``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    f = mst_factors(p, x)
    e = np.exp(p.theta * p.gamma * x)
    return -p.theta * p.gamma * e / f


def implied_lda_weights(p: MstParams, t, index: int = 0) -> np.ndarray:
    """Weight a Cobb-Douglas generator would need at ``x_index = t``.

    Solves ``-theta gamma t e^{theta gamma t} = w (1 - e^{theta gamma t})``
    for ``w`` at each probe value ``t``.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    g = p.gamma[index]
    e = np.exp(p.theta * g * t)
    denom = -np.expm1(p.theta * g * t)
    if np.any(~(denom > 0)):
        raise DomainError("probe values leave the MST factor outside (0, 1)")
    return -p.theta * g * t * e / denom


def mst_lda_residual(p: MstParams, probes: Sequence[float], index: int = 0) -> float:
    """Spread of the implied weights across distinct probe values of one input.

    An LDA would need a single constant weight, so a positive spread shows the
    aggregator is not one.  One probe always fits, hence at least two distinct
    probes are required.
    """
    t = np.unique(np.atleast_1d(np.asarray(probes, dtype=float)))
    if t.size < 2:
        raise DegenerateParameterError("mst_lda_residual needs at least two distinct probes")
    w = implied_lda_weights(p, t, index)
    return float(w.max() - w.min())
