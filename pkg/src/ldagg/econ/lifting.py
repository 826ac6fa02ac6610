"""Change of variables between a hidden concave LDA and a CES consumption index.

A hidden consumption ``c~_i`` aggregated by some generator is mapped to a CES
consumption through ``c_i = (phi'_CES)^{-1}(phi'_hidden(c~_i))``.  Gradients
then agree coordinate-wise, so the two LDAs commute with the map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..aggregator import WeightedData, _positive, lda_mean
from ..errors import DomainError
from ..generators import CesParams, Generator, make_ces_generator


def _image_check(g: Generator, y: np.ndarray, what: str) -> None:
    bad = ~g.image.contains(y)
    if np.any(bad):
        raise DomainError(
            f"{what} gradient value {float(y[bad][0])!r} lies outside the image {g.image} of {g.name}"
        )


def lift_consumptions(hidden_g: Generator, ces_p: CesParams, hidden_values) -> np.ndarray:
    """Map hidden consumptions to CES consumptions with matching gradients."""
    target = make_ces_generator(ces_p)
    c_tilde = hidden_g.check(_positive(hidden_values, "hidden values"))
    grad = np.atleast_1d(hidden_g.phi1(c_tilde))
    _image_check(target, grad, "hidden")
    return np.atleast_1d(target.phi1_inv(grad))


def unlift_consumptions(hidden_g: Generator, ces_p: CesParams, values) -> np.ndarray:
    """Inverse of :func:`lift_consumptions`."""
    source = make_ces_generator(ces_p)
    c = source.check(_positive(values, "values"))
    grad = np.atleast_1d(source.phi1(c))
    _image_check(hidden_g, grad, "CES")
    return np.atleast_1d(hidden_g.phi1_inv(grad))


def reconstruct_hidden_index(hidden_g: Generator, ces_p: CesParams, lifted, weights) -> float:
    """Recover the hidden index from the CES index of lifted consumptions.

    With ``Gamma = sum(weights)`` and ``c_star`` the CES-generator LDA of the
    lifted values, returns ``Gamma * (phi'_hidden)^{-1}(phi'_CES(c_star / Gamma))``.
    """
    d = WeightedData(lifted, weights)
    gam = d.gamma_sum
    c_star = lda_mean(make_ces_generator(ces_p), d).value
    inner = unlift_consumptions(hidden_g, ces_p, [c_star / gam])[0]
    return float(gam * inner)


def lifting_residual(hidden_g: Generator, ces_p: CesParams, hidden_values, weights) -> float:
    """Relative gap between the reconstructed and the direct hidden index."""
    lifted = lift_consumptions(hidden_g, ces_p, hidden_values)
    direct = lda_mean(hidden_g, WeightedData(hidden_values, weights)).value
    return abs(reconstruct_hidden_index(hidden_g, ces_p, lifted, weights) - direct) / abs(direct)


@dataclass(frozen=True)
class PriceCurve:
    """Sampled relative price ``p_i / p_star`` against hidden consumption."""

    consumption: np.ndarray
    relative_price: np.ndarray
    cbar_star: float

    def rows(self) -> list:
        return list(zip(self.consumption.tolist(), self.relative_price.tolist()))


def price_consumption_curve(hidden_g: Generator, cbar_star: float, samples: int = 101,
                            span: float = 4.0) -> PriceCurve:
    """``phi''(c~) / phi''(cbar_star)`` on a log grid over ``[cbar/span, cbar*span]``.

    The crossing point ``c~ = cbar_star`` is always part of the grid, where the
    ratio is exactly 1.
    """
    if not cbar_star > 0:
        raise DomainError(f"cbar_star must be positive, got {cbar_star}")
    if samples < 3:
        raise ValueError("price_consumption_curve needs at least 3 samples")
    grid = np.geomspace(cbar_star / span, cbar_star * span, samples)
    grid = np.unique(np.append(grid, cbar_star))
    grid = hidden_g.check(grid)
    ratio = np.atleast_1d(hidden_g.phi2(grid)) / float(hidden_g.phi2(cbar_star))
    ratio[grid == cbar_star] = 1.0
    return PriceCurve(grid, ratio, float(cbar_star))
