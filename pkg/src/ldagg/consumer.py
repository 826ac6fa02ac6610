"""Consumer's split of a budget between consumption and money.

The consumer spends ``p_star * c`` on a consumption index ``c`` and keeps
``m = r - p_star * c`` as money.  Utility is a two-point LDA with weights
``gamma`` and ``1 - gamma``:

    u = (phi')^{-1}(gamma phi'(c) + (1 - gamma) phi'(m / p_star)).

For a generator whose curvature ``phi''`` decreases, the optimum is the root of

    h(c) = phi''(c) - ((1 - gamma) / gamma) phi''(R - c),   R = r / p_star,

which is found by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .aggregator import quasi_mean
from .errors import DomainError
from .generators import Generator
from .search import bisect_boundary

_EPS = 1e-9


@dataclass(frozen=True)
class ConsumerProgram:
    r: float
    p_star: float
    gamma: float
    utility_g: Generator

    def __post_init__(self):
        if not (self.r > 0 and math.isfinite(self.r)):
            raise DomainError(f"budget r must be positive, got {self.r}")
        if not (self.p_star > 0 and math.isfinite(self.p_star)):
            raise DomainError(f"price index p_star must be positive, got {self.p_star}")
        if not 0.0 < self.gamma < 1.0:
            raise DomainError(f"gamma must lie in (0, 1), got {self.gamma}")
        grid = np.linspace(self.eps, self.ceiling - self.eps, 257)
        curv = np.atleast_1d(self.utility_g.phi2(self.utility_g.check(grid)))
        if np.any(~(curv > 0)):
            raise DomainError(f"{self.utility_g.name}: phi'' must be positive on (0, r/p_star)")
        if np.any(np.diff(curv) > 1e-12 * np.abs(curv[:-1])):
            raise DomainError(f"{self.utility_g.name}: phi'' must be non-increasing on (0, r/p_star)")

    @property
    def ceiling(self) -> float:
        """``r / p_star``: consumption affordable with the whole budget."""
        return self.r / self.p_star

    @property
    def eps(self) -> float:
        return _EPS * self.ceiling

    @property
    def odds(self) -> float:
        return (1.0 - self.gamma) / self.gamma

    def utility(self, c: float) -> float:
        """Utility of consuming ``c`` and keeping the rest as money."""
        money_units = self.ceiling - c
        return quasi_mean(self.utility_g, [c, money_units], [self.gamma, 1.0 - self.gamma])

    def h(self, c: float) -> float:
        g = self.utility_g
        return float(g.phi2(c)) - self.odds * float(g.phi2(self.ceiling - c))


@dataclass(frozen=True)
class ConsumerSolution:
    """Optimal split.  ``c_interval`` is set when the optimum is not unique;
    ``c_star`` is then the interval midpoint."""

    c_star: float
    m: float
    u_star: float
    budget_residual: float
    c_interval: Optional[Tuple[float, float]] = None


def _solution(prog: ConsumerProgram, c: float, interval=None) -> ConsumerSolution:
    m = prog.r - prog.p_star * c
    return ConsumerSolution(c, m, prog.utility(c), abs(prog.p_star * c + m - prog.r), interval)


def solve(prog: ConsumerProgram, rtol: float = 1e-12, max_iter: int = 200) -> ConsumerSolution:
    """Root of the first-order condition by bisection on ``(eps, R - eps)``.

    When ``phi''`` is flat over a stretch, every point of a sub-interval solves
    the condition; both ends are located and returned in ``c_interval``.
    """
    lo, hi = prog.eps, prog.ceiling - prog.eps
    h_lo, h_hi = prog.h(lo), prog.h(hi)
    if not h_lo >= 0.0 >= h_hi:
        raise DomainError("first-order condition has no interior root; the optimum is a corner")
    left = bisect_boundary(lambda c: prog.h(c) > 0.0, lo, hi, rtol, max_iter) if h_lo > 0 else lo
    right = bisect_boundary(lambda c: prog.h(c) >= 0.0, lo, hi, rtol, max_iter) if h_hi < 0 else hi
    if right - left <= 1e-9 * prog.ceiling:
        return _solution(prog, 0.5 * (left + right))
    return _solution(prog, 0.5 * (left + right), (left, right))


def oracle_solve(prog: ConsumerProgram, grid: int = 10**4) -> ConsumerSolution:
    """Brute-force maximiser of utility along the budget line.

    A uniform grid of cell midpoints on ``(0, R)`` is searched, then a second
    grid of the same size covers the two cells around the best point.
    """
    if grid < 10**4:
        raise ValueError("oracle_solve needs a grid of at least 10**4 points")
    g, gam, big_r = prog.utility_g, prog.gamma, prog.ceiling

    def best(a: float, b: float) -> Tuple[float, float]:
        step = (b - a) / grid
        c = a + step * (np.arange(grid) + 0.5)
        score = gam * np.asarray(g.phi1(c)) + (1.0 - gam) * np.asarray(g.phi1(big_r - c))
        k = int(np.argmax(score))
        return float(c[k]), step

    c0, step = best(0.0, big_r)
    c1, _ = best(max(c0 - step, 0.0), min(c0 + step, big_r))
    return _solution(prog, c1)


def stationarity_residuals(prog: ConsumerProgram, sol: ConsumerSolution) -> Tuple[float, float]:
    """Relative residuals of the consumption and money first-order conditions.

    ``res_c = odds * phi''(R - c) / phi''(c) - 1`` and its mirror
    ``res_m = phi''(R - m/p) / (odds * phi''(m/p)) - 1``.  Both vanish at the
    optimum; ``res_c`` is positive when consumption overshoots.
    """
    g, big_r = prog.utility_g, prog.ceiling
    c, money_units = sol.c_star, sol.m / prog.p_star
    res_c = prog.odds * float(g.phi2(big_r - c)) / float(g.phi2(c)) - 1.0
    res_m = float(g.phi2(big_r - money_units)) / (prog.odds * float(g.phi2(money_units))) - 1.0
    return res_c, res_m


def consumption_money_gap(prog: ConsumerProgram, sol: ConsumerSolution) -> float:
    """Relative gap in ``phi''(c) = odds * phi''(m / p_star)``."""
    g = prog.utility_g
    lhs = float(g.phi2(sol.c_star))
    rhs = prog.odds * float(g.phi2(sol.m / prog.p_star))
    return abs(lhs - rhs) / abs(rhs)
