"""One-dimensional golden-section and bisection searches on a fixed bracket.

Both searches stay strictly inside the bracket they are given, which matters
for generators defined on open intervals.
"""

from __future__ import annotations

import math
from typing import Callable

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f: Callable[[float], float], lo: float, hi: float,
                   tol: float = 1e-8, max_iter: int = 500) -> float:
    """Minimiser of a unimodal ``f`` on ``[lo, hi]`` to absolute tolerance ``tol``."""
    if hi < lo:
        lo, hi = hi, lo
    if hi - lo <= tol:
        return 0.5 * (lo + hi)
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return c if fc <= fd else d


def bisect_boundary(pred: Callable[[float], bool], lo: float, hi: float,
                    rtol: float = 1e-12, max_iter: int = 200) -> float:
    """Boundary of a monotone predicate: ``pred(lo)`` true, ``pred(hi)`` false.

    Returns the point where ``pred`` switches, to relative tolerance ``rtol`` of
    the initial bracket width.
    """
    width = hi - lo
    for _ in range(max_iter):
        if hi - lo <= rtol * width:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
