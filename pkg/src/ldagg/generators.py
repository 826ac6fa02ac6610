"""Separable convex generators and their catalogue.

A generator is a strictly convex scalar function ``phi`` on an interval,
together with its first three derivatives and the inverse of its gradient.
Every function in the catalogue is vectorised over numpy arrays and returns
a plain ``float`` for scalar input.  Arguments outside the open domain raise
:class:`~ldagg.errors.DomainError`; nothing is clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np
from scipy import special

from .errors import DegenerateParameterError, DomainError, LimitParameterError

ScalarFn = Callable[[object], object]

INF = math.inf


@dataclass(frozen=True)
class Interval:
    lo: float = -INF
    hi: float = INF
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above & below

    def shifted(self, c: float) -> "Interval":
        return Interval(self.lo + c, self.hi + c, self.lo_closed, self.hi_closed)

    def scaled(self, c: float) -> "Interval":
        if c <= 0:
            raise ValueError("interval scale must be positive")
        return Interval(self.lo * c, self.hi * c, self.lo_closed, self.hi_closed)

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:g}, {self.hi:g}{right}"


POSITIVE = Interval(0.0, INF)
NEGATIVE = Interval(-INF, 0.0)
REAL = Interval()
UNIT = Interval(0.0, 1.0)


def _checked(fn: ScalarFn, interval: Interval, label: str) -> ScalarFn:
    def wrapped(x):
        arr = np.asarray(x, dtype=float)
        bad = ~interval.contains(arr)
        if np.any(bad):
            offending = float(np.atleast_1d(arr)[np.atleast_1d(bad)][0])
            raise DomainError(f"{label}: argument {offending!r} outside {interval}")
        out = np.asarray(fn(arr), dtype=float)
        return float(out) if out.ndim == 0 else out

    return wrapped


def _fmt(v: float) -> str:
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


@dataclass(frozen=True, eq=False)
class Generator:
    """Strictly convex separable generator.

    ``phi1_inv`` is defined on ``image`` (the range of ``phi1`` over ``domain``).
    ``sample_range`` is a closed sub-interval of the domain used to draw test
    and diagnostic data; it has no effect on evaluation.
    """

    name: str
    domain: Interval
    image: Interval
    phi: ScalarFn
    phi1: ScalarFn
    phi2: ScalarFn
    phi1_inv: ScalarFn
    phi3: Optional[ScalarFn] = None
    conjugate_phi: Optional[ScalarFn] = None
    params: Mapping[str, float] = field(default_factory=dict)
    sample_range: tuple = (0.25, 4.0)

    def check(self, x) -> np.ndarray:
        arr = np.asarray(x, dtype=float)
        bad = ~self.domain.contains(arr)
        if np.any(bad):
            offending = float(np.atleast_1d(arr)[np.atleast_1d(bad)][0])
            raise DomainError(f"{self.name}: value {offending!r} outside domain {self.domain}")
        return arr

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        lo, hi = self.sample_range
        if lo > 0:
            return np.exp(rng.uniform(math.log(lo), math.log(hi), size))
        return rng.uniform(lo, hi, size)

    def scaled(self, c: float, d: float = 0.0) -> "Generator":
        """Return ``c * phi + d``; any ``c > 0`` leaves every aggregate unchanged."""
        if not c > 0:
            raise DegenerateParameterError(f"scale must be positive, got {c}")
        g = self
        conj = None
        if g.conjugate_phi is not None:
            conj = lambda y: c * g.conjugate_phi(y / c) - d
        return _build(
            f"{_fmt(c)}*{g.name}+{_fmt(d)}",
            g.domain,
            g.image.scaled(c),
            phi=lambda x: c * g.phi(x) + d,
            phi1=lambda x: c * g.phi1(x),
            phi2=lambda x: c * g.phi2(x),
            phi1_inv=lambda y: g.phi1_inv(y / c),
            phi3=None if g.phi3 is None else (lambda x: c * g.phi3(x)),
            conj=conj,
            params=dict(g.params),
            sample_range=g.sample_range,
        )

    def with_linear(self, k: float) -> "Generator":
        """Return ``phi + k x``: same divergence, gradient image shifted by ``k``."""
        g = self
        conj = None
        if g.conjugate_phi is not None:
            conj = lambda y: g.conjugate_phi(y - k)
        return _build(
            g.name,
            g.domain,
            g.image.shifted(k),
            phi=lambda x: g.phi(x) + k * x,
            phi1=lambda x: g.phi1(x) + k,
            phi2=g.phi2,
            phi1_inv=lambda y: g.phi1_inv(y - k),
            phi3=g.phi3,
            conj=conj,
            params=dict(g.params),
            sample_range=g.sample_range,
        )

    def __repr__(self) -> str:
        return f"Generator({self.name!r}, domain={self.domain})"


def _build(
    name: str,
    domain: Interval,
    image: Interval,
    *,
    phi: ScalarFn,
    phi1: ScalarFn,
    phi2: ScalarFn,
    phi1_inv: ScalarFn,
    phi3: Optional[ScalarFn] = None,
    conj: Optional[ScalarFn] = None,
    params: Optional[Mapping[str, float]] = None,
    sample_range=(0.25, 4.0),
) -> Generator:
    return Generator(
        name=name,
        domain=domain,
        image=image,
        phi=_checked(phi, domain, f"{name}.phi"),
        phi1=_checked(phi1, domain, f"{name}.phi1"),
        phi2=_checked(phi2, domain, f"{name}.phi2"),
        phi1_inv=_checked(phi1_inv, image, f"{name}.phi1_inv"),
        phi3=None if phi3 is None else _checked(phi3, domain, f"{name}.phi3"),
        conjugate_phi=None if conj is None else _checked(conj, image, f"{name}.conjugate"),
        params=dict(params or {}),
        sample_range=tuple(sample_range),
    )


@dataclass(frozen=True)
class CesParams:
    """Elasticity of substitution ``sigma`` and positive CES weights ``betas``."""

    sigma: float
    betas: tuple

    def __post_init__(self):
        sigma = float(self.sigma)
        if not math.isfinite(sigma) or sigma == 0.0 or sigma == 1.0:
            raise DegenerateParameterError(f"CES needs sigma outside {{0, 1}}, got {sigma}")
        betas = tuple(float(b) for b in np.atleast_1d(self.betas))
        if len(betas) == 0:
            raise ValueError("CES needs at least one weight")
        if any(not (b > 0 and math.isfinite(b)) for b in betas):
            raise ValueError(f"CES weights must be positive, got {betas}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "betas", betas)

    @property
    def beta(self) -> np.ndarray:
        return np.asarray(self.betas)

    @property
    def beta_sum(self) -> float:
        return math.fsum(self.betas)

    @property
    def rho(self) -> float:
        """Exponent ``(sigma - 1) / sigma`` applied to each input."""
        return (self.sigma - 1.0) / self.sigma

    def __len__(self) -> int:
        return len(self.betas)


# --- catalogue ---------------------------------------------------------------


def make_squared(scale: float = 1.0) -> Generator:
    if not scale > 0:
        raise DegenerateParameterError(f"squared generator needs scale > 0, got {scale}")
    s = float(scale)
    name = "squared" if s == 1.0 else f"squared:scale={_fmt(s)}"
    return _build(
        name,
        REAL,
        REAL,
        phi=lambda x: s * x * x,
        phi1=lambda x: 2.0 * s * x,
        phi2=lambda x: np.full_like(x, 2.0 * s),
        phi1_inv=lambda y: y / (2.0 * s),
        phi3=lambda x: np.zeros_like(x),
        conj=lambda y: y * y / (4.0 * s),
        params={"scale": s},
    )


def make_cobb_douglas(b: float = 1.0) -> Generator:
    """``b (x log x - x)``: Kullback-Leibler divergence, geometric-mean aggregator."""
    if not b > 0:
        raise DegenerateParameterError(f"Cobb-Douglas generator needs b > 0, got {b}")
    b = float(b)
    return _build(
        f"cd:b={_fmt(b)}",
        POSITIVE,
        REAL,
        phi=lambda x: b * (x * np.log(x) - x),
        phi1=lambda x: b * np.log(x),
        phi2=lambda x: b / x,
        phi1_inv=lambda y: np.exp(y / b),
        phi3=lambda x: -b / (x * x),
        conj=lambda y: b * np.exp(y / b),
        params={"b": b},
    )


def make_itakura_saito() -> Generator:
    return _build(
        "is",
        POSITIVE,
        NEGATIVE,
        phi=lambda x: -np.log(x),
        phi1=lambda x: -1.0 / x,
        phi2=lambda x: 1.0 / (x * x),
        phi1_inv=lambda y: -1.0 / y,
        phi3=lambda x: -2.0 / x**3,
        conj=lambda y: -1.0 - np.log(-y),
    )


def make_logistic() -> Generator:
    # no economic reading; kept for the divergence catalogue
    return _build(
        "logistic",
        UNIT,
        REAL,
        phi=lambda x: x * np.log(x) + (1.0 - x) * np.log1p(-x),
        phi1=special.logit,
        phi2=lambda x: 1.0 / (x * (1.0 - x)),
        phi1_inv=special.expit,
        phi3=lambda x: (2.0 * x - 1.0) / (x * (1.0 - x)) ** 2,
        conj=lambda y: np.logaddexp(0.0, y),
        sample_range=(0.05, 0.95),
    )


def power_generator(name: str, coef: float, expo: float, params: Mapping[str, float]) -> Generator:
    """``coef * x**expo`` on (0, inf); requires ``coef * expo * (expo - 1) > 0``."""
    if expo == 0.0 or expo == 1.0:
        raise DegenerateParameterError(f"{name}: exponent {expo} gives an affine generator")
    if not coef * expo * (expo - 1.0) > 0:
        raise DegenerateParameterError(f"{name}: coefficient {coef} does not make x^{expo} convex")
    slope = coef * expo
    image = POSITIVE if slope > 0 else NEGATIVE
    inv_expo = 1.0 / (expo - 1.0)
    conj_expo = expo / (expo - 1.0)
    return _build(
        name,
        POSITIVE,
        image,
        phi=lambda x: coef * x**expo,
        phi1=lambda x: slope * x ** (expo - 1.0),
        phi2=lambda x: slope * (expo - 1.0) * x ** (expo - 2.0),
        phi1_inv=lambda y: (y / slope) ** inv_expo,
        phi3=lambda x: slope * (expo - 1.0) * (expo - 2.0) * x ** (expo - 3.0),
        conj=lambda y: (expo - 1.0) * coef * (y / slope) ** conj_expo,
        params=params,
    )


def _sigma_of(p: Union[CesParams, float]) -> float:
    return p.sigma if isinstance(p, CesParams) else float(p)


def ces_exponent(sigma: float) -> float:
    """Exponent ``2 - 1/sigma`` of the CES generator."""
    return 2.0 - 1.0 / sigma


def make_ces_generator(p: Union[CesParams, float]) -> Generator:
    """Generator ``a x**(2 - 1/sigma)`` whose LDA is the CES aggregator.

    ``|a| = 1`` with the sign that keeps the generator convex on (0, inf).
    ``sigma = 1/2`` gives a zero exponent and is rejected; use
    :func:`make_power_mean` with ``kappa = -1`` for that case.
    """
    sigma = _sigma_of(p)
    if sigma in (0.0, 0.5, 1.0) or not math.isfinite(sigma):
        raise DegenerateParameterError(f"CES generator undefined for sigma={sigma}")
    expo = ces_exponent(sigma)
    a = 1.0 if expo * (expo - 1.0) > 0 else -1.0
    return power_generator(f"ces:sigma={_fmt(sigma)}", a, expo, {"sigma": sigma, "a": a})


def make_price_generator(sigma: float, b_scale: Optional[float] = None) -> Generator:
    """Generator ``b x**(2 - sigma)`` of the CES price index.

    Without ``b_scale`` the scale is ``1 / ((2 - sigma)(1 - sigma))``, which makes
    the second derivative exactly ``x**(-sigma)`` and lets the divergence tend to
    Itakura-Saito as ``sigma -> 2``.
    """
    sigma = float(sigma)
    if sigma in (1.0, 2.0):
        raise DegenerateParameterError(f"price generator undefined for sigma={sigma}")
    expo = 2.0 - sigma
    b = 1.0 / (expo * (1.0 - sigma)) if b_scale is None else float(b_scale)
    name = f"price:sigma={_fmt(sigma)}"
    if b_scale is not None:
        name += f",b={_fmt(b)}"
    return power_generator(name, b, expo, {"sigma": sigma, "b": b})


def make_power_mean(kappa: float) -> Generator:
    """Generator with gradient ``sign(kappa) x**kappa`` (power mean of order kappa).

    ``kappa = -1`` is Itakura-Saito (harmonic mean), which is where the CES
    parameterisation breaks down (``sigma = 1/2``).
    """
    kappa = float(kappa)
    if kappa == 0.0:
        raise LimitParameterError("kappa = 0 is the geometric-mean limit; use make_cobb_douglas")
    name = f"power:kappa={_fmt(kappa)}"
    if kappa == -1.0:
        g = make_itakura_saito()
        return Generator(**{**g.__dict__, "name": name, "params": {"kappa": kappa}})
    s = 1.0 if kappa > 0 else -1.0
    return power_generator(name, s / (kappa + 1.0), kappa + 1.0, {"kappa": kappa})


def make_amari(alpha: float) -> Generator:
    """Amari alpha generator ``4 (x - x**((1+alpha)/2)) / (1 - alpha**2)``.

    The endpoints ``alpha = +-1`` are Kullback-Leibler / Itakura-Saito limits and
    are rejected here; see :mod:`ldagg.divergence` for the limit checks.
    """
    alpha = float(alpha)
    if alpha in (-1.0, 1.0):
        raise LimitParameterError(
            f"alpha={alpha} is a limit case; use amari_limit_residual or the KL/IS generators"
        )
    if not -1.0 < alpha < 1.0:
        raise DegenerateParameterError(f"alpha must lie in (-1, 1), got {alpha}")
    c = 4.0 / (1.0 - alpha * alpha)
    k = 0.5 * (1.0 + alpha)
    core = power_generator(f"amari:alpha={_fmt(alpha)}", -c, k, {"alpha": alpha})
    return core.with_linear(c)


def conjugate(g: Generator) -> Generator:
    """Legendre conjugate of ``g``, defined on the image of its gradient.

    Uses the closed form when ``g`` carries one, otherwise
    ``y * inv(y) - phi(inv(y))`` with the exact inverse gradient.
    """
    inv = g.phi1_inv
    if g.conjugate_phi is not None:
        phi = g.conjugate_phi
    else:
        def phi(y):
            x = inv(y)
            return y * x - g.phi(x)

    phi3 = None
    if g.phi3 is not None:
        def phi3(y):
            x = inv(y)
            return -g.phi3(x) / g.phi2(x) ** 3

    lo, hi = g.sample_range
    ends = sorted((float(g.phi1(lo)), float(g.phi1(hi))))
    return _build(
        f"conj({g.name})",
        g.image,
        g.domain,
        phi=phi,
        phi1=inv,
        phi2=lambda y: 1.0 / g.phi2(inv(y)),
        phi1_inv=g.phi1,
        phi3=phi3,
        params=dict(g.params),
        sample_range=tuple(ends),
    )


# --- name grammar -------------------------------------------------------------

_FACTORIES: dict = {
    "squared": (make_squared, ("scale",)),
    "cd": (make_cobb_douglas, ("b",)),
    "kl": (make_cobb_douglas, ("b",)),
    "is": (make_itakura_saito, ()),
    "logistic": (make_logistic, ()),
    "ces": (make_ces_generator, ("sigma",)),
    "price": (make_price_generator, ("sigma", "b")),
    "power": (make_power_mean, ("kappa",)),
    "amari": (make_amari, ("alpha",)),
}

_REQUIRED = {"ces": ("sigma",), "price": ("sigma",), "power": ("kappa",), "amari": ("alpha",)}


def parse_generator(text: str) -> Generator:
    """Build a generator from ``name[:key=value[,key=value...]]``.

    Examples: ``"ces:sigma=2"``, ``"cd:b=1"``, ``"is"``, ``"amari:alpha=0.5"``,
    ``"price:sigma=0.5"``, ``"power:kappa=-1"``.  Raises ``ValueError`` on an
    unknown name or malformed parameter list.
    """
    head, _, tail = text.strip().partition(":")
    head = head.strip().lower()
    if head not in _FACTORIES:
        raise ValueError(f"unknown generator {head!r}; known: {', '.join(sorted(_FACTORIES))}")
    factory, allowed = _FACTORIES[head]
    kwargs: dict = {}
    if tail.strip():
        for item in tail.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or key not in allowed:
                raise ValueError(f"bad parameter {item!r} for generator {head!r}")
            try:
                kwargs[key] = float(value)
            except ValueError:
                raise ValueError(f"parameter {key!r} is not a number: {value!r}") from None
    missing = [k for k in _REQUIRED.get(head, ()) if k not in kwargs]
    if missing:
        raise ValueError(f"generator {head!r} needs {', '.join(missing)}")
    if head == "price" and "b" in kwargs:
        kwargs["b_scale"] = kwargs.pop("b")
    if head in ("ces",):
        return factory(kwargs["sigma"])
    return factory(**kwargs)


def catalogue(names: Optional[Sequence[str]] = None) -> list:
    """Representative generators used by the property checks and diagnostics."""
    names = names or CATALOGUE_NAMES
    return [parse_generator(n) for n in names]


CATALOGUE_NAMES = (
    "squared",
    "cd:b=1",
    "cd:b=2.5",
    "is",
    "logistic",
    "ces:sigma=2",
    "ces:sigma=0.75",
    "ces:sigma=0.25",
    "ces:sigma=-1",
    "ces:sigma=3",
    "price:sigma=0.5",
    "price:sigma=3",
    "power:kappa=-1",
    "power:kappa=0.5",
    "amari:alpha=0",
    "amari:alpha=0.5",
    "amari:alpha=-0.5",
)
