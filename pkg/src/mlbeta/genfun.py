"""Beta integrals against a two-variable generating function.

    I = int_0^1 y^(m-1) (1-y)^(n-m-1) G(u, t y^mu (1-y)^nu) prod_i (1 - z_i y)^-beta_i E[q y (1-y)] dy

with ``G(u, t) = sum_r term(r, u) t^r``. The spectator ``u`` is frozen per
spec. Unlike the operator of :mod:`beta_operator`, the integral carries no
``1/B`` normalisation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError
from .hypergeom import gegenbauer_sequence, humbert_phi2, kummer_1f1, product_series_blocks
from .mittag_leffler import MLParams, ml_multi_array
from .numeric_kernel import DEFAULT_CONTROL, SeriesControl, kahan_sum_complex, pochhammer
from .quadrature import DEFAULT_QUAD, Nodes, QuadControl, tanh_sinh_beta
from .wright import WrightParams, wright_eval

__all__ = [
    "GeneratingFunction",
    "HypergeomGF",
    "HumbertGF",
    "GegenbauerGF",
    "GenIntegralSpec",
    "gen_quad",
    "gen_series",
    "symmetric_series",
    "example_instances",
]


class GeneratingFunction:
    """``G(u, t) = sum_r term(r, u) t^r``; subclasses supply the pieces."""

    def term(self, r: int, u: float) -> float:
        raise NotImplementedError

    def terms(self, u: float) -> Iterator[float]:
        """``term(r, u)`` for r = 0, 1, ...; override when a recurrence is cheaper."""
        r = 0
        while True:
            yield self.term(r, u)
            r += 1

    def closed_form(self, u: float, t):
        raise NotImplementedError

    def validity(self, u: float, t: float) -> bool:
        return True


@dataclass(frozen=True)
class HypergeomGF(GeneratingFunction):
    """``(c)_r u^r / r!``, summing to ``(1 - u t)^-c``."""

    c: float

    def term(self, r, u):
        return pochhammer(self.c, r) * u ** r / math.factorial(r)

    def terms(self, u):
        t = 1.0
        r = 0
        while True:
            yield t
            t *= (self.c + r) * u / (r + 1)
            r += 1

    def closed_form(self, u, t):
        return (1.0 - u * np.asarray(t)) ** (-self.c)

    def validity(self, u, t):
        return abs(u * t) < 1


@lru_cache(maxsize=1 << 12)
def _kummer(a, c, x):
    return kummer_1f1(a, c, x)


@dataclass(frozen=True)
class HumbertGF(GeneratingFunction):
    """``(c)_r / ((d)_r r!) 1F1(c; d + r; u)``, summing to Phi2(c, c; d; u, t)."""

    c: float
    d: float

    def term(self, r, u):
        return pochhammer(self.c, r) / (pochhammer(self.d, r) * math.factorial(r)) * _kummer(self.c, self.d + r, u)

    def terms(self, u):
        t = 1.0
        r = 0
        while True:
            yield t * _kummer(self.c, self.d + r, u)
            t *= (self.c + r) / ((self.d + r) * (r + 1))
            r += 1

    def closed_form(self, u, t):
        t = np.asarray(t, dtype=float)
        out = np.empty_like(t)
        flat = out.reshape(-1)
        for i, ti in enumerate(t.reshape(-1)):
            flat[i] = humbert_phi2(self.c, self.c, self.d, u, float(ti))
        return out


@dataclass(frozen=True)
class GegenbauerGF(GeneratingFunction):
    """``C_r^(alpha)(u)``, summing to ``(1 - 2 u t + t^2)^-alpha``."""

    alpha: float

    def term(self, r, u):
        return gegenbauer_sequence(self.alpha, u)(r)

    def terms(self, u):
        get = gegenbauer_sequence(self.alpha, u)
        r = 0
        while True:
            yield get(r)
            r += 1

    def closed_form(self, u, t):
        t = np.asarray(t)
        return (1.0 - 2.0 * u * t + t * t) ** (-self.alpha)

    def validity(self, u, t):
        # radius of convergence is the smallest root modulus of 1 - 2ut + t^2
        if abs(u) <= 1:
            return abs(t) < 1
        return abs(t) < abs(u) - math.sqrt(u * u - 1.0)


@dataclass(frozen=True)
class GenIntegralSpec:
    m: float
    n: float
    mu: float
    nu: float
    t: float
    u: float
    q: complex
    ml: MLParams
    gf: GeneratingFunction
    extra_factors: Tuple[Tuple[float, float], ...] = field(default=())

    def __post_init__(self):
        if not (self.n > self.m > 0):
            raise DomainError(f"need n > m > 0, got m={self.m}, n={self.n}")
        if not (self.mu >= 0 and self.nu >= 0 and self.mu + self.nu > 0):
            raise DomainError(f"need mu, nu >= 0 and mu + nu > 0, got ({self.mu}, {self.nu})")
        extras = tuple((float(b), float(z)) for b, z in self.extra_factors)
        for b, z in extras:
            if not abs(z) < 1:
                raise DomainError(f"extra factor z = {z!r} violates |z| < 1")
        object.__setattr__(self, "extra_factors", extras)
        object.__setattr__(self, "q", complex(self.q))
        # y^mu (1-y)^nu peaks at mu^mu nu^nu / (mu+nu)^(mu+nu)
        peak = _peak(self.mu, self.nu)
        if not self.gf.validity(self.u, self.t * peak) or not self.gf.validity(self.u, 0.0):
            raise DomainError(f"generating function not convergent for u={self.u}, t={self.t}")


def _peak(mu, nu):
    s = mu + nu
    lg = 0.0
    if mu > 0:
        lg += mu * math.log(mu / s)
    if nu > 0:
        lg += nu * math.log(nu / s)
    return math.exp(lg)


def gen_quad(spec: GenIntegralSpec, quad_ctrl: QuadControl = DEFAULT_QUAD,
             ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Left-hand integral by tanh-sinh quadrature using the closed form of G."""

    def integrand(nd: Nodes):
        arg = spec.t * np.exp(spec.mu * nd.log_v + spec.nu * nd.log_w)
        g = spec.gf.closed_form(spec.u, arg)
        log_extra = np.zeros_like(nd.v)
        for b, z in spec.extra_factors:
            log_extra -= b * np.log1p(-z * nd.v)
        e = ml_multi_array(spec.ml, spec.q * nd.v * nd.w, ctrl)
        return g * np.exp(log_extra) * e

    return tanh_sinh_beta(integrand, spec.m, spec.n - spec.m, quad_ctrl)


def _wright(upper_a, upper_b, lower_ab, ml, q, ctrl):
    params = WrightParams(((upper_a, 1.0), (upper_b, 1.0), (1.0, 1.0)), ml.wright_lower() + ((lower_ab, 2.0),))
    return wright_eval(params, q, ctrl)


def _sum(blocks, ctrl, what):
    value, used, converged = kahan_sum_complex(blocks, ctrl)
    if not converged:
        raise ConvergenceError(f"{what} series not converged after {used} terms", value, used)
    return value


def _single_path(spec: GenIntegralSpec, ctrl: SeriesControl) -> complex:
    inner = ctrl.tighter(100)
    m, n, mu, nu = spec.m, spec.n, spec.mu, spec.nu

    def blocks():
        tr = 1.0
        for r, a in enumerate(spec.gf.terms(spec.u)):
            c = a * tr
            if c == 0.0:
                yield 0j
            else:
                yield c * _wright(m + mu * r, n - m + nu * r, n + (mu + nu) * r, spec.ml, spec.q, inner)
            tr *= spec.t

    return _sum(blocks(), ctrl, "generating-function")


def _multi_path(spec: GenIntegralSpec, ctrl: SeriesControl) -> complex:
    """Outer index r and the extra factors' total degree d, summed by r + d."""
    inner = ctrl.tighter(100)
    m, n, mu, nu = spec.m, spec.n, spec.mu, spec.nu
    betas = [b for b, _ in spec.extra_factors]
    zs = [z for _, z in spec.extra_factors]
    gf_terms = spec.gf.terms(spec.u)
    h_iter = product_series_blocks(betas, zs)
    outer: List[float] = []
    h: List[float] = []

    def blocks():
        tr = 1.0
        total = 0
        while True:
            outer.append(next(gf_terms) * tr)
            h.append(next(h_iter))
            tr *= spec.t
            parts = []
            for r in range(total + 1):
                d = total - r
                c = outer[r] * h[d]
                if c != 0.0:
                    parts.append(c * _wright(m + mu * r + d, n - m + nu * r, n + (mu + nu) * r + d,
                                             spec.ml, spec.q, inner))
            if not parts:
                yield 0j
            elif len(parts) == 1:
                yield parts[0]
            else:
                yield complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))
            total += 1

    return _sum(blocks(), ctrl, "generating-function")


def gen_series(spec: GenIntegralSpec, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Right-hand side: a Wright value per outer index (and per degree of the extras)."""
    if spec.extra_factors:
        return _multi_path(spec, ctrl)
    return _single_path(spec, ctrl)


def symmetric_series(spec: GenIntegralSpec, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Symmetric case n = 2m, mu = nu: both upper Wright values equal m + nu r."""
    if abs(spec.n - 2.0 * spec.m) > 1e-15 * spec.n or spec.mu != spec.nu:
        raise ParameterError("the symmetric form needs n = 2m and mu = nu")
    if spec.extra_factors:
        raise ParameterError("the symmetric form takes no extra factors")
    inner = ctrl.tighter(100)
    m, nu = spec.m, spec.nu

    def blocks():
        tr = 1.0
        for r, a in enumerate(spec.gf.terms(spec.u)):
            c = a * tr
            if c == 0.0:
                yield 0j
            else:
                s = m + nu * r
                yield c * _wright(s, s, 2.0 * s, spec.ml, spec.q, inner)
            tr *= spec.t

    return _sum(blocks(), ctrl, "symmetric generating-function")


_DEFAULT_ML = MLParams((0.5, 1.2), (0.8, 1.7))


def example_instances() -> List[Dict]:
    """The three built-in generating functions with their default grids.

    Each entry has ``name``, ``gf``, ``u`` and a ``grid`` dict of the
    remaining :class:`GenIntegralSpec` fields (lists to be crossed).
    """
    grid = {
        "m": [0.8],
        "n": [2.5],
        "mu_nu": [(1.0, 0.5), (2.0, 0.0)],
        "t": [0.3],
        "q": [-1.5, 0.8, 1 + 1j],
    }
    return [
        {"name": "hypergeometric", "gf": HypergeomGF(1.4), "u": 1.0, "grid": dict(grid)},
        {"name": "humbert", "gf": HumbertGF(1.4, 2.2), "u": 0.7, "grid": dict(grid)},
        {"name": "gegenbauer", "gf": GegenbauerGF(0.9), "u": 1.0, "grid": dict(grid)},
    ]


def make_spec(template: Dict, m: float, n: float, mu: float, nu: float, t: float, q: complex,
              ml: MLParams = _DEFAULT_ML, extra_factors=()) -> GenIntegralSpec:
    return GenIntegralSpec(m, n, mu, nu, t, template["u"], q, ml, template["gf"], tuple(extra_factors))

