"""Beta-weighted integral operator with a Mittag-Leffler kernel.

    J = 1/B(eta1, eta2) int_{a1}^{a2} (u-a1)^(eta1-1) (a2-u)^(eta2-1) h1(u)^eta3 E[q h2(u)] du

``quad_operator`` integrates this directly. The ``*_series`` functions sum
the equivalent expansions in Wright functions, one per kernel family:

* TwoFactor, MultiFactor: binomial blocks of total degree d, one Wright value per d
* CrossFactor: double series, one Wright value per (r, s)
* AffinePower: binomial series in the affine variable
* WeightedDenominator: a single Wright value at a rescaled argument
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple, Union

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError
from .hypergeom import _Lazy, product_series_blocks, rising_series
from .mittag_leffler import MLParams, ml_multi_array
from .numeric_kernel import DEFAULT_CONTROL, SeriesControl, beta_fn, kahan_sum_complex
from .quadrature import DEFAULT_QUAD, Nodes, QuadControl, tanh_sinh_beta
from .wright import WrightParams, wright_eval

__all__ = [
    "TwoFactor",
    "CrossFactor",
    "AffinePower",
    "WeightedDenominator",
    "MultiFactor",
    "OperatorSpec",
    "quad_operator",
    "thm21_series",
    "thm22_series",
    "thm23_series",
    "thm24_closed",
    "thm41_series",
    "series_operator",
    "beta_wright",
]


def _check_unit(name, z):
    if not abs(z) < 1:
        raise DomainError(f"{name} = {z!r} violates |{name}| < 1")


@dataclass(frozen=True)
class TwoFactor:
    """h1 = (1 - z1 u)^-beta1 (1 - z2 u)^-beta2, h2 = u (1 - u)."""

    beta1: float
    beta2: float
    z1: float
    z2: float

    def __post_init__(self):
        _check_unit("z1", self.z1)
        _check_unit("z2", self.z2)


@dataclass(frozen=True)
class CrossFactor:
    """h1 = (1 - z1 u)^-beta1 (1 - z2 (1 - u))^-beta2, h2 = u (1 - u)."""

    beta1: float
    beta2: float
    z1: float
    z2: float

    def __post_init__(self):
        _check_unit("z1", self.z1)
        _check_unit("z2", self.z2)


@dataclass(frozen=True)
class AffinePower:
    """h1 = x u + y, h2 = (u - a1)(a2 - u)."""

    x: float
    y: float


@dataclass(frozen=True)
class WeightedDenominator:
    """h1 = (a2 - a1) + xi (u - a1) + sigma (a2 - u), h2 = (u - a1)(a2 - u) / h1^2."""

    xi: float
    sigma: float

    def __post_init__(self):
        if not (self.xi > -1 and self.sigma > -1):
            raise DomainError(f"need xi > -1 and sigma > -1 so h1 stays positive, got ({self.xi}, {self.sigma})")


@dataclass(frozen=True)
class MultiFactor:
    """h1 = prod_i (1 - z_i u)^-beta_i, h2 = u (1 - u)."""

    betas: Tuple[float, ...]
    zs: Tuple[float, ...]

    def __post_init__(self):
        betas = tuple(float(b) for b in self.betas)
        zs = tuple(float(z) for z in self.zs)
        if not betas or len(betas) != len(zs):
            raise ParameterError("MultiFactor needs n >= 1 factors and len(betas) == len(zs)")
        for i, z in enumerate(zs):
            _check_unit(f"z_{i + 1}", z)
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "zs", zs)


Kernel = Union[TwoFactor, CrossFactor, AffinePower, WeightedDenominator, MultiFactor]
_FACTOR_KERNELS = (TwoFactor, CrossFactor, MultiFactor)


@dataclass(frozen=True)
class OperatorSpec:
    """One instance of the operator: weight, kernel, Mittag-Leffler factor.

    ``eta3`` defaults to 1 except for WeightedDenominator, where it is tied
    to ``-(eta1 + eta2)``. Factor kernels live on [0, 1] with ``eta3 = 1``.
    """

    eta1: float
    eta2: float
    q: complex
    ml: MLParams
    kernel: Kernel
    a1: float = 0.0
    a2: float = 1.0
    eta3: Optional[float] = field(default=None)

    def __post_init__(self):
        if not (self.eta1 > 0 and self.eta2 > 0):
            raise DomainError(f"need eta1 > 0 and eta2 > 0, got ({self.eta1}, {self.eta2})")
        if not self.a1 < self.a2:
            raise DomainError(f"need a1 < a2, got ({self.a1}, {self.a2})")
        if not isinstance(self.kernel, (TwoFactor, CrossFactor, AffinePower, WeightedDenominator, MultiFactor)):
            raise ParameterError(f"unknown kernel {self.kernel!r}")
        object.__setattr__(self, "q", complex(self.q))
        k = self.kernel
        eta3 = self.eta3
        if isinstance(k, _FACTOR_KERNELS):
            if (self.a1, self.a2) != (0.0, 1.0):
                raise ParameterError(f"{type(k).__name__} kernel is defined on [0, 1] only")
            if eta3 is not None and eta3 != 1:
                raise ParameterError(f"{type(k).__name__} kernel fixes eta3 = 1")
            eta3 = 1.0
        elif isinstance(k, WeightedDenominator):
            forced = -(self.eta1 + self.eta2)
            if eta3 is not None and abs(eta3 - forced) > 1e-15 * abs(forced):
                raise ParameterError(f"WeightedDenominator kernel fixes eta3 = -(eta1 + eta2) = {forced}")
            eta3 = forced
        else:
            eta3 = 1.0 if eta3 is None else float(eta3)
            lo = k.x * self.a1 + k.y
            hi = k.x * self.a2 + k.y
            if lo == 0 or not hi / lo > 0:
                raise DomainError(
                    f"AffinePower needs (a2 x + y)/(a1 x + y) > 0, got {hi!r}/{lo!r}")
        object.__setattr__(self, "eta3", float(eta3))

    @property
    def length(self) -> float:
        return self.a2 - self.a1


# ---------------------------------------------------------------------------
# quadrature path


def _h1_log(spec: OperatorSpec, n: Nodes):
    """``(eta3 * log|h1|, sign of h1^eta3)`` at the nodes."""
    k = spec.kernel
    if isinstance(k, TwoFactor):
        return -k.beta1 * np.log1p(-k.z1 * n.v) - k.beta2 * np.log1p(-k.z2 * n.v), 1.0
    if isinstance(k, CrossFactor):
        return -k.beta1 * np.log1p(-k.z1 * n.v) - k.beta2 * np.log1p(-k.z2 * n.w), 1.0
    if isinstance(k, MultiFactor):
        acc = np.zeros_like(n.v)
        for b, z in zip(k.betas, k.zs):
            acc -= b * np.log1p(-z * n.v)
        return acc, 1.0
    L = spec.length
    if isinstance(k, WeightedDenominator):
        h1 = L * (1.0 + k.xi * n.v + k.sigma * n.w)
        return spec.eta3 * np.log(h1), 1.0
    # affine: h1 = (a1 x + y) + x L v, the two endpoint values share a sign
    h1 = (k.x * spec.a1 + k.y) + k.x * L * n.v
    if np.any(h1 == 0):
        raise DomainError("h1 vanishes inside the interval")
    if np.all(h1 > 0):
        return spec.eta3 * np.log(h1), 1.0
    if spec.eta3 != int(spec.eta3):
        raise DomainError("h1 <= 0 under a non-integer power eta3")
    sign = np.where(h1 < 0, (-1.0) ** int(spec.eta3), 1.0)
    return spec.eta3 * np.log(np.abs(h1)), sign


def _h2(spec: OperatorSpec, n: Nodes):
    k = spec.kernel
    vw = n.v * n.w
    if isinstance(k, _FACTOR_KERNELS):
        return vw
    if isinstance(k, WeightedDenominator):
        return vw / (1.0 + k.xi * n.v + k.sigma * n.w) ** 2
    return spec.length ** 2 * vw


def quad_operator(spec: OperatorSpec, quad_ctrl: QuadControl = DEFAULT_QUAD,
                  ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """The normalised integral by tanh-sinh quadrature on u = a1 + (a2 - a1) v."""

    def integrand(n: Nodes):
        lh1, sign = _h1_log(spec, n)
        e = ml_multi_array(spec.ml, spec.q * _h2(spec, n), ctrl)
        return sign * np.exp(lh1) * e

    integral = tanh_sinh_beta(integrand, spec.eta1, spec.eta2, quad_ctrl)
    L = spec.length
    return integral * L ** (spec.eta1 + spec.eta2 - 1.0) / beta_fn(spec.eta1, spec.eta2)


# ---------------------------------------------------------------------------
# series paths


def beta_wright(a: float, b: float, ml: MLParams, q: complex, ctrl: SeriesControl) -> complex:
    """``int_0^1 v^(a-1) (1-v)^(b-1) E[q v (1-v)] dv`` as a Wright value.

    Equals 3Psi_{l+1}[(a,1),(b,1),(1,1); (omega_i,eps_i), (a+b,2); q].
    """
    params = WrightParams(((a, 1.0), (b, 1.0), (1.0, 1.0)), ml.wright_lower() + ((a + b, 2.0),))
    return wright_eval(params, q, ctrl)


def _sum(blocks: Iterator[complex], ctrl: SeriesControl, what: str) -> complex:
    value, used, converged = kahan_sum_complex(blocks, ctrl)
    if not converged:
        raise ConvergenceError(f"{what} outer series not converged after {used} terms", value, used)
    return value


def _require(spec: OperatorSpec, kind):
    if not isinstance(spec.kernel, kind):
        raise ParameterError(f"expected a {kind.__name__} kernel, got {type(spec.kernel).__name__}")


def _degree_grouped(spec: OperatorSpec, betas, zs, ctrl, what):
    inner = ctrl.tighter(100)

    def blocks():
        for d, h in enumerate(product_series_blocks(betas, zs)):
            if h == 0.0:
                yield 0j
            else:
                yield h * beta_wright(spec.eta1 + d, spec.eta2, spec.ml, spec.q, inner)

    return _sum(blocks(), ctrl, what) / beta_fn(spec.eta1, spec.eta2)


def thm21_series(spec: OperatorSpec, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Two-factor kernel: Wright series grouped by total degree r + s."""
    _require(spec, TwoFactor)
    k = spec.kernel
    return _degree_grouped(spec, (k.beta1, k.beta2), (k.z1, k.z2), ctrl, "two-factor")


def thm41_series(spec: OperatorSpec, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """n-factor kernel: the Wright parameters depend only on the total degree."""
    _require(spec, MultiFactor)
    k = spec.kernel
    return _degree_grouped(spec, k.betas, k.zs, ctrl, "multi-factor")


def thm22_series(spec: OperatorSpec, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Cross-factor kernel: one Wright value per (r, s), summed by anti-diagonal."""
    _require(spec, CrossFactor)
    k = spec.kernel
    inner = ctrl.tighter(100)
    u = _Lazy(rising_series([k.beta1], [], k.z1))
    v = _Lazy(rising_series([k.beta2], [], k.z2))

    def blocks():
        d = 0
        while True:
            parts = []
            for r in range(d + 1):
                c = u[r] * v[d - r]
                if c != 0.0:
                    parts.append(c * beta_wright(spec.eta1 + r, spec.eta2 + d - r, spec.ml, spec.q, inner))
            yield complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))
            d += 1

    return _sum(blocks(), ctrl, "cross-factor") / beta_fn(spec.eta1, spec.eta2)


def thm23_series(spec: OperatorSpec, ctrl: SeriesControl = DEFAULT_CONTROL, normalized: bool = True) -> complex:
    """Affine kernel: binomial series in ``-(a2-a1) x / (a1 x + y)``.

    With ``normalized=False`` the bare unit-interval form is returned (no
    ``(a2-a1)^(eta1+eta2-1) (a1 x + y)^eta3`` factor, Wright argument ``q``);
    it coincides with the operator only when ``a2 - a1 = 1`` and ``a1 x + y = 1``.
    """
    _require(spec, AffinePower)
    k = spec.kernel
    L = spec.length
    base = k.x * spec.a1 + k.y
    ratio = -L * k.x / base
    eta3 = spec.eta3
    terminating = eta3 >= 0 and eta3 == int(eta3)
    if not terminating and not abs(ratio) < 1:
        raise DomainError(f"binomial series in {ratio!r} diverges: need |(a2-a1) x / (a1 x + y)| < 1")
    inner = ctrl.tighter(100)
    arg = spec.q * L * L if normalized else spec.q

    def blocks():
        for r, c in enumerate(rising_series([-eta3], [], ratio)):
            if c == 0.0:
                if terminating and r > eta3:
                    return
                yield 0j
            else:
                yield c * beta_wright(spec.eta1 + r, spec.eta2, spec.ml, arg, inner)

    s = _sum(blocks(), ctrl, "affine") / beta_fn(spec.eta1, spec.eta2)
    if not normalized:
        return s
    return s * L ** (spec.eta1 + spec.eta2 - 1.0) * _real_power(base, eta3)


def _real_power(base, p):
    if base > 0:
        return base ** p
    if p != int(p):
        raise DomainError("negative base under a non-integer power")
    return base ** int(p)


def thm24_closed(spec: OperatorSpec, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Weighted-denominator kernel: a single Wright value at q / ((xi+1)(sigma+1))."""
    _require(spec, WeightedDenominator)
    k = spec.kernel
    xi1, s1 = k.xi + 1.0, k.sigma + 1.0
    pref = xi1 ** (-spec.eta1) * s1 ** (-spec.eta2) / (beta_fn(spec.eta1, spec.eta2) * spec.length)
    return pref * beta_wright(spec.eta1, spec.eta2, spec.ml, spec.q / (xi1 * s1), ctrl.tighter(100))


_SERIES = {
    TwoFactor: thm21_series,
    CrossFactor: thm22_series,
    AffinePower: thm23_series,
    WeightedDenominator: thm24_closed,
    MultiFactor: thm41_series,
}


def series_operator(spec: OperatorSpec, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Series or closed-form evaluation chosen by the kernel type of ``spec``."""
    return _SERIES[type(spec.kernel)](spec, ctrl)
