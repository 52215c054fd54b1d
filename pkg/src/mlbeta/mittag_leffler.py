"""Multi-index Mittag-Leffler function and its one-index special cases.

    E_{(eps),(omega)}(z) = sum_k z^k / (Gamma(omega_1 + eps_1 k) ... Gamma(omega_l + eps_l k))

The parameter lists always mean the weights that multiply ``k`` inside the
gamma arguments. A single index (l = 1) gives the Wiman function
``E_{lam,mu}`` and, with ``mu = 1``, the classical ``E_lam``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError
from .numeric_kernel import (
    DEFAULT_CONTROL,
    SeriesControl,
    is_nonpositive_integer,
    kahan_sum_complex,
    rgamma,
)

__all__ = [
    "MLParams",
    "ml_multi",
    "ml_multi_array",
    "ml_classical",
    "wiman",
    "ReductionReport",
    "reduction_check",
]


@dataclass(frozen=True)
class MLParams:
    eps: Tuple[float, ...]
    omega: Tuple[float, ...]

    def __post_init__(self):
        eps = tuple(float(e) for e in self.eps)
        omega = tuple(float(w) for w in self.omega)
        if len(eps) != len(omega):
            raise ParameterError(f"eps and omega lengths differ: {len(eps)} vs {len(omega)}")
        if not eps:
            raise ParameterError("at least one (eps, omega) pair is required")
        if any(not (e >= 0) or not math.isfinite(e) for e in eps):
            raise ParameterError(f"eps entries must be finite and >= 0, got {eps}")
        if any(not math.isfinite(w) for w in omega):
            raise ParameterError(f"omega entries must be finite, got {omega}")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "omega", omega)

    @property
    def l(self) -> int:
        return len(self.eps)

    @property
    def sum_eps(self) -> float:
        return math.fsum(self.eps)

    def wright_lower(self) -> Tuple[Tuple[float, float], ...]:
        """The ``(omega_i, eps_i)`` pairs as lower Wright parameters."""
        return tuple(zip(self.omega, self.eps))

    def coefficient(self, k: int) -> float:
        """``1 / prod_i Gamma(omega_i + eps_i k)``, exactly 0 on a pole."""
        return _coefficient(self.eps, self.omega, k)

    def is_pole_term(self, k: int) -> bool:
        return any(is_nonpositive_integer(w + e * k) for e, w in zip(self.eps, self.omega))


@lru_cache(maxsize=1 << 15)
def _coefficient(eps, omega, k):
    c = 1.0
    for e, w in zip(eps, omega):
        c *= rgamma(w + e * k)
    return c


def _check_domain(params: MLParams, max_abs_z: float):
    if params.sum_eps == 0 and max_abs_z >= 1:
        raise DomainError(f"with all eps_i = 0 the series is geometric and needs |z| < 1, got |z| = {max_abs_z:.6g}")


def _terms(params: MLParams, z: complex):
    zk = 1.0 + 0.0j
    k = 0
    while True:
        if not params.is_pole_term(k):
            yield params.coefficient(k) * zk
        if z == 0:
            return
        zk *= z
        k += 1


def ml_multi(params: MLParams, z: complex, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Multi-index Mittag-Leffler function at a single point."""
    z = complex(z)
    _check_domain(params, abs(z))
    value, used, converged = kahan_sum_complex(_terms(params, z), ctrl)
    if not converged:
        raise ConvergenceError(f"Mittag-Leffler series not converged after {used} terms", value, used)
    return value


def ml_multi_array(params: MLParams, z, ctrl: SeriesControl = DEFAULT_CONTROL) -> np.ndarray:
    """Vectorised :func:`ml_multi` over an array of arguments.

    All points share the coefficient sequence; summation is compensated per
    point and stops once every point has seen ``quiet_terms`` quiet terms.
    """
    z = np.asarray(z, dtype=complex)
    if z.size == 0:
        return z.copy()
    _check_domain(params, float(np.max(np.abs(z))))
    s = np.zeros_like(z)
    c = np.zeros_like(z)
    zk = np.ones_like(z)
    quiet = np.zeros(z.shape, dtype=int)
    all_zero = not np.any(z)
    for k in range(ctrl.max_terms):
        if not params.is_pole_term(k):
            term = params.coefficient(k) * zk
            t = s + term
            # Neumaier compensation, real and imaginary parts together
            big = np.abs(s.real) >= np.abs(term.real)
            c_re = np.where(big, (s.real - t.real) + term.real, (term.real - t.real) + s.real)
            big = np.abs(s.imag) >= np.abs(term.imag)
            c_im = np.where(big, (s.imag - t.imag) + term.imag, (term.imag - t.imag) + s.imag)
            c += c_re + 1j * c_im
            s = t
            partial = np.abs(s + c)
            thresh = np.where(partial > 0, ctrl.rel_tol * partial, ctrl.rel_tol)
            quiet = np.where(np.abs(term) <= thresh, quiet + 1, 0)
            if quiet.min() >= ctrl.quiet_terms:
                return s + c
        if all_zero:
            return s + c
        zk = zk * z
    raise ConvergenceError(f"Mittag-Leffler series not converged after {ctrl.max_terms} terms")


def wiman(lam: float, mu: float, z: complex, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Two-parameter function ``sum z^k / Gamma(mu + lam k)``."""
    if not lam >= 0:
        raise ParameterError(f"lambda must be >= 0, got {lam!r}")
    return ml_multi(MLParams((lam,), (mu,)), z, ctrl)


def ml_classical(lam: float, z: complex, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Classical one-parameter function ``sum z^k / Gamma(1 + lam k)``."""
    return wiman(lam, 1.0, z, ctrl)


# ---------------------------------------------------------------------------
# reductions to Bessel, Lommel and Struve functions


@dataclass
class ReductionReport:
    """Ratio of the Mittag-Leffler side to the classical function on a grid.

    For ``bessel`` the expected ratio is exactly 1. For ``lommel`` and
    ``struve`` only constancy across the grid is asserted; ``constant``
    records the measured value.
    """

    kind: str
    orders: Dict[str, float]
    z_grid: List[float]
    lhs: List[float]
    rhs: List[float]
    ratios: List[float]
    constant: float
    spread: float
    constant_ok: bool
    exact_ok: bool = field(default=False)
    tol: float = 1e-9


def _reduction_sides(kind, orders, z, ctrl):
    from . import oracles

    w = -z * z / 4.0
    if kind == "bessel":
        nu = orders["nu"]
        lhs = ml_multi(MLParams((1.0, 1.0), (1.0 + nu, 1.0)), w, ctrl).real
        # stated prefactor (z/2)^(-nu)
        return lhs / (0.5 * z) ** (-nu), oracles.bessel_j(nu, z)
    if kind == "lommel":
        mu, nu = orders["mu"], orders["nu"]
        params = MLParams((1.0, 1.0), ((3.0 - nu + mu) / 2.0, (3.0 + nu + mu) / 2.0))
        lhs = ml_multi(params, w, ctrl).real
        # stated prefactor 4 / z^(mu+1)
        return lhs / (4.0 / z ** (mu + 1.0)), oracles.lommel_s(mu, nu, z)
    if kind == "struve":
        nu = orders["nu"]
        mu = orders.get("mu", nu)
        params = MLParams((1.0, 1.0), (1.5, 1.5 + nu))
        lhs = ml_multi(params, w, ctrl).real
        # stated prefactor 4 / z^(mu+1); the only order present is nu
        return lhs / (4.0 / z ** (mu + 1.0)), oracles.struve_h(nu, z)
    raise ParameterError(f"unknown reduction kind {kind!r}")


def _validate_orders(kind, orders):
    if kind == "bessel":
        if not orders.get("nu", -2) > -1:
            raise DomainError("Bessel reduction needs nu > -1")
    elif kind == "lommel":
        mu, nu = orders.get("mu"), orders.get("nu")
        if mu is None or nu is None:
            raise DomainError("Lommel reduction needs both mu and nu")
        for arg in ((3.0 - nu + mu) / 2.0, (3.0 + nu + mu) / 2.0):
            if is_nonpositive_integer(arg):
                raise DomainError(f"Lommel orders put a gamma argument on a pole ({arg})")
        for j in range(3):
            if (mu + 2 * j + 1) ** 2 == nu * nu:
                raise DomainError("Lommel series denominator vanishes for these orders")
    elif kind == "struve":
        if "nu" not in orders or is_nonpositive_integer(1.5 + orders["nu"]):
            raise DomainError("Struve reduction needs nu with 3/2 + nu off the gamma poles")
    else:
        raise ParameterError(f"unknown reduction kind {kind!r}")


def reduction_check(
    kind: str,
    orders: Dict[str, float],
    z_grid: Sequence[float],
    tol: float = 1e-9,
    ctrl: SeriesControl = DEFAULT_CONTROL,
) -> ReductionReport:
    """Compare the Mittag-Leffler parameterisations against independent series.

    ``lhs`` is the Mittag-Leffler value divided by the stated prefactor,
    ``rhs`` the classical function from its own power series.
    """
    z_grid = [float(z) for z in z_grid]
    if not z_grid:
        raise DomainError("z_grid must be nonempty")
    if any(not (0 < z <= 10) for z in z_grid):
        raise DomainError("z_grid entries must lie in (0, 10]")
    orders = {k: float(v) for k, v in orders.items()}
    _validate_orders(kind, orders)
    lhs, rhs, ratios = [], [], []
    for z in z_grid:
        a, b = _reduction_sides(kind, orders, z, ctrl)
        lhs.append(a)
        rhs.append(b)
        ratios.append(a / b)
    constant = ratios[0]
    spread = max(abs(r - constant) for r in ratios) / abs(constant)
    report = ReductionReport(
        kind=kind,
        orders=orders,
        z_grid=z_grid,
        lhs=lhs,
        rhs=rhs,
        ratios=ratios,
        constant=constant,
        spread=spread,
        constant_ok=spread <= tol,
        tol=tol,
    )
    if kind == "bessel":
        report.exact_ok = max(abs(r - 1.0) for r in ratios) <= 1e-10
    return report
