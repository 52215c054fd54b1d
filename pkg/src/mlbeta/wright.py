"""Generalized Wright hypergeometric function mPsin.

    Psi(x) = sum_k  prod_j Gamma(lam_j + G_j k) / prod_j Gamma(mu_j + H_j k) * x^k / k!

Terms are produced incrementally. Gamma factors with a small positive integer
weight are advanced by exact rising products once their argument is positive;
the remaining factors (non-integer weights, arguments still left of the
origin) are evaluated directly through a memoised ``ln_gamma``. The running
term is kept as a normalised mantissa with a separate binary exponent, so
neither huge gamma ratios nor large ``|x|**k`` overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

from .errors import ConvergenceError, ParameterError, PoleError
from .numeric_kernel import (
    DEFAULT_CONTROL,
    SeriesControl,
    _LN2,
    _two_prod,
    is_nonpositive_integer,
    kahan_sum_complex,
    ln_gamma,
)

__all__ = ["WrightParams", "delta", "radius", "wright_eval", "wright_terms"]

Pair = Tuple[float, float]

_MAX_INT_WEIGHT = 16
_INV_LN2 = 1.0 / _LN2[0]


@dataclass(frozen=True)
class WrightParams:
    """Upper pairs ``(lam_j, G_j)`` and lower pairs ``(mu_j, H_j)``.

    Upper weights must be positive. Lower weights may be zero: a zero weight
    contributes the constant ``1/Gamma(mu_j)`` to every term, which is how
    Mittag-Leffler parameter lists with some ``eps_i = 0`` flow in.
    """

    upper: Tuple[Pair, ...]
    lower: Tuple[Pair, ...]

    def __post_init__(self):
        upper = tuple((float(a), float(w)) for a, w in self.upper)
        lower = tuple((float(a), float(w)) for a, w in self.lower)
        for a, w in upper:
            if not w > 0 or not math.isfinite(a):
                raise ParameterError(f"upper pair ({a}, {w}) needs a finite value and weight > 0")
        for a, w in lower:
            if not w >= 0 or not math.isfinite(a):
                raise ParameterError(f"lower pair ({a}, {w}) needs a finite value and weight >= 0")
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)

    @property
    def delta(self) -> float:
        return delta(self)


def delta(params: WrightParams) -> float:
    """Convergence index ``1 + sum(H) - sum(G)``."""
    return 1.0 + math.fsum(w for _, w in params.lower) - math.fsum(w for _, w in params.upper)


def radius(params: WrightParams) -> float:
    """Radius of convergence: infinite when delta > 0, else prod G^-G prod H^H."""
    d = delta(params)
    if d > 1e-14:
        return math.inf
    if d < -1e-14:
        return 0.0
    log_rho = -math.fsum(w * math.log(w) for _, w in params.upper)
    log_rho += math.fsum(w * math.log(w) for _, w in params.lower if w > 0)
    return math.exp(log_rho)


_cached_ln_gamma = lru_cache(maxsize=1 << 16)(ln_gamma)


class _Factor:
    __slots__ = ("a", "w", "num", "int_w", "incremental")

    def __init__(self, a, w, num):
        self.a = a
        self.w = w
        self.num = num
        self.int_w = int(w) if (w == int(w) and 1 <= w <= _MAX_INT_WEIGHT) else 0
        self.incremental = False


def _scaled(mant, exp2, log_mag, sign):
    j = round(log_mag * _INV_LN2)
    ph, pl = _two_prod(float(j), _LN2[0])
    f = (log_mag - ph) - pl - j * _LN2[1]
    m = mant * (sign * math.exp(f))
    e = exp2 + j
    return complex(math.ldexp(m.real, e), math.ldexp(m.imag, e))


def wright_terms(params: WrightParams, x: complex) -> Iterator[Tuple[int, complex]]:
    """Yield ``(k, term_k)`` for every k whose term is not structurally zero.

    A term is structurally zero when a lower gamma argument sits on a pole.
    Upper poles raise :class:`PoleError`.
    """
    x = complex(x)
    factors = [_Factor(a, w, True) for a, w in params.upper]
    factors += [_Factor(a, w, False) for a, w in params.lower]
    factors.append(_Factor(1.0, 1.0, False))  # k!

    const_log = 0.0
    const_sign = 1
    moving = []
    for f in factors:
        if f.w == 0:
            if is_nonpositive_integer(f.a):
                return  # 1/Gamma(pole) kills every term
            lg, s = _cached_ln_gamma(f.a)
            const_log += lg if f.num else -lg
            const_sign *= s
        else:
            moving.append(f)

    mant = 1.0 + 0.0j
    exp2 = 0
    k = 0
    while True:
        log_mag = const_log
        sign = const_sign
        zero = False
        for f in moving:
            if f.incremental:
                continue
            arg = f.a + f.w * k
            if is_nonpositive_integer(arg):
                if f.num:
                    raise PoleError(f"upper Wright parameter hits a gamma pole at k={k} (argument {arg!r})")
                zero = True
                continue
            lg, s = _cached_ln_gamma(arg)
            if f.int_w and arg > 0:
                f.incremental = True
                const_log += lg if f.num else -lg
            log_mag += lg if f.num else -lg
            sign *= s
        if not zero:
            yield k, _scaled(mant, exp2, log_mag, sign)
        if x == 0:
            return
        # advance k -> k + 1
        for f in moving:
            if f.incremental:
                base = f.a + f.w * k
                p = base
                for i in range(1, f.int_w):
                    p *= base + i
                if f.num:
                    mant *= p
                else:
                    mant /= p
        mant *= x
        m_abs = abs(mant)
        if m_abs == 0.0 or not math.isfinite(m_abs):
            raise ConvergenceError(f"Wright term mantissa degenerated at k={k}")
        e = math.frexp(m_abs)[1]
        mant = complex(math.ldexp(mant.real, -e), math.ldexp(mant.imag, -e))
        exp2 += e
        k += 1


def wright_eval(params: WrightParams, x: complex, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Sum the Wright series at ``x``.

    Raises :class:`ParameterError` when delta < 0, :class:`ConvergenceError`
    when delta = 0 and ``|x|`` reaches the radius, or when ``ctrl.max_terms``
    is exhausted.
    """
    d = delta(params)
    if d < -1e-14:
        raise ParameterError(f"Wright series diverges: delta = {d:.6g} < 0")
    x = complex(x)
    if d <= 1e-14:
        rho = radius(params)
        if abs(x) >= rho:
            raise ConvergenceError(f"|x| = {abs(x):.6g} outside the radius {rho:.6g} of a balanced Wright series")
    value, used, converged = kahan_sum_complex((t for _, t in wright_terms(params, x)), ctrl)
    if not converged:
        raise ConvergenceError(f"Wright series not converged after {used} terms", value, used)
    return value


def make_params(upper: Sequence[Pair], lower: Sequence[Pair]) -> WrightParams:
    return WrightParams(tuple(upper), tuple(lower))
