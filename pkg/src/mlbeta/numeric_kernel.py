"""Gamma-family primitives and compensated series summation.

``ln_gamma`` is evaluated in double-double arithmetic so that the final
rounding dominates the error budget: at most 2 ulp on [0.5, 100], including
the neighbourhoods of the zeros at 1 and 2 where a plain Stirling or Lanczos
evaluation loses all relative accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

from .errors import DomainError, ParameterError, PoleError

__all__ = [
    "SeriesControl",
    "ln_gamma",
    "rgamma",
    "gamma_fn",
    "pochhammer",
    "ln_pochhammer",
    "beta_fn",
    "kahan_sum_complex",
    "is_nonpositive_integer",
    "two_sum",
]


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for every infinite series in the package.

    Summation stops once ``quiet_terms`` consecutive terms satisfy
    ``|term| <= rel_tol * |partial sum|``.
    """

    rel_tol: float = 1e-14
    max_terms: int = 10_000
    quiet_terms: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ParameterError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ParameterError(f"max_terms must be a positive integer, got {self.max_terms!r}")
        if int(self.quiet_terms) != self.quiet_terms or self.quiet_terms < 1:
            raise ParameterError(f"quiet_terms must be a positive integer, got {self.quiet_terms!r}")

    def tighter(self, factor: float = 100.0) -> "SeriesControl":
        """Control for nested series: tolerance divided by ``factor``."""
        return SeriesControl(max(self.rel_tol / factor, 1e-18), self.max_terms, self.quiet_terms)


DEFAULT_CONTROL = SeriesControl()

# ---------------------------------------------------------------------------
# double-double helpers (error-free transformations)

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a: float, b: float) -> Tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(ah, al, bh, bl):
    s1, s2 = two_sum(ah, bh)
    t1, t2 = two_sum(al, bl)
    s2 += t1
    s1, s2 = _fast_two_sum(s1, s2)
    s2 += t2
    return _fast_two_sum(s1, s2)


def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    e += ah * bl + al * bh
    return _fast_two_sum(p, e)


def _dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = _dd_mul(q1, 0.0, bh, bl)
    rh, rl = _dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = _dd_mul(q2, 0.0, bh, bl)
    rh, rl = _dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = _fast_two_sum(q1, q2)
    return _dd_add(q1, q2, q3, 0.0)


_LN2 = (0.6931471805599453, 2.3190468138462996e-17)
_HALF_LN_2PI = (0.9189385332046728, -3.8782941580672414e-17)
_LN_PI = (1.1447298858494002, 1.0265951162707826e-17)
_EULER = (0.5772156649015329, -4.942915152430645e-18)
_ONE_MINUS_EULER = (0.42278433509846713, 4.942915152430645e-18)
_HALF_ZETA2 = (0.8224670334241132, 1.520336175199238e-17)
_HALF_ZETA2_M1 = (0.3224670334241132, 1.520336175199238e-17)
_SQRT_HALF = 0.7071067811865476

# (-1)^k zeta(k)/k and (-1)^k (zeta(k)-1)/k for k = 3..31 (tools/gamma_tables.py)
_TAYLOR_AT_1 = (
    -0.40068563438653143, 0.27058080842778454, -0.20738555102867398, 0.1695571769974082,
    -0.1440498967688461, 0.12550966952474304, -0.11133426586956469, 0.1000994575127818,
    -0.09095401714582904, 0.083353840546109, -0.0769325164113522, 0.07143294629536133,
    -0.06666870588242046, 0.06250095514121304, -0.058823978658684585, 0.055555767627403614,
    -0.05263167937961666, 0.05000004769810169, -0.047619070330142226, 0.04545455629320467,
    -0.04347826605304026, 0.04166666915034121, -0.04000000119214014, 0.03846153903467518,
    -0.037037037312989324, 0.035714285847333355, -0.034482758684919304, 0.03333333336437758,
    -0.03225806453115042,
)
_TAYLOR_AT_2 = (
    -0.0673523010531981, 0.020580808427784546, -0.007385551028673986, 0.0028905103307415234,
    -0.001192753911703261, 0.0005096695247430425, -0.00022315475845357939, 9.945751278180853e-05,
    -4.492623673813314e-05, 2.050721277567069e-05, -9.439488275268397e-06, 4.374866789907488e-06,
    -2.039215753801366e-06, 9.55141213040742e-07, -4.492469198764566e-07, 2.1207184805554665e-07,
    -1.0043224823968099e-07, 4.7698101693639804e-08, -2.2711094608943164e-08, 1.0838659214896955e-08,
    -5.183475041970047e-09, 2.4836745438024785e-09, -1.1921401405860912e-09, 5.731367241678862e-10,
    -2.7595228851242334e-10, 1.330476437424449e-10, -6.4229645638381e-11, 3.1044247747322276e-11,
    -1.5021384080754142e-11,
)
# B_{2k} / (2k (2k-1)), k = 1..9
_STIRLING = (
    0.08333333333333333, -0.002777777777777778, 0.0007936507936507937, -0.0005952380952380953,
    0.0008417508417508417, -0.0019175269175269176, 0.00641025641025641, -0.029550653594771242,
    0.17964437236883057,
)
_STIRLING_MIN = 15.0
_ROOT_WINDOW = 0.2


def _dd_log(x):
    """log(x) for a positive double, as a double-double."""
    m, k = math.frexp(x)
    if m < _SQRT_HALF:
        m *= 2.0
        k -= 1
    dh, dl = two_sum(m, 1.0)
    sh, sl = _dd_div(m - 1.0, 0.0, dh, dl)
    s2h, s2l = _dd_mul(sh, sl, sh, sl)
    s3h, s3l = _dd_mul(s2h, s2l, sh, sl)
    c3h, c3l = _dd_div(s3h, s3l, 3.0, 0.0)
    w = s2h
    tail = 0.0
    for j in range(12, -1, -1):
        tail = tail * w + 1.0 / (2 * j + 5)
    tail *= 2.0 * s3h * w
    rh, rl = _dd_add(2.0 * sh, 2.0 * sl, 2.0 * c3h, 2.0 * c3l)
    rh, rl = _dd_add(rh, rl, tail, 0.0)
    if k:
        kh, kl = _two_prod(float(k), _LN2[0])
        kl += k * _LN2[1]
        rh, rl = _dd_add(rh, rl, kh, kl)
    return rh, rl


def _dd_log_dd(h, l):
    rh, rl = _dd_log(h)
    return _dd_add(rh, rl, l / h, 0.0)


def _stirling_dd(zh, zl):
    """ln Gamma(z) for a double-double z >= 15."""
    lh, ll = _dd_log_dd(zh, zl)
    mh, ml = _dd_add(zh, zl, -0.5, 0.0)
    th, tl = _dd_mul(mh, ml, lh, ll)
    th, tl = _dd_add(th, tl, -zh, -zl)
    th, tl = _dd_add(th, tl, *_HALF_LN_2PI)
    r = 1.0 / zh
    r2 = r * r
    corr = 0.0
    for c in reversed(_STIRLING):
        corr = corr * r2 + c
    return _dd_add(th, tl, corr * r, 0.0)


def _taylor_root(e, lead, second, tail_coeffs):
    # ln Gamma(root + e) = e * (lead + second*e + e^2 * tail(e)), e exact
    tail = 0.0
    for c in reversed(tail_coeffs):
        tail = tail * e + c
    ph, pl = _dd_mul(second[0], second[1], e, 0.0)
    ph, pl = _dd_add(lead[0], lead[1], ph, pl)
    ph, pl = _dd_add(ph, pl, tail * e * e, 0.0)
    return _dd_mul(ph, pl, e, 0.0)


def _ln_gamma_positive_dd(x):
    if x == 1.0 or x == 2.0:
        return 0.0, 0.0
    if abs(x - 1.0) <= _ROOT_WINDOW:
        return _taylor_root(x - 1.0, (-_EULER[0], -_EULER[1]), _HALF_ZETA2, _TAYLOR_AT_1)
    if abs(x - 2.0) <= _ROOT_WINDOW:
        return _taylor_root(x - 2.0, _ONE_MINUS_EULER, _HALF_ZETA2_M1, _TAYLOR_AT_2)
    if x >= _STIRLING_MIN:
        return _stirling_dd(x, 0.0)
    # shift up: ln G(x) = ln G(x+n) - ln[x (x+1) ... (x+n-1)]
    n = int(math.ceil(_STIRLING_MIN - x))
    ph, pl = x, 0.0
    for j in range(1, n):
        fh, fl = two_sum(x, float(j))
        ph, pl = _dd_mul(ph, pl, fh, fl)
    zh, zl = two_sum(x, float(n))
    gh, gl = _stirling_dd(zh, zl)
    lh, ll = _dd_log_dd(ph, pl)
    return _dd_add(gh, gl, -lh, -ll)


def is_nonpositive_integer(x: float, tol: float = 1e-12) -> bool:
    """True when ``x`` is within ``tol`` (inclusive) of 0, -1, -2, ..."""
    return x <= 0.5 and abs(x - round(x)) <= tol


def _gamma_sign(x):
    if x > 0:
        return 1
    return -1 if math.floor(x) % 2 == 1 else 1


def _ln_gamma_dd(x):
    if math.isnan(x):
        raise DomainError("ln_gamma of NaN")
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    if x > 0:
        h, l = _ln_gamma_positive_dd(x)
        return h, l, 1
    # reflection: ln|G(x)| = ln pi - ln|sin(pi x)| - ln|G(1-x)|
    r = x - round(x)
    s = abs(math.sin(math.pi * r))
    h, l = _ln_gamma_positive_dd(1.0 - x)
    h, l = _dd_add(_LN_PI[0], _LN_PI[1], -h, -l)
    h, l = _dd_add(h, l, -math.log(s), 0.0)
    return h, l, _gamma_sign(x)


def ln_gamma(x: float) -> Tuple[float, int]:
    """Return ``(ln|Gamma(x)|, sign)`` so that ``Gamma(x) = sign * exp(value)``.

    Raises :class:`PoleError` at 0, -1, -2, ...
    """
    x = float(x)
    if math.isinf(x):
        if x > 0:
            return math.inf, 1
        raise DomainError("ln_gamma(-inf) is undefined")
    h, l, sign = _ln_gamma_dd(x)
    return h + l, sign


def gamma_fn(x: float) -> float:
    """Gamma(x) built from :func:`ln_gamma`; overflows to +-inf past ~171."""
    lg, sign = ln_gamma(x)
    if lg > 709.78:
        return sign * math.inf
    return sign * math.exp(lg)


def rgamma(x: float) -> float:
    """1/Gamma(x), with an exact 0.0 at the poles (entire function)."""
    x = float(x)
    if is_nonpositive_integer(x):
        return 0.0
    if math.isinf(x):
        return 0.0 if x > 0 else math.nan
    lg, sign = ln_gamma(x)
    return sign * math.exp(-lg)


def ln_pochhammer(a: float, n: int) -> Tuple[float, int]:
    """``(ln|(a)_n|, sign)``; ``(-inf, 0)`` when the product vanishes."""
    if n < 0:
        raise ParameterError(f"n must be nonnegative, got {n!r}")
    if n == 0:
        return 0.0, 1
    if is_nonpositive_integer(a, 0.0) and a + n - 1 >= 0:
        return -math.inf, 0
    if is_nonpositive_integer(a, 0.0) or is_nonpositive_integer(a + n, 0.0):
        # fall back to the explicit product; no gamma quotient is defined
        p = 1.0
        for j in range(n):
            p *= a + j
        return math.log(abs(p)), (1 if p > 0 else -1)
    lg1, s1 = ln_gamma(a + n)
    lg0, s0 = ln_gamma(a)
    return lg1 - lg0, s1 * s0


_DIRECT_POCHHAMMER = 256


def pochhammer(a: float, n: int) -> float:
    """Rising factorial ``a (a+1) ... (a+n-1)``; empty product is 1."""
    if int(n) != n or n < 0:
        raise ParameterError(f"n must be a nonnegative integer, got {n!r}")
    n = int(n)
    if n <= _DIRECT_POCHHAMMER:
        p = 1.0
        for j in range(n):
            p *= a + j
            if abs(p) > 1e290:
                break
        else:
            return p
    lp, sign = ln_pochhammer(a, n)
    if sign == 0:
        return 0.0
    return sign * math.exp(lp) if lp < 709.78 else sign * math.inf


def _digamma_rough(x):
    # good to ~1e-10; only used to absorb the rounding of x + y in beta_fn
    acc = 0.0
    while x < 6.0:
        acc -= 1.0 / x
        x += 1.0
    r2 = 1.0 / (x * x)
    return acc + math.log(x) - 0.5 / x - r2 * (1.0 / 12 - r2 * (1.0 / 120 - r2 / 252))


def beta_fn(x: float, y: float) -> float:
    """B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y) for x, y > 0."""
    if not (x > 0 and y > 0):
        raise DomainError(f"beta_fn requires x > 0 and y > 0, got ({x!r}, {y!r})")
    x, y = (x, y) if x <= y else (y, x)
    xh, xl, _ = _ln_gamma_dd(float(x))
    yh, yl, _ = _ln_gamma_dd(float(y))
    s, e = two_sum(float(x), float(y))
    sh, sl, _ = _ln_gamma_dd(s)
    if e:
        sl += _digamma_rough(s) * e
    th, tl = _dd_add(xh, xl, yh, yl)
    th, tl = _dd_add(th, tl, -sh, -sl)
    return math.exp(th) * (1.0 + tl)


def kahan_sum_complex(terms: Iterable[complex], ctrl: SeriesControl = DEFAULT_CONTROL):
    """Compensated summation of a lazily generated series.

    Returns ``(value, terms_used, converged)``. Non-convergence is signalled by
    the flag, never by an exception.
    """
    s_re = c_re = s_im = c_im = 0.0
    used = 0
    quiet = 0
    rel_tol = ctrl.rel_tol
    for term in terms:
        used += 1
        tr = term.real
        ti = term.imag
        s_re, e = two_sum(s_re, tr)
        c_re += e
        s_im, e = two_sum(s_im, ti)
        c_im += e
        mag = abs(complex(tr, ti))
        partial = abs(complex(s_re + c_re, s_im + c_im))
        threshold = rel_tol * partial if partial else rel_tol
        if mag <= threshold:
            quiet += 1
            if quiet >= ctrl.quiet_terms:
                return complex(s_re + c_re, s_im + c_im), used, True
        else:
            quiet = 0
        if used >= ctrl.max_terms:
            break
    value = complex(s_re + c_re, s_im + c_im)
    # a finite sequence that ran out is summed exactly
    return value, used, used < ctrl.max_terms
