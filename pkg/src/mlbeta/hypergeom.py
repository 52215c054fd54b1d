"""Classical hypergeometric series on real arguments.

Multiple series are summed by total degree: the degree-``d`` block collects
every multi-index with ``r_1 + ... + r_n = d``, and truncation is decided on
whole blocks with the shared :class:`SeriesControl` rule.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator, List, Sequence

from .errors import ConvergenceError, DomainError, ParameterError
from .numeric_kernel import DEFAULT_CONTROL, SeriesControl, is_nonpositive_integer, kahan_sum_complex

__all__ = [
    "gauss_2f1",
    "kummer_1f1",
    "appell_f1",
    "appell_f3",
    "lauricella_fd",
    "humbert_phi2",
    "gegenbauer",
    "rising_series",
    "product_series_blocks",
    "anti_diagonal_blocks",
]


def _check_c(c):
    if is_nonpositive_integer(c):
        raise ParameterError(f"denominator parameter c = {c!r} is a nonpositive integer")


def _check_unit(name, value):
    if not abs(value) < 1:
        raise DomainError(f"{name} = {value!r} violates |{name}| < 1")


def _sum_real(terms, ctrl, what):
    value, used, converged = kahan_sum_complex(terms, ctrl)
    if not converged:
        raise ConvergenceError(f"{what} not converged after {used} terms", value, used)
    return value.real


def rising_series(nums: Sequence[float], dens: Sequence[float], x: float) -> Iterator[float]:
    """Terms ``prod (num)_k / prod (den)_k * x^k / k!`` for k = 0, 1, ..."""
    t = 1.0
    k = 0
    while True:
        yield t
        r = x / (k + 1)
        for a in nums:
            r *= a + k
        for b in dens:
            r /= b + k
        t *= r
        k += 1


class _Lazy:
    """Indexable view of a generator that materialises on demand."""

    def __init__(self, it):
        self._it = iter(it)
        self._vals: List[float] = []

    def __getitem__(self, j):
        while len(self._vals) <= j:
            self._vals.append(next(self._it))
        return self._vals[j]


def anti_diagonal_blocks(u: Iterator[float], v: Iterator[float]) -> Iterator[float]:
    """``sum_{r+s=d} u_r v_s`` for d = 0, 1, ..."""
    uu, vv = _Lazy(u), _Lazy(v)
    d = 0
    while True:
        yield math.fsum(uu[r] * vv[d - r] for r in range(d + 1))
        d += 1


def product_series_blocks(betas: Sequence[float], zs: Sequence[float]) -> Iterator[float]:
    """Degree-``d`` coefficients of ``prod_i (1 - z_i t)^(-beta_i)``.

    That is ``h_d = sum_{r_1+...+r_n=d} prod_i (beta_i)_{r_i} z_i^{r_i} / r_i!``,
    built by nested convolution of the one-variable binomial series.
    """
    if len(betas) != len(zs):
        raise ParameterError("betas and zs must have equal length")
    n = len(betas)
    if n == 0:
        yield 1.0
        while True:
            yield 0.0
    seqs = [_Lazy(rising_series([b], [], z)) for b, z in zip(betas, zs)]
    # partial[i][d]: coefficient of t^d in the product of the first i+1 factors
    partial: List[List[float]] = [[] for _ in range(n)]
    d = 0
    while True:
        partial[0].append(seqs[0][d])
        for i in range(1, n):
            prev = partial[i - 1]
            s = seqs[i]
            partial[i].append(math.fsum(prev[d - j] * s[j] for j in range(d + 1)))
        yield partial[n - 1][d]
        d += 1


def _ratio_prefix(a, c):
    """``(a)_d / (c)_d`` for d = 0, 1, ..."""
    t = 1.0
    d = 0
    while True:
        yield t
        t *= (a + d) / (c + d)
        d += 1


def _inv_pochhammer(c):
    """``1 / (c)_d`` for d = 0, 1, ..."""
    t = 1.0
    d = 0
    while True:
        yield t
        t /= c + d
        d += 1


def gauss_2f1(a: float, b: float, c: float, x: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Gauss series 2F1(a, b; c; x) for |x| < 1."""
    _check_c(c)
    _check_unit("x", x)
    return _sum_real(rising_series([a, b], [c], x), ctrl, "2F1")


def kummer_1f1(a: float, c: float, x: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Kummer series 1F1(a; c; x); entire in x."""
    _check_c(c)
    return _sum_real(rising_series([a], [c], x), ctrl, "1F1")


def _scaled_blocks(blocks, scale):
    for blk, s in zip(blocks, scale):
        yield blk * s


def appell_f1(a, b1, b2, c, x, y, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Appell F1 = sum (a)_{r+s} (b1)_r (b2)_s / ((c)_{r+s} r! s!) x^r y^s."""
    _check_c(c)
    _check_unit("x", x)
    _check_unit("y", y)
    blocks = anti_diagonal_blocks(rising_series([b1], [], x), rising_series([b2], [], y))
    return _sum_real(_scaled_blocks(blocks, _ratio_prefix(a, c)), ctrl, "F1")


def appell_f3(a1, a2, b1, b2, c, x, y, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Appell F3 = sum (a1)_r (a2)_s (b1)_r (b2)_s / ((c)_{r+s} r! s!) x^r y^s."""
    _check_c(c)
    _check_unit("x", x)
    _check_unit("y", y)
    return _sum_real(_f3_blocks(a1, a2, b1, b2, c, x, y), ctrl, "F3")


def _f3_blocks(a1, a2, b1, b2, c, x, y):
    # (a1)_r (b1)_r x^r / r! grows like r!, so both one-variable factors are
    # divided by another r! and the block picks up d!/(c)_d / binom(d, r).
    u = _Lazy(rising_series([a1, b1], [1.0], x))
    v = _Lazy(rising_series([a2, b2], [1.0], y))
    scale = 1.0
    d = 0
    while True:
        inv_binom = 1.0
        parts = []
        for r in range(d + 1):
            parts.append(u[r] * v[d - r] * inv_binom)
            inv_binom *= (r + 1.0) / (d - r) if r < d else 1.0
        yield scale * math.fsum(parts)
        scale *= (d + 1.0) / (c + d)
        d += 1


def humbert_phi2(b1, b2, c, x, y, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Humbert Phi2 = sum (b1)_r (b2)_s / ((c)_{r+s} r! s!) x^r y^s; entire."""
    _check_c(c)
    blocks = anti_diagonal_blocks(rising_series([b1], [], x), rising_series([b2], [], y))
    return _sum_real(_scaled_blocks(blocks, _inv_pochhammer(c)), ctrl, "Phi2")


def lauricella_fd(a: float, b: Sequence[float], c: float, z: Sequence[float],
                  ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Lauricella F_D in n = len(b) variables, all |z_i| < 1."""
    b = [float(v) for v in b]
    z = [float(v) for v in z]
    if not b or len(b) != len(z):
        raise ParameterError("lauricella_fd needs n >= 1 and len(b) == len(z)")
    _check_c(c)
    for i, zi in enumerate(z):
        _check_unit(f"z_{i + 1}", zi)
    blocks = product_series_blocks(b, z)
    return _sum_real(_scaled_blocks(blocks, _ratio_prefix(a, c)), ctrl, "F_D")


def gegenbauer(r: int, alpha: float, u: float) -> float:
    """Gegenbauer polynomial C_r^(alpha)(u) by the three-term recurrence."""
    if int(r) != r or r < 0:
        raise ParameterError(f"degree must be a nonnegative integer, got {r!r}")
    r = int(r)
    if r == 0:
        return 1.0
    prev, cur = 1.0, 2.0 * alpha * u
    for j in range(2, r + 1):
        prev, cur = cur, (2.0 * u * (j + alpha - 1.0) * cur - (j + 2.0 * alpha - 2.0) * prev) / j
    return cur


def gegenbauer_sequence(alpha: float, u: float) -> Callable[[int], float]:
    """Memoised ``r -> C_r^(alpha)(u)`` sharing one recurrence run."""
    vals = [1.0, 2.0 * alpha * u]

    def get(r):
        while len(vals) <= r:
            j = len(vals)
            vals.append((2.0 * u * (j + alpha - 1.0) * vals[-1] - (j + 2.0 * alpha - 2.0) * vals[-2]) / j)
        return vals[r]

    return get
