"""Tanh-sinh quadrature for beta-weighted integrals on (0, 1).

    I = int_0^1 v^(a-1) (1-v)^(b-1) f(v) dv,   a, b > 0

With ``v = 1 / (1 + exp(-pi sinh t))`` the endpoint powers become part of a
weight that decays double-exponentially in ``t``. ``v`` and ``1 - v`` are
formed separately (and their logarithms through ``logaddexp``) so nodes
crowded against either endpoint keep full relative precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ParameterError, QuadratureError

__all__ = ["QuadControl", "DEFAULT_QUAD", "Nodes", "tanh_sinh_beta"]


@dataclass(frozen=True)
class QuadControl:
    """Refinement policy: halve the step until two levels agree to ``tol``."""

    tol: float = 1e-11
    max_nodes: int = 1 << 20
    h0: float = 0.5
    min_levels: int = 2

    def __post_init__(self):
        if not (0 < self.tol < 1):
            raise ParameterError(f"tol must lie in (0, 1), got {self.tol!r}")
        if self.max_nodes < 16 or self.h0 <= 0:
            raise ParameterError("max_nodes must be >= 16 and h0 > 0")


DEFAULT_QUAD = QuadControl()


@dataclass
class Nodes:
    """Abscissae handed to the integrand: ``v``, ``w = 1 - v`` and their logs."""

    v: np.ndarray
    w: np.ndarray
    log_v: np.ndarray
    log_w: np.ndarray


# weight below exp(-_CUT) of the largest one is dropped
_CUT = 45.0


def _t_max(a, b):
    s = _CUT / (math.pi * min(a, b, 1.0))
    return min(max(math.asinh(s), 3.0), 6.5)


def _level_nodes(t, a, b):
    s = math.pi * np.sinh(t)
    log_v = -np.logaddexp(0.0, -s)
    log_w = -np.logaddexp(0.0, s)
    log_wt = np.log(math.pi * np.cosh(t)) + a * log_v + b * log_w
    return log_v, log_w, log_wt


def tanh_sinh_beta(
    func: Callable[[Nodes], np.ndarray],
    a: float,
    b: float,
    ctrl: QuadControl = DEFAULT_QUAD,
) -> complex:
    """Integrate ``v^(a-1) (1-v)^(b-1) func(v)`` over (0, 1).

    ``func`` receives a :class:`Nodes` batch and returns complex (or real)
    values of the same shape. Raises :class:`QuadratureError` when the node
    cap is reached before two successive levels agree.
    """
    if not (a > 0 and b > 0):
        raise ParameterError(f"beta exponents need a, b > 0, got ({a!r}, {b!r})")
    t_max = _t_max(a, b)
    h = ctrl.h0
    n_half = int(math.ceil(t_max / h))
    t = h * np.arange(-n_half, n_half + 1, dtype=float)
    total = _partial(func, t, a, b)
    estimate = h * total
    used = t.size
    level = 0
    while True:
        level += 1
        h *= 0.5
        # new abscissae are the odd multiples of the halved step
        t = h * np.arange(-2 * n_half + 1, 2 * n_half, 2, dtype=float)
        n_half *= 2
        used += t.size
        total += _partial(func, t, a, b)
        new = h * total
        diff = abs(new - estimate)
        estimate = new
        if level >= ctrl.min_levels and diff <= ctrl.tol * (1.0 + abs(new)):
            return complex(new)
        if used * 2 > ctrl.max_nodes:
            raise QuadratureError(
                f"tanh-sinh not converged at {used} nodes (last change {diff:.3g})", complex(new), used)


def _partial(func, t, a, b):
    log_v, log_w, log_wt = _level_nodes(t, a, b)
    keep = log_wt > log_wt.max() - _CUT - 30.0
    log_v, log_w, log_wt = log_v[keep], log_w[keep], log_wt[keep]
    nodes = Nodes(np.exp(log_v), np.exp(log_w), log_v, log_w)
    vals = np.asarray(func(nodes))
    if vals.shape != log_v.shape:
        vals = np.broadcast_to(vals, log_v.shape)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("integrand produced non-finite values")
    wt = np.exp(log_wt)
    s = np.sum(wt * vals.real)
    if np.iscomplexobj(vals):
        return complex(s, np.sum(wt * vals.imag))
    return complex(s, 0.0)
