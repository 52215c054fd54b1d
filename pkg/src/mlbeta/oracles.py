"""Independent reference evaluations.

Nothing here touches the production series engines or their truncation
logic. Every oracle is a plain fixed-cap summation built only on the
numeric_kernel primitives, accumulated with ``math.fsum``. They exist to pin
reference constants and to cross-check the fast paths.
"""

from __future__ import annotations

import itertools
import math
import warnings
from typing import Mapping, Sequence

from .errors import ParameterError
from .numeric_kernel import is_nonpositive_integer, ln_gamma, ln_pochhammer, rgamma

__all__ = [
    "CapWarning",
    "oracle_double_sum",
    "bessel_j",
    "lommel_s",
    "struve_h",
    "ORACLE_KINDS",
]

ORACLE_KINDS = ("F1", "F3", "Phi2", "FD", "ML", "Wright")


class CapWarning(RuntimeWarning):
    """The last summed block is not negligible against the total."""


def _cfsum(values):
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def _warn_if_short(last_block, total, kind, cap):
    if abs(last_block) > 1e-15 * abs(total):
        warnings.warn(f"{kind} oracle: last block {abs(last_block):.3g} exceeds 1e-15 of the sum "
                      f"(cap {cap} too small)", CapWarning, stacklevel=3)


def _square_sum(kind, coef, x, y, cap):
    terms = []
    edge = []
    xp = [x ** r for r in range(cap)]
    yp = [y ** s for s in range(cap)]
    for r in range(cap):
        for s in range(cap):
            t = coef(r, s) * xp[r] * yp[s]
            terms.append(t)
            if r == cap - 1 or s == cap - 1:
                edge.append(t)
    total = math.fsum(terms)
    _warn_if_short(math.fsum(edge), total, kind, cap)
    return total


def _log_poch_table(a, n):
    return [ln_pochhammer(a, j) for j in range(n)]


def _log_coef(num, den):
    """``prod num / prod den`` from ``(log, sign)`` pairs, safe past overflow."""
    sign = 1
    lg = 0.0
    for v, sg in num:
        sign *= sg
        lg += v
    for v, sg in den:
        sign *= sg
        lg -= v
    if sign == 0:
        return 0.0
    return sign * math.exp(lg)


def _appell_f1(p, cap):
    a, b1, b2, c, x, y = p
    la, lc = _log_poch_table(a, 2 * cap), _log_poch_table(c, 2 * cap)
    lb1, lb2, lf = _log_poch_table(b1, cap), _log_poch_table(b2, cap), _log_poch_table(1.0, cap)
    return _square_sum(
        "F1", lambda r, s: _log_coef((la[r + s], lb1[r], lb2[s]), (lc[r + s], lf[r], lf[s])), x, y, cap)


def _appell_f3(p, cap):
    a1, a2, b1, b2, c, x, y = p
    lc = _log_poch_table(c, 2 * cap)
    la1, la2 = _log_poch_table(a1, cap), _log_poch_table(a2, cap)
    lb1, lb2, lf = _log_poch_table(b1, cap), _log_poch_table(b2, cap), _log_poch_table(1.0, cap)
    return _square_sum(
        "F3", lambda r, s: _log_coef((la1[r], la2[s], lb1[r], lb2[s]), (lc[r + s], lf[r], lf[s])), x, y, cap)


def _humbert_phi2(p, cap):
    b1, b2, c, x, y = p
    lc = _log_poch_table(c, 2 * cap)
    lb1, lb2, lf = _log_poch_table(b1, cap), _log_poch_table(b2, cap), _log_poch_table(1.0, cap)
    return _square_sum("Phi2", lambda r, s: _log_coef((lb1[r], lb2[s]), (lc[r + s], lf[r], lf[s])), x, y, cap)


def _lauricella_fd(p, cap):
    if len(p) < 4 or len(p) % 2:
        raise ParameterError("FD oracle params are (a, c, b_1..b_n, z_1..z_n)")
    a, c = p[0], p[1]
    n = (len(p) - 2) // 2
    bs, zs = p[2:2 + n], p[2 + n:]
    pa, pc, fact = _log_poch_table(a, cap + 1), _log_poch_table(c, cap + 1), _log_poch_table(1.0, cap + 1)
    pb = [_log_poch_table(b, cap + 1) for b in bs]
    zp = [[z ** j for j in range(cap + 1)] for z in zs]
    terms, top = [], []
    for idx in itertools.product(range(cap + 1), repeat=n):
        d = sum(idx)
        if d > cap:
            continue
        t = _log_coef([pa[d]] + [pb[i][r] for i, r in enumerate(idx)], [pc[d]] + [fact[r] for r in idx])
        for i, r in enumerate(idx):
            t *= zp[i][r]
        terms.append(t)
        if d == cap:
            top.append(t)
    total = math.fsum(terms)
    _warn_if_short(math.fsum(top), total, "FD", cap)
    return total


def _ml(p, cap):
    eps, omega, z = p["eps"], p["omega"], complex(p["z"])
    terms = []
    zk = 1.0 + 0.0j
    for k in range(cap):
        c = 1.0
        for e, w in zip(eps, omega):
            c *= rgamma(w + e * k)
        terms.append(c * zk)
        zk *= z
    total = _cfsum(terms)
    _warn_if_short(terms[-1], total, "ML", cap)
    return total


def _wright(p, cap):
    upper, lower, x = p["upper"], p["lower"], complex(p["x"])
    terms = []
    unit = x / abs(x) if x != 0 else 1.0 + 0.0j
    phase = 1.0 + 0.0j
    for k in range(cap):
        if k:
            phase *= unit
        if any(is_nonpositive_integer(a + w * k) for a, w in lower):
            terms.append(0j)
            continue
        log_mag, sign = 0.0, 1
        for a, w in upper:
            lg, s = ln_gamma(a + w * k)
            log_mag += lg
            sign *= s
        for a, w in list(lower) + [(1.0, 1.0)]:
            lg, s = ln_gamma(a + w * k)
            log_mag -= lg
            sign *= s
        if x == 0:
            terms.append(complex(sign * math.exp(log_mag)) if k == 0 else 0j)
            continue
        log_mag += k * math.log(abs(x))
        terms.append(sign * math.exp(log_mag) * phase)
    total = _cfsum(terms)
    _warn_if_short(terms[-1], total, "Wright", cap)
    return total


_DISPATCH = {
    "F1": _appell_f1,
    "F3": _appell_f3,
    "Phi2": _humbert_phi2,
    "FD": _lauricella_fd,
    "ML": _ml,
    "Wright": _wright,
}


def oracle_double_sum(kind: str, params, degree_cap: int):
    """Brute-force reference value.

    ``params`` is a flat sequence for the hypergeometric kinds
    (F1: a,b1,b2,c,x,y; F3: a1,a2,b1,b2,c,x,y; Phi2: b1,b2,c,x,y;
    FD: a,c,b_1..b_n,z_1..z_n) and a mapping for ML (eps, omega, z) and
    Wright (upper, lower, x). Double series are summed over the full
    ``cap x cap`` square, FD over total degree <= cap, the single series over
    k < cap. Emits :class:`CapWarning` when the cap looks insufficient.
    """
    if kind not in _DISPATCH:
        raise ParameterError(f"unknown oracle kind {kind!r}; choose from {ORACLE_KINDS}")
    if int(degree_cap) != degree_cap or degree_cap < 1:
        raise ParameterError(f"degree_cap must be a positive integer, got {degree_cap!r}")
    if kind in ("ML", "Wright"):
        if not isinstance(params, Mapping):
            raise ParameterError(f"{kind} oracle expects a mapping of parameters")
    else:
        params = [float(v) for v in params]
    return _DISPATCH[kind](params, int(degree_cap))


# ---------------------------------------------------------------------------
# classical functions from their defining power series


def _alternating_sum(term, z, min_terms):
    terms = []
    k = 0
    while True:
        t = term(k)
        terms.append(t)
        k += 1
        if k > min_terms and abs(t) <= 1e-18 * abs(math.fsum(terms)):
            break
        if k > 2000:
            break
    return math.fsum(terms)


def bessel_j(nu: float, z: float) -> float:
    """J_nu(z) = sum (-1)^k (z/2)^(2k+nu) / (k! Gamma(k+nu+1)), z > 0, nu > -1."""
    lh = math.log(z / 2.0)

    def term(k):
        lg1, _ = ln_gamma(k + 1.0)
        lg2, s = ln_gamma(k + nu + 1.0)
        return (-1) ** k * s * math.exp((2 * k + nu) * lh - lg1 - lg2)

    return _alternating_sum(term, z, int(z) + 2)


def lommel_s(mu: float, nu: float, z: float) -> float:
    """Lommel s_{mu,nu}(z) = sum (-1)^k z^(mu+1+2k) / prod_{j<=k} ((mu+2j+1)^2 - nu^2)."""
    terms = []
    t = z ** (mu + 1.0) / ((mu + 1.0) ** 2 - nu * nu)
    terms.append(t)
    k = 0
    while True:
        k += 1
        t *= -z * z / ((mu + 2 * k + 1.0) ** 2 - nu * nu)
        terms.append(t)
        if k > z + 2 and abs(t) <= 1e-18 * abs(math.fsum(terms)):
            break
        if k > 2000:
            break
    return math.fsum(terms)


def struve_h(nu: float, z: float) -> float:
    """H_nu(z) = (z/2)^(nu+1) sum (-1)^k (z/2)^(2k) / (Gamma(k+3/2) Gamma(k+nu+3/2))."""
    lh = math.log(z / 2.0)

    def term(k):
        lg1, s1 = ln_gamma(k + 1.5)
        lg2, s2 = ln_gamma(k + nu + 1.5)
        return (-1) ** k * s1 * s2 * math.exp((2 * k + nu + 1.0) * lh - lg1 - lg2)

    return _alternating_sum(term, z, int(z) + 2)
