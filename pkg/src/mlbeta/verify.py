"""Identity sweeps: quadrature versus series on parameter grids.

Each identity id names one family of cases. A case evaluates a left side
(usually quadrature) and a right side (series or closed form) and passes when

    rel_err = |lhs - rhs| / (1 + |rhs|) <= tol

Grid points rejected by a constructor's domain checks are skipped and
counted; evaluation failures are recorded as failed cases with an error tag.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import beta_operator as bo
from . import genfun as gf
from .errors import MLBetaError, ParameterError
from .mittag_leffler import MLParams, reduction_check
from .numeric_kernel import DEFAULT_CONTROL, SeriesControl
from .oracles import oracle_double_sum
from .quadrature import DEFAULT_QUAD, QuadControl

__all__ = [
    "THEOREM_IDS",
    "IdentityCase",
    "SweepReport",
    "default_grid",
    "default_tolerances",
    "run_sweep",
    "parse_suite",
    "oracle_double_sum",
    "FORMAT_VERSION",
]

FORMAT_VERSION = 1

THEOREM_IDS = (
    "T2_1", "T2_2", "T2_3", "T2_4", "T3_1", "C3_2", "EX3_1", "EX3_2", "EX3_3",
    "T4_1", "T4_2", "RED1_6", "RED1_7", "RED1_8", "REMARK",
)

CSV_FIELDS = ("theorem_id", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
              "rel_err", "tol", "passed", "error", "runtime_ms")

ML_CONFIGS = {
    "l2": ((0.5, 1.2), (0.8, 1.7)),
    "l3": ((1.0, 0.6, 0.3), (1.2, 0.9, 1.5)),
}

_ETA = [0.6, 1.5]
_Q = [-1.5, 0.8, 1 + 1j]
_ML = ["l2", "l3"]
_MU_NU = [(1.0, 0.5), (2.0, 0.0)]


def default_grid() -> Dict[str, Dict[str, list]]:
    """Axis lists per identity; cases are the Cartesian product in key order."""
    factor = {"eta1": _ETA, "eta2": _ETA, "beta1": [0.5, 1.25], "beta2": [0.5, 1.25],
              "z1": [-0.4, 0.3], "z2": [-0.4, 0.3], "q": _Q, "ml": _ML}
    section3 = {"m": [0.8], "n": [2.5], "mu_nu": _MU_NU, "t": [0.3], "q": _Q, "ml": _ML}
    return {
        "T2_1": dict(factor),
        "T2_2": dict(factor),
        "T2_3": {"eta1": _ETA, "eta2": _ETA, "eta3": [1.0, 2.5], "a1a2": [(1.0, 3.0)], "xy": [(0.7, 2.0)],
                 "q": _Q, "ml": _ML},
        "T2_4": {"eta1": _ETA, "eta2": _ETA, "xi": [0.4], "sigma": [-0.2, 0.5], "a1a2": [(0.0, 2.0)],
                 "q": _Q, "ml": _ML},
        "T3_1": dict(section3, u=[0.5], alpha=[0.9]),
        "C3_2": {"m": [0.8], "nu": [0.5, 1.0], "t": [0.3], "u": [1.0], "c": [1.4], "q": _Q, "ml": _ML},
        "EX3_1": dict(section3, u=[1.0], c=[1.4]),
        "EX3_2": dict(section3, u=[0.7], c=[1.4], d=[2.2]),
        "EX3_3": dict(section3, u=[1.0], alpha=[0.9]),
        "T4_1": {"eta1": _ETA, "eta2": _ETA, "betas": [(0.4, 0.7, 1.1)], "zs": [(0.2, -0.3, 0.25)],
                 "q": _Q, "ml": _ML},
        "T4_2": dict(section3, u=[1.0], c=[1.4], betas=[(0.5, 1.25)], zs=[(0.2, -0.3)]),
        "RED1_6": {"nu": [0.0, 0.5, 1.0, 2.5], "z": [0.5, 1.0, 2.0, 4.0]},
        "RED1_7": {"mu_nu": [(0.3, 1.2), (1.5, 0.5), (2.0, 0.0)], "z": [0.5, 1.0, 2.0, 4.0]},
        "RED1_8": {"nu": [0.0, 0.5, 1.5], "z": [0.5, 1.0, 2.0, 4.0]},
        "REMARK": {"lam": [0.5, 1.0, 2.0], "q": [0.8]},
    }


def default_tolerances() -> Dict[str, float]:
    tol = {tid: 1e-7 for tid in THEOREM_IDS}
    tol.update(T2_4=1e-8, RED1_6=1e-10, RED1_7=1e-9, RED1_8=1e-9, REMARK=1e-12)
    return tol


@dataclass
class IdentityCase:
    theorem_id: str
    params: Dict[str, Any]
    lhs: complex
    rhs: complex
    rel_err: float
    tol: float
    passed: bool
    error: Optional[str] = None
    runtime_ms: float = 0.0

    def as_record(self) -> Dict[str, Any]:
        return {
            "theorem_id": self.theorem_id,
            "params": _jsonable(self.params),
            "lhs_re": self.lhs.real,
            "lhs_im": self.lhs.imag,
            "rhs_re": self.rhs.real,
            "rhs_im": self.rhs.imag,
            "rel_err": self.rel_err,
            "tol": self.tol,
            "passed": self.passed,
            "error": self.error,
            "runtime_ms": self.runtime_ms,
        }


@dataclass
class SweepReport:
    cases: List[IdentityCase]
    skipped: List[Dict[str, Any]]
    summary: Dict[str, Dict[str, int]]
    environment: Dict[str, Any]
    format_version: int = FORMAT_VERSION

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self) -> List[IdentityCase]:
        return [c for c in self.cases if not c.passed]

    def to_json(self, include_runtime: bool = True) -> str:
        records = [c.as_record() for c in self.cases]
        if not include_runtime:
            for r in records:
                r.pop("runtime_ms")
        doc = {
            "format_version": self.format_version,
            "environment": _jsonable(self.environment),
            "summary": self.summary,
            "cases": records,
            "skipped": _jsonable(self.skipped),
        }
        return json.dumps(doc, indent=2, sort_keys=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for c in self.cases:
            row = c.as_record()
            row["params"] = json.dumps(row["params"], sort_keys=True)
            w.writerow(row)
        return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# case builders: params -> (lhs thunk, rhs thunk); domain errors mean "skip"


def _ml(params) -> MLParams:
    eps, omega = ML_CONFIGS[params["ml"]] if isinstance(params["ml"], str) else params["ml"]
    return MLParams(eps, omega)


def _op_pair(spec, series, quad_ctrl, ctrl):
    return (lambda: bo.quad_operator(spec, quad_ctrl, ctrl)), (lambda: series(spec, ctrl))


def _b_t2_1(p, qc, sc):
    k = bo.TwoFactor(p["beta1"], p["beta2"], p["z1"], p["z2"])
    return _op_pair(bo.OperatorSpec(p["eta1"], p["eta2"], p["q"], _ml(p), k), bo.thm21_series, qc, sc)


def _b_t2_2(p, qc, sc):
    k = bo.CrossFactor(p["beta1"], p["beta2"], p["z1"], p["z2"])
    return _op_pair(bo.OperatorSpec(p["eta1"], p["eta2"], p["q"], _ml(p), k), bo.thm22_series, qc, sc)


def _b_t2_3(p, qc, sc):
    a1, a2 = p["a1a2"]
    x, y = p["xy"]
    spec = bo.OperatorSpec(p["eta1"], p["eta2"], p["q"], _ml(p), bo.AffinePower(x, y), a1, a2, p["eta3"])
    return _op_pair(spec, bo.thm23_series, qc, sc)


def _b_t2_4(p, qc, sc):
    a1, a2 = p["a1a2"]
    spec = bo.OperatorSpec(p["eta1"], p["eta2"], p["q"], _ml(p), bo.WeightedDenominator(p["xi"], p["sigma"]), a1, a2)
    return _op_pair(spec, bo.thm24_closed, qc, sc)


def _b_t4_1(p, qc, sc):
    k = bo.MultiFactor(p["betas"], p["zs"])
    return _op_pair(bo.OperatorSpec(p["eta1"], p["eta2"], p["q"], _ml(p), k), bo.thm41_series, qc, sc)


def _gen_pair(spec, series, qc, sc):
    return (lambda: gf.gen_quad(spec, qc, sc)), (lambda: series(spec, sc))


def _section3(p, g, extras=()):
    mu, nu = p["mu_nu"]
    return gf.GenIntegralSpec(p["m"], p["n"], mu, nu, p["t"], p["u"], p["q"], _ml(p), g, tuple(extras))


def _b_t3_1(p, qc, sc):
    return _gen_pair(_section3(p, gf.GegenbauerGF(p["alpha"])), gf.gen_series, qc, sc)


def _b_ex3_1(p, qc, sc):
    return _gen_pair(_section3(p, gf.HypergeomGF(p["c"])), gf.gen_series, qc, sc)


def _b_ex3_2(p, qc, sc):
    return _gen_pair(_section3(p, gf.HumbertGF(p["c"], p["d"])), gf.gen_series, qc, sc)


def _b_ex3_3(p, qc, sc):
    return _gen_pair(_section3(p, gf.GegenbauerGF(p["alpha"])), gf.gen_series, qc, sc)


def _b_c3_2(p, qc, sc):
    spec = gf.GenIntegralSpec(p["m"], 2.0 * p["m"], p["nu"], p["nu"], p["t"], p["u"], p["q"], _ml(p),
                              gf.HypergeomGF(p["c"]))
    return _gen_pair(spec, gf.symmetric_series, qc, sc)


def _b_t4_2(p, qc, sc):
    spec = _section3(p, gf.HypergeomGF(p["c"]), zip(p["betas"], p["zs"]))
    return _gen_pair(spec, gf.gen_series, qc, sc)


def _reduction_pair(kind, orders, z, sc):
    # left: ratio at this z; right: the ratio at the first grid point
    def ratio_at(zz):
        return reduction_check(kind, orders, [zz], ctrl=sc).ratios[0]

    return (lambda: ratio_at(z)), (lambda: 1.0 if kind == "bessel" else ratio_at(0.5))


def _b_red1_6(p, qc, sc):
    rep = lambda: reduction_check("bessel", {"nu": p["nu"]}, [p["z"]], ctrl=sc)  # noqa: E731
    return (lambda: rep().lhs[0]), (lambda: rep().rhs[0])


def _b_red1_7(p, qc, sc):
    mu, nu = p["mu_nu"]
    return _reduction_pair("lommel", {"mu": mu, "nu": nu}, p["z"], sc)


def _b_red1_8(p, qc, sc):
    return _reduction_pair("struve", {"nu": p["nu"]}, p["z"], sc)


_DEGENERATION_POINT = dict(eta1=0.6, eta2=1.5, beta1=0.5, beta2=1.25, z1=0.3, z2=-0.4)


def _b_single_index(p, qc, sc):
    k = bo.TwoFactor(_DEGENERATION_POINT["beta1"], _DEGENERATION_POINT["beta2"], _DEGENERATION_POINT["z1"], _DEGENERATION_POINT["z2"])
    lam = p["lam"]
    two = bo.OperatorSpec(_DEGENERATION_POINT["eta1"], _DEGENERATION_POINT["eta2"], p["q"], MLParams((lam, 0.0), (1.0, 1.0)), k)
    one = bo.OperatorSpec(_DEGENERATION_POINT["eta1"], _DEGENERATION_POINT["eta2"], p["q"], MLParams((lam,), (1.0,)), k)
    return (lambda: bo.thm21_series(two, sc)), (lambda: bo.thm21_series(one, sc))


_BUILDERS: Dict[str, Callable] = {
    "T2_1": _b_t2_1, "T2_2": _b_t2_2, "T2_3": _b_t2_3, "T2_4": _b_t2_4,
    "T3_1": _b_t3_1, "C3_2": _b_c3_2, "EX3_1": _b_ex3_1, "EX3_2": _b_ex3_2, "EX3_3": _b_ex3_3,
    "T4_1": _b_t4_1, "T4_2": _b_t4_2,
    "RED1_6": _b_red1_6, "RED1_7": _b_red1_7, "RED1_8": _b_red1_8, "REMARK": _b_single_index,
}


# ---------------------------------------------------------------------------


_SUITE_ALIASES = {
    "2.1": "T2_1", "2.2": "T2_2", "2.3": "T2_3", "2.4": "T2_4", "3.1": "T3_1", "3.2": "C3_2",
    "4.1": "T4_1", "4.2": "T4_2", "ex3.1": "EX3_1", "ex3.2": "EX3_2", "ex3.3": "EX3_3",
    "1.6": "RED1_6", "1.7": "RED1_7", "1.8": "RED1_8", "remark": "REMARK",
}


def parse_suite(text: Union[str, Iterable[str]]) -> Tuple[str, ...]:
    """``"all"`` or comma-separated ids (``T2_1`` or the short ``2.1`` form)."""
    items = text.split(",") if isinstance(text, str) else list(text)
    out: List[str] = []
    for item in items:
        key = item.strip()
        if not key:
            continue
        if key.lower() == "all":
            return THEOREM_IDS
        tid = key.upper() if key.upper() in THEOREM_IDS else _SUITE_ALIASES.get(key.lower())
        if tid is None:
            raise ParameterError(f"unknown identity id {key!r}")
        if tid not in out:
            out.append(tid)
    return tuple(out)


def _points(axes: Mapping[str, Sequence]) -> List[Dict[str, Any]]:
    keys = list(axes)
    return [dict(zip(keys, combo)) for combo in itertools.product(*(axes[k] for k in keys))]


def _evaluate(job):
    tid, params, tol, ctrl, quad_ctrl = job
    start = time.perf_counter()
    try:
        lhs_fn, rhs_fn = _BUILDERS[tid](params, quad_ctrl, ctrl)
    except MLBetaError as exc:
        if isinstance(exc, ParameterError):
            return ("skip", f"{type(exc).__name__}: {exc}")
        raise
    try:
        lhs = complex(lhs_fn())
        rhs = complex(rhs_fn())
        rel = abs(lhs - rhs) / (1.0 + abs(rhs))
        err = None
        passed = rel <= tol
    except (MLBetaError, ArithmeticError, ValueError) as exc:
        lhs = rhs = complex(math.nan, math.nan)
        rel = math.inf
        err = f"{type(exc).__name__}: {exc}"
        passed = False
    ms = (time.perf_counter() - start) * 1e3
    return ("case", IdentityCase(tid, params, lhs, rhs, rel, tol, passed, err, round(ms, 3)))


def run_sweep(
    suite: Union[str, Iterable[str]] = "all",
    grid: Optional[Mapping[str, Mapping[str, Sequence]]] = None,
    tol: Union[None, float, Mapping[str, float]] = None,
    ctrl: SeriesControl = DEFAULT_CONTROL,
    quad_ctrl: QuadControl = DEFAULT_QUAD,
    workers: int = 1,
) -> SweepReport:
    """Evaluate both sides for every grid point of the selected identities.

    ``grid`` overrides axes per identity (missing ids use the defaults).
    ``tol`` is one tolerance for everything or a per-id mapping merged over
    :func:`default_tolerances`. With ``workers > 1`` cases run in a process
    pool; the report order is the grid order either way.
    """
    ids = parse_suite(suite)
    grids = default_grid()
    if grid:
        for tid, axes in grid.items():
            grids[parse_suite(tid)[0]] = dict(axes)
    tols = default_tolerances()
    if isinstance(tol, Mapping):
        tols.update({parse_suite(k)[0]: float(v) for k, v in tol.items()})
    elif tol is not None:
        tols = {tid: float(tol) for tid in tols}

    jobs = []
    for tid in ids:
        for params in _points(grids[tid]):
            jobs.append((tid, params, tols[tid], ctrl, quad_ctrl))

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, jobs, chunksize=8))
    else:
        results = [_evaluate(j) for j in jobs]

    cases: List[IdentityCase] = []
    skipped: List[Dict[str, Any]] = []
    summary = {tid: {"total": 0, "passed": 0, "failed": 0, "skipped": 0} for tid in ids}
    for job, (kind, payload) in zip(jobs, results):
        tid, params = job[0], job[1]
        summary[tid]["total"] += 1
        if kind == "skip":
            skipped.append({"theorem_id": tid, "params": params, "reason": payload})
            summary[tid]["skipped"] += 1
            continue
        cases.append(payload)
        summary[tid]["passed" if payload.passed else "failed"] += 1

    environment = {
        "tolerances": {tid: tols[tid] for tid in ids},
        "series_control": asdict(ctrl),
        "quad_control": asdict(quad_ctrl),
    }
    return SweepReport(cases, skipped, summary, environment)
