"""Command-line front end.

    mlbeta eval ml --eps 0.5,1.2 --omega 0.8,1.7 --z 2.5
    mlbeta eval wright --upper 1.3:1,0.7:1 --lower 0.8:0.5,1.7:1.2 --x 1.5+0.5i
    mlbeta eval op --theorem 2.1 --eta1 0.6 --eta2 1.5 --beta1 0.5 --beta2 1.25 --z1 0.3 --z2 -0.4 --q 0.8 --path quad
    mlbeta verify --suite 2.1,2.4 --tol 1e-7 --out report.json --format json
    mlbeta oracle --kind F1 --params 1.2,0.5,0.9,2.7,0.3,-0.4 --cap 120

Exit status: 0 success, 1 verification failure or numerical non-convergence,
2 bad arguments or parameters outside a function's domain.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from typing import List, Optional, Sequence

from . import beta_operator as bo
from . import genfun as gf
from . import hypergeom as hg
from .errors import MLBetaError, ParameterError
from .mittag_leffler import MLParams, ml_multi, wiman
from .numeric_kernel import DEFAULT_CONTROL, SeriesControl
from .oracles import CapWarning, oracle_double_sum
from .quadrature import DEFAULT_QUAD, QuadControl
from .verify import parse_suite, run_sweep
from .wright import WrightParams, wright_eval

__all__ = ["main", "parse_complex", "format_value"]


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """``1.5``, ``-2i``, ``1+1i``, ``1.5-0.5i`` (``j`` accepted as well)."""
    s = text.strip()
    if not s or " " in s:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if s[-1] in "iI":
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _real(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def _real_list(text: str) -> List[float]:
    return [_real(p) for p in text.split(",") if p.strip()]


def _pair_list(text: str):
    pairs = []
    for item in text.split(","):
        if not item.strip():
            continue
        parts = item.split(":")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"expected value:weight, got {item!r}")
        pairs.append((_real(parts[0]), _real(parts[1])))
    return pairs


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def format_value(v: complex) -> str:
    """Real results print as a plain float repr, complex ones as ``a+bi`` (re-parseable)."""
    v = complex(v)
    if v.imag == 0:
        return repr(v.real)
    sign = "+" if v.imag >= 0 or math.isnan(v.imag) else "-"
    return f"{v.real!r}{sign}{abs(v.imag)!r}i"


def _emit(value, fmt, out):
    value = complex(value)
    if fmt == "json":
        out.write(json.dumps({"re": value.real, "im": value.imag}) + "\n")
    elif fmt == "csv":
        out.write(f"re,im\n{value.real!r},{value.imag!r}\n")
    else:
        out.write(format_value(value) + "\n")


# ---------------------------------------------------------------------------
# parser


def _add_common(p):
    p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    p.add_argument("--rel-tol", type=_real, default=DEFAULT_CONTROL.rel_tol)
    p.add_argument("--max-terms", type=_positive_int, default=DEFAULT_CONTROL.max_terms)
    p.add_argument("--quad-tol", type=_real, default=DEFAULT_QUAD.tol)
    p.add_argument("--config", help="key=value file; command-line flags win")


def _add_ml(p, required=True):
    p.add_argument("--eps", type=_real_list, required=required)
    p.add_argument("--omega", type=_real_list, required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mlbeta", description="Mittag-Leffler, Wright and beta-operator toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one function or operator")
    evs = ev.add_subparsers(dest="what", required=True)

    p = evs.add_parser("ml", help="multi-index Mittag-Leffler function")
    _add_ml(p)
    p.add_argument("--z", type=parse_complex, required=True)
    _add_common(p)

    p = evs.add_parser("wiman", help="two-parameter Mittag-Leffler function")
    p.add_argument("--lam", type=_real, required=True)
    p.add_argument("--mu", type=_real, default=1.0)
    p.add_argument("--z", type=parse_complex, required=True)
    _add_common(p)

    p = evs.add_parser("wright", help="generalized Wright function")
    p.add_argument("--upper", type=_pair_list, required=True)
    p.add_argument("--lower", type=_pair_list, default=[])
    p.add_argument("--x", type=parse_complex, required=True)
    _add_common(p)

    p = evs.add_parser("op", help="beta-weighted operator, one path")
    p.add_argument("--theorem", choices=("2.1", "2.2", "2.3", "2.4", "4.1"), required=True)
    p.add_argument("--path", choices=("quad", "series"), default="series")
    p.add_argument("--eta1", type=_real, required=True)
    p.add_argument("--eta2", type=_real, required=True)
    p.add_argument("--eta3", type=_real)
    p.add_argument("--q", type=parse_complex, required=True)
    _add_ml(p, required=False)
    p.add_argument("--a1", type=_real, default=0.0)
    p.add_argument("--a2", type=_real, default=1.0)
    for name in ("beta1", "beta2", "z1", "z2", "x", "y", "xi", "sigma"):
        p.add_argument(f"--{name}", type=_real)
    p.add_argument("--betas", type=_real_list)
    p.add_argument("--zs", type=_real_list)
    _add_common(p)

    p = evs.add_parser("gen", help="generating-function integral, one path")
    p.add_argument("--gf", choices=("hypergeom", "humbert", "gegenbauer"), required=True)
    p.add_argument("--path", choices=("quad", "series", "symmetric"), default="series")
    for name in ("m", "n", "mu", "nu", "t"):
        p.add_argument(f"--{name}", type=_real, required=True)
    p.add_argument("--u", type=_real, default=1.0)
    p.add_argument("--q", type=parse_complex, required=True)
    _add_ml(p, required=False)
    for name in ("c", "d", "alpha"):
        p.add_argument(f"--{name}", type=_real)
    p.add_argument("--betas", type=_real_list, default=[])
    p.add_argument("--zs", type=_real_list, default=[])
    _add_common(p)

    p = evs.add_parser("hyp", help="hypergeometric family")
    p.add_argument("--fn", choices=("2F1", "1F1", "F1", "F3", "Phi2", "FD", "gegenbauer"), required=True)
    p.add_argument("--params", type=_real_list, required=True,
                   help="2F1: a,b,c,x  1F1: a,c,x  F1: a,b1,b2,c,x,y  F3: a1,a2,b1,b2,c,x,y  "
                        "Phi2: b1,b2,c,x,y  FD: a,c,b_1..b_n,z_1..z_n  gegenbauer: r,alpha,u")
    _add_common(p)

    p = sub.add_parser("verify", help="run identity sweeps")
    p.add_argument("--suite", default="all", help="'all' or ids such as 2.1,2.4,T3_1")
    p.add_argument("--tol", type=_real, help="one tolerance for every case (default: per identity)")
    p.add_argument("--out", help="write the report here (default: stdout summary only)")
    p.add_argument("--workers", type=_positive_int, default=1)
    _add_common(p)

    p = sub.add_parser("oracle", help="brute-force reference value")
    p.add_argument("--kind", choices=("F1", "F3", "Phi2", "FD", "ML", "Wright"), required=True)
    p.add_argument("--params", type=_real_list, help="flat parameter list for F1/F3/Phi2/FD")
    _add_ml(p, required=False)
    p.add_argument("--z", type=parse_complex)
    p.add_argument("--upper", type=_pair_list)
    p.add_argument("--lower", type=_pair_list, default=[])
    p.add_argument("--x", type=parse_complex)
    p.add_argument("--cap", type=_positive_int, default=120)
    _add_common(p)
    return parser


# ---------------------------------------------------------------------------
# config files


def _read_config(path: str) -> List[tuple]:
    items = []
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    for no, line in enumerate(lines, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if "=" not in s:
            raise UsageError(f"{path}:{no}: expected key=value")
        key, value = (x.strip() for x in s.split("=", 1))
        if not key:
            raise UsageError(f"{path}:{no}: empty key")
        items.append((key.replace("_", "-"), value))
    return items


def _config_path(argv: List[str]) -> Optional[str]:
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                raise UsageError("--config needs a file name")
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _merge_config(parser, argv: List[str]) -> argparse.Namespace:
    path = _config_path(argv)
    if path is None:
        return parser.parse_args(argv)
    given = {tok.split("=", 1)[0] for tok in argv if tok.startswith("--")}
    extra: List[str] = []
    for key, value in _read_config(path):
        if key == "config":
            raise UsageError("config files cannot include other config files")
        if f"--{key}" in given:
            continue
        extra.append(f"--{key}={value}")
    return parser.parse_args(argv + extra)


# ---------------------------------------------------------------------------
# commands


def _controls(args):
    return SeriesControl(args.rel_tol, args.max_terms), QuadControl(tol=args.quad_tol)


def _ml_from(args, default=((0.5, 1.2), (0.8, 1.7))):
    if args.eps is None and args.omega is None:
        return MLParams(*default)
    if args.eps is None or args.omega is None:
        raise UsageError("--eps and --omega go together")
    return MLParams(args.eps, args.omega)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))
    return [getattr(args, n) for n in names]


def _op_spec(args) -> bo.OperatorSpec:
    ml = _ml_from(args)
    th = args.theorem
    if th in ("2.1", "2.2"):
        b1, b2, z1, z2 = _need(args, "beta1", "beta2", "z1", "z2")
        kernel = (bo.TwoFactor if th == "2.1" else bo.CrossFactor)(b1, b2, z1, z2)
        return bo.OperatorSpec(args.eta1, args.eta2, args.q, ml, kernel, args.a1, args.a2, args.eta3)
    if th == "2.3":
        x, y = _need(args, "x", "y")
        return bo.OperatorSpec(args.eta1, args.eta2, args.q, ml, bo.AffinePower(x, y), args.a1, args.a2, args.eta3)
    if th == "2.4":
        xi, sigma = _need(args, "xi", "sigma")
        return bo.OperatorSpec(args.eta1, args.eta2, args.q, ml, bo.WeightedDenominator(xi, sigma),
                               args.a1, args.a2, args.eta3)
    betas, zs = _need(args, "betas", "zs")
    return bo.OperatorSpec(args.eta1, args.eta2, args.q, ml, bo.MultiFactor(betas, zs), args.a1, args.a2, args.eta3)


def _gen_spec(args) -> gf.GenIntegralSpec:
    if args.gf == "hypergeom":
        g = gf.HypergeomGF(*_need(args, "c"))
    elif args.gf == "humbert":
        g = gf.HumbertGF(*_need(args, "c", "d"))
    else:
        g = gf.GegenbauerGF(*_need(args, "alpha"))
    if len(args.betas) != len(args.zs):
        raise UsageError("--betas and --zs need the same length")
    return gf.GenIntegralSpec(args.m, args.n, args.mu, args.nu, args.t, args.u, args.q, _ml_from(args), g,
                              tuple(zip(args.betas, args.zs)))


_HYP_ARITY = {"2F1": 4, "1F1": 3, "F1": 6, "F3": 7, "Phi2": 5, "gegenbauer": 3}


def _hyp(args, ctrl):
    p = args.params
    fn = args.fn
    if fn == "FD":
        if len(p) < 4 or len(p) % 2:
            raise UsageError("FD takes a,c,b_1..b_n,z_1..z_n")
        n = (len(p) - 2) // 2
        return hg.lauricella_fd(p[0], p[2:2 + n], p[1], p[2 + n:], ctrl)
    if len(p) != _HYP_ARITY[fn]:
        raise UsageError(f"{fn} takes {_HYP_ARITY[fn]} parameters, got {len(p)}")
    if fn == "2F1":
        return hg.gauss_2f1(*p, ctrl=ctrl)
    if fn == "1F1":
        return hg.kummer_1f1(*p, ctrl=ctrl)
    if fn == "F1":
        return hg.appell_f1(*p, ctrl=ctrl)
    if fn == "F3":
        return hg.appell_f3(*p, ctrl=ctrl)
    if fn == "Phi2":
        return hg.humbert_phi2(*p, ctrl=ctrl)
    if p[0] != int(p[0]):
        raise UsageError("gegenbauer degree must be an integer")
    return hg.gegenbauer(int(p[0]), p[1], p[2])


def _eval(args, out):
    ctrl, qctrl = _controls(args)
    w = args.what
    if w == "ml":
        value = ml_multi(MLParams(args.eps, args.omega), args.z, ctrl)
    elif w == "wiman":
        value = wiman(args.lam, args.mu, args.z, ctrl)
    elif w == "wright":
        value = wright_eval(WrightParams(tuple(args.upper), tuple(args.lower)), args.x, ctrl)
    elif w == "op":
        spec = _op_spec(args)
        value = bo.quad_operator(spec, qctrl, ctrl) if args.path == "quad" else bo.series_operator(spec, ctrl)
    elif w == "gen":
        spec = _gen_spec(args)
        if args.path == "quad":
            value = gf.gen_quad(spec, qctrl, ctrl)
        elif args.path == "symmetric":
            value = gf.symmetric_series(spec, ctrl)
        else:
            value = gf.gen_series(spec, ctrl)
    else:
        value = _hyp(args, ctrl)
    _emit(value, args.format, out)
    return 0


def _verify(args, out):
    ctrl, qctrl = _controls(args)
    try:
        suite = parse_suite(args.suite)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    report = run_sweep(suite, tol=args.tol, ctrl=ctrl, quad_ctrl=qctrl, workers=args.workers)
    body = report.to_csv() if args.format == "csv" else report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    if args.format != "plain" and not args.out:
        out.write(body if body.endswith("\n") else body + "\n")
    else:
        for tid, s in report.summary.items():
            errs = [c.rel_err for c in report.cases if c.theorem_id == tid]
            worst = max(errs) if errs else 0.0
            status = "PASS" if s["failed"] == 0 else "FAIL"
            out.write(f"{status} {tid}: {s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped, "
                      f"max rel_err {worst:.3e}\n")
    return 0 if report.all_passed else 1


def _oracle(args, out):
    kind = args.kind
    if kind == "ML":
        eps, omega, z = _need(args, "eps", "omega", "z")
        params = {"eps": eps, "omega": omega, "z": z}
    elif kind == "Wright":
        upper, x = _need(args, "upper", "x")
        params = {"upper": upper, "lower": args.lower, "x": x}
    else:
        params = _need(args, "params")[0]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", CapWarning)
        value = oracle_double_sum(kind, params, args.cap)
    for w in caught:
        sys.stderr.write(f"warning: {w.message}\n")
    _emit(value, args.format, out)
    return 0


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = _merge_config(parser, argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    except UsageError as exc:
        sys.stderr.write(f"mlbeta: error: {exc}\n")
        return 2
    try:
        if args.command == "eval":
            return _eval(args, out)
        if args.command == "verify":
            return _verify(args, out)
        return _oracle(args, out)
    except UsageError as exc:
        sys.stderr.write(f"mlbeta: error: {exc}\n")
        return 2
    except ParameterError as exc:
        sys.stderr.write(f"mlbeta: error: {type(exc).__name__}: {exc}\n")
        return 2
    except MLBetaError as exc:
        sys.stderr.write(f"mlbeta: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
