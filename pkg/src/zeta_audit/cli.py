"""Command-line front end: ``zeta-audit {verify, audit, zeros, explicit}``.

Exit codes: 0 success, 1 a check failed, 2 inconclusive or not converged,
3 configuration, input or domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import audit as au
from . import identities as ids
from . import specialfn as sf
from . import zerodb as zd
from .errors import ValidationError, ZetaAuditError
from .quad import QuadratureConfig

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _round(v):
    """Round floats to 12 significant digits, recursively; complex becomes [re, im]."""
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, complex):
        return [_round(v.real), _round(v.imag)]
    if isinstance(v, float):
        return float(f"{v:.12g}") if math.isfinite(v) else None
    if isinstance(v, dict):
        return {k: _round(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_round(x) for x in v]
    return _round(float(v))


def fmt(v: float) -> str:
    return f"{v:.12g}"


def fmt_c(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def fmt_resid(v: float) -> str:
    return f"{v:.11e}"


def parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}") from None


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"not a comma-separated list of numbers: {text!r}") from None


def _emit(args, command: str, params: dict, results: list, text: str) -> None:
    if args.output_format == "json":
        doc = json.dumps({"command": command, "params": _round(params),
                          "results": _round(results)}, indent=2, sort_keys=True)
    elif args.output_format == "csv":
        buf = io.StringIO()
        flat = [_flatten(r) for r in results]
        fields = sorted({k for r in flat for k in r})
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
        doc = buf.getvalue()
    else:
        doc = text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(doc if doc.endswith("\n") else doc + "\n")
    else:
        sys.stdout.write(doc if doc.endswith("\n") else doc + "\n")


def _flatten(d, prefix=""):
    out = {}
    for k, v in _round(d).items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


def _quad_cfg(tol):
    if tol is None:
        return ids.DEFAULT_CFG
    if not 1e-14 < tol < 1:
        raise UsageError("--tol must lie in (1e-14, 1)")
    q = max(tol / 100.0, 2e-15)
    return QuadratureConfig(abs_tol=q, rel_tol=q)


# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = _quad_cfg(args.tol)
    suite = ids.load_suite(args.suite) if args.suite else ids.core_suite()
    reports = ids.run_suite(suite, cfg)
    lines = [f"{'case':36s} {'|lhs|':>20s} {'|rhs|':>20s} {'rel_resid':>18s}  verdict"]
    for r in reports:
        lines.append(f"{r.case.name:36s} {fmt(abs(r.lhs)):>20s} {fmt(abs(r.rhs)):>20s} "
                     f"{fmt_resid(r.rel_resid):>18s}  {r.verdict}"
                     + (f"  ({r.note})" if r.note and r.verdict != "pass" else ""))
    counts = {v: sum(r.verdict == v for r in reports) for v in ("pass", "fail", "inconclusive")}
    lines.append(f"{counts['pass']} pass, {counts['fail']} fail, "
                 f"{counts['inconclusive']} inconclusive")
    _emit(args, "verify", {"suite": args.suite or "core", "tol": args.tol},
          [r.as_dict() for r in reports], "\n".join(lines))
    if counts["fail"]:
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE if counts["inconclusive"] else EXIT_OK


def cmd_audit(args) -> int:
    table = zd.default_zeros(args.zeros, validate=True)
    deltas = parse_floats(args.delta_p)
    alphas = parse_floats(args.alpha_grid) if args.alpha_grid else None
    results, lines = [], []
    for dp in deltas:
        kw = {"alpha_grid": tuple(alphas)} if alphas else {}
        params = au.AuditParams(delta_p=dp, eps=args.eps, n_zeros=args.n_zeros, **kw)
        rep = au.audit_step1(params, table)
        res = rep.as_dict()
        lines += [
            f"delta' = {fmt(dp)}, eps = {fmt(args.eps)}, T' = 0, N = {args.n_zeros}",
            f"  zeros        {table.source}",
            f"  A0           {fmt_c(rep.A0)}",
            f"  A*           {fmt_c(rep.A_star)}",
        ]
        lines += [f"  S0(N={n:<4d})  {fmt_c(v)}" for n, v in rep.S0_partial]
        lines += [
            f"  claim_resid  {fmt_resid(rep.claim_resid)}   (N/2: {fmt_resid(rep.claim_resid_half)})",
            f"  converged    {rep.converged}   (Cauchy difference {fmt_resid(rep.cauchy_diff)})",
        ]
        lines += [f"  note: {n}" for n in rep.notes]
        if args.trends:
            bounds = [au.check_break_bound(params, table, a) for a in (1.0, 2.0, 10.0, 100.0)]
            trend = au.check_n1_trend(params, table)
            res["break_bound"] = [{"alpha": b.alpha, "lhs_abs": b.lhs_abs, "bound": b.bound,
                                   "holds": b.holds} for b in bounds]
            res["n1_trend"] = [{"alpha": a, "resid": r} for a, r in trend]
            res["n1_bounded"] = au.trend_bounded(trend)
            lines += [f"  break alpha={fmt(b.alpha):>5s}  |lhs| {fmt(b.lhs_abs)}  "
                      f"bound {fmt(b.bound)}  holds {b.holds}" for b in bounds]
            lines += [f"  n1 alpha={fmt(a):>5s}  resid {fmt_resid(r)}" for a, r in trend]
            lines.append(f"  n1 residuals bounded (max <= 3 median): {res['n1_bounded']}")
        results.append(res)
        lines.append("")
    _emit(args, "audit", {"delta_p": deltas, "eps": args.eps, "n_zeros": args.n_zeros,
                          "zeros": table.source}, results, "\n".join(lines))
    return EXIT_OK if all(r["converged"] for r in results) else EXIT_INCONCLUSIVE


def cmd_zeros(args) -> int:
    if args.action == "find":
        t = zd.find_zero_near(args.near, args.window)
        _emit(args, "zeros find", {"near": args.near, "window": args.window},
              [{"ordinate": t}], f"{t:.9f}")
        return EXIT_OK
    src = args.path
    table = zd.bundled_zeros() if src in (None, "bundled") else zd.load_zeros(src, validate=False)
    online, mags = zd.zeta_magnitudes(table, args.n_zeros)
    results, lines, bad = [], [], []
    for e, m in zip(online, mags):
        ok = bool(m < zd.VALIDATION_THRESHOLD)
        results.append({"index": e.index, "gamma": e.gamma_ord, "abs_zeta": float(m), "ok": ok})
        lines.append(f"{e.index:5d} {e.gamma_ord:20.12f} {fmt_resid(m)} {'ok' if ok else 'FAIL'}")
        if not ok:
            bad.append(e.index)
    if bad:
        lines.append(f"validation failed at index {', '.join(map(str, bad))}")
    _emit(args, "zeros validate", {"path": table.source, "n_zeros": args.n_zeros},
          results, "\n".join(lines))
    if bad:
        print(f"error: |zeta(1/2 + i gamma)| >= {zd.VALIDATION_THRESHOLD:g} at index {bad[0]}",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_explicit(args) -> int:
    s = parse_complex(args.s)
    table = zd.default_zeros(args.zeros, validate=True)
    direct = -sf.zeta_log_deriv(s)
    lam = None
    if s.real > 1:
        series = sf.lambda_series(s, 10**5)
        lam = series.value
    ns, n = [], 25
    while n < args.n_zeros:
        ns.append(n)
        n *= 2
    ns.append(args.n_zeros)
    results = []
    lines = [f"s = {fmt_c(s)}",
             f"direct  -zeta'/zeta(s) = {fmt_c(direct)}",
             ("Lambda  series (m <= 1e5) = "
              f"{fmt_c(lam)}" if lam is not None
              else "Lambda  series: N/A (Re s <= 1)"),
             f"{'N':>6s} {'zero-sum route':>40s} {'|zeros - direct|':>18s} {'|zeros - Lambda|':>18s}"]
    for N in ns:
        v = zd.explicit_log_deriv(s, zd.ExplicitFormulaConfig(n_zeros=N), table)
        r_direct = abs(v - direct)
        r_lam = abs(v - lam) if lam is not None else None
        results.append({"N": N, "zeros": v, "direct": direct, "lambda": lam,
                        "resid_direct": r_direct, "resid_lambda": r_lam})
        lines.append(f"{N:6d} {fmt_c(v):>40s} {fmt_resid(r_direct):>18s} "
                     f"{fmt_resid(r_lam) if r_lam is not None else 'N/A':>18s}")
    _emit(args, "explicit", {"s": s, "n_zeros": args.n_zeros, "zeros": table.source},
          results, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output-format", choices=("text", "json", "csv"), default="text")
    common.add_argument("-o", "--output", help="write the report to this file")

    p = argparse.ArgumentParser(prog="zeta-audit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run an identity suite")
    v.add_argument("--suite", help="suite file (default: built-in core suite)")
    v.add_argument("--tol", type=float, help="quadrature accuracy target; tolerances are tol/100")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("audit", parents=[common], help="evaluate A* + S0 over a delta' grid")
    a.add_argument("--zeros", help=f"zero table (default ${zd.ENV_VAR} or bundled)")
    a.add_argument("--n-zeros", type=int, default=100)
    a.add_argument("--delta-p", default="0.3,0.5,0.7")
    a.add_argument("--eps", type=float, default=0.25)
    a.add_argument("--alpha-grid", help="comma-separated alphas for --trends")
    a.add_argument("--trends", action="store_true", help="also run the bound and trend checks")
    a.set_defaults(func=cmd_audit)

    z = sub.add_parser("zeros", parents=[common], help="validate a table or locate a zero")
    z.add_argument("action", choices=("validate", "find"))
    z.add_argument("path", nargs="?", help="table to validate, or 'bundled'")
    z.add_argument("--n-zeros", type=int, default=100, help="entries to validate")
    z.add_argument("--near", type=float, default=14.0)
    z.add_argument("--window", type=float, default=1.0)
    z.set_defaults(func=cmd_zeros)

    e = sub.add_parser("explicit", parents=[common], help="compare routes to -zeta'/zeta(s)")
    e.add_argument("--s", required=True, help="complex point, e.g. 2+0i")
    e.add_argument("--zeros", help=f"zero table (default ${zd.ENV_VAR} or bundled)")
    e.add_argument("--n-zeros", type=int, default=100)
    e.set_defaults(func=cmd_explicit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL if args.command == "zeros" else EXIT_ERROR
    except (UsageError, ZetaAuditError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
