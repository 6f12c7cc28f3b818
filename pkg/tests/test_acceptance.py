"""Acceptance criteria, one test each.

Every sub-check of a criterion is evaluated even after an earlier one fails,
and a single PASS/FAIL line per criterion is printed (also repeated in the
terminal summary).
"""
import json
import math
import subprocess
import sys
from contextlib import contextmanager

import numpy as np

from zeta_audit import audit as A
from zeta_audit import identities as I
from zeta_audit import specialfn as sf
from zeta_audit import zerodb as zd


@contextmanager
def running(c):
    try:
        yield c
    except Exception as exc:  # report unexpected errors as part of the criterion line
        c.finish(exc)
        raise
    c.finish()


def test_criterion_01_special_functions(criterion):
    c = criterion(1, "Gamma recurrence/reflection on 1000 points; zeta(2), zeta(0), zeta(-1)")
    with running(c):
        rng = np.random.default_rng(20240601)
        z = rng.uniform(-10, 10, 1000) + 1j * rng.uniform(-10, 10, 1000)
        g = sf.gamma(z)
        rec = np.abs(sf.gamma(z + 1) - z * g) / np.abs(z * g)
        c.check(rec.max() < 1e-10, f"recurrence max rel err {rec.max():.3g}")
        refl = np.abs(g * sf.gamma(1 - z) * np.sin(np.pi * z) - np.pi) / np.pi
        c.check(refl.max() < 1e-10, f"reflection max rel err {refl.max():.3g}")
        for s, exact in ((2, math.pi**2 / 6), (0, -0.5), (-1, -1 / 12)):
            err = abs(sf.zeta(complex(s)) - exact)
            c.check(err < 1e-12, f"zeta({s}) off by {err:.3g}")
        c.check(c.elapsed() < 5, f"runtime {c.elapsed():.1f} s")


def test_criterion_02_two_gamma_integral(criterion):
    c = criterion(2, "two-Gamma integral on the 3x3x2x2 grid and the pi, pi/2 anchors")
    with running(c):
        xs = [0.6, 1.0, 1.5 + 0.5j]
        worst = 0.0
        for x1 in xs:
            for x2 in xs:
                for m in (1.0, 2.0):
                    for n in (1.0, 3.0):
                        worst = max(worst, I.check_base(x1, x2, m, n).rel_resid)
        c.check(worst < 1e-8, f"grid worst rel_resid {worst:.3g}")
        for x, exact in ((0.5, math.pi), (1.0, math.pi / 2)):
            r = I.check_base(x, x, 1, 1)
            c.check(abs(r.lhs - exact) < 1e-9 and abs(r.rhs - exact) < 1e-9,
                    f"anchor x={x}: lhs {r.lhs:.15g}")
        c.check(c.elapsed() < 30, f"runtime {c.elapsed():.1f} s")


def test_criterion_03_kernel_transform_and_multiplication(criterion):
    c = criterion(3, "kernel transform and multiplication formula cases at rel_resid < 1e-7")
    with running(c):
        for x, a, xi in ((1, 1, 0), (1, 2, 1), (0.5, 1, -2)):
            r = I.check_fourier_kernel(x, a, xi)
            c.check(r.rel_resid < 1e-7, f"kernel x={x} a={a} xi={xi}: rel_resid {r.rel_resid:.3g}")
        for pair, tol in (("gauss-gauss", 1e-9), ("E(1,1)-gauss", 1e-8), ("E(1,2)-E(0.7,1)", 1e-7)):
            r = I.check_multiplication(pair)
            c.check(r.rel_resid < min(tol, 1e-7), f"multiplication {pair}: {r.rel_resid:.3g}")


def test_criterion_04_msum_chain(criterion):
    c = criterion(4, "check_eq_e, check_eq_e3_exact and combine_abc telescoping")
    with running(c):
        for x1, x2, m, tol in ((1, 1, 1, 1e-8), (2, 1.2, 3, 1e-8), (1 + 5j, 1, 2, 1e-8)):
            r = I.check_eq_e(x1, x2, m)
            c.check(r.rel_resid < tol, f"eq_e {x1},{x2},{m}: {r.rel_resid:.3g}")
        for x1, x2, alpha in ((1.6, 1.4, 1.0), (2, 2, 2.0)):
            s = I.eq_e3_sides(x1, x2, alpha, 0.5, 0.0, 10**5)
            res = abs(s.lhs - s.rhs)
            c.check(res < 1e-6 + s.tail, f"eq_e3 {x1},{x2},{alpha}: {res:.3g} (tail {s.tail:.3g})")
        zero = I.combine_abc(lambda a: (2.5 - 1j, 0.75 + 3j), 7.0, 0.5)
        c.check(zero == (0j, 0j), f"combine_abc on constant input gave {zero}")


def test_criterion_05_alpha_weighted_chain(criterion):
    c = criterion(5, "check_com4, four-Gamma kappa integral, kappa simplification at alpha = 1")
    with running(c):
        for x1, x2, alpha in ((2, 2, 1), (1.5, 2.5, 2), (2 + 3j, 2, 1)):
            r = I.check_com4(x1, x2, alpha)
            c.check(r.rel_resid < 1e-8, f"com4 {x1},{x2},{alpha}: {r.rel_resid:.3g}")
        for args in ((2, 0.25, 14.134725, 14.134725, 1, 0.5), (2.5, 0.5, 0, 0, 2, 0.5)):
            r = I.check_lemma3(*args)
            c.check(r.abs_resid <= r.err_budget and r.rel_resid < 1e-7,
                    f"lemma3 x={args[0]} alpha={args[4]}: rel_resid {r.rel_resid:.3g}")
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(100):
            x = complex(rng.uniform(0.6, 4), rng.uniform(-3, 3))
            tau, q = rng.uniform(-40, 40), rng.uniform(0.01, 2)
            k = I.kappa(tau, q, x, 1.0, 0.5)
            worst = max(worst, abs(k - I.kappa_at_alpha_one(tau, q, x)) / max(1.0, abs(k)))
        c.check(worst < 1e-12, f"kappa(alpha=1) simplification off by {worst:.3g}")


def test_criterion_06_explicit_formula(criterion, table):
    c = criterion(6, "explicit formula at s = 2 against the direct route")
    with running(c):
        direct = -sf.zeta_log_deriv(2.0)
        r = {N: abs(zd.explicit_log_deriv(2.0, zd.ExplicitFormulaConfig(n_zeros=N), table) - direct)
             for N in (25, 50, 100, 200)}
        c.check(r[100] < 2e-2, f"N=100 residual {r[100]:.3g}")
        seq = list(r.values())
        c.check(all(b < 1.1 * a for a, b in zip(seq, seq[1:])),
                "residuals " + ", ".join(f"{v:.3g}" for v in seq))


def test_criterion_07_step1_audit(criterion, table):
    c = criterion(7, "A* and S0 converge and claim_resid is stable and deterministic")
    with running(c):
        for dp in (0.3, 0.5, 0.7):
            p = A.AuditParams(delta_p=dp, eps=0.25, Tp=0.0, n_zeros=100)
            rep = A.audit_step1(p, table)
            c.check(rep.converged and rep.cauchy_diff < 1e-6,
                    f"delta'={dp}: Cauchy difference {rep.cauchy_diff:.3g}")
            c.check(all(np.isfinite(v) for v in (rep.A_star, rep.S0)), f"delta'={dp}: non-finite")
            dbl = A.audit_step1(A.AuditParams(delta_p=dp, n_zeros=200), table)
            c.check(abs(dbl.claim_resid - rep.claim_resid) < 1e-6,
                    f"delta'={dp}: claim_resid moves {abs(dbl.claim_resid - rep.claim_resid):.3g} under doubling")
            again = A.audit_step1(p, table, workers=4)
            c.check(abs(again.S0 - rep.S0) <= 1e-9 and abs(again.A_star - rep.A_star) <= 1e-9,
                    f"delta'={dp}: not reproducible across thread counts")
            print(f"  delta'={dp}: claim_resid = {rep.claim_resid:.12g}")
        c.check(c.elapsed() < 120, f"runtime {c.elapsed():.1f} s")


def test_criterion_08_boundedness_trends(criterion, table):
    c = criterion(8, "break bound at alpha in {1, 2, 10, 100}; n1 residual trend over [1, 100]")
    with running(c):
        p = A.AuditParams()
        for alpha in (1.0, 2.0, 10.0, 100.0):
            b = A.check_break_bound(p, table, alpha)
            c.check(b.holds, f"alpha={alpha}: |lhs| {b.lhs_abs:.4g} > bound {b.bound:.4g}")
        trend = A.check_n1_trend(p, table)
        c.check(A.trend_bounded(trend), "n1 residuals " + ", ".join(f"{r:.3g}" for _, r in trend))


def test_criterion_09_rapid_decrease(criterion):
    c = criterion(9, "rapid-decrease sampling of h for k in {0,1,2}, m in {1,2,4}")
    with running(c):
        t = np.linspace(-50, 50, 10**4)
        for k in (0, 1, 2):
            for m in (1, 2, 4):
                w = sf.weighted_decay(sf.DecayFamilyParams(1.0, 1.0, 1.0, k, m), t)
                top = int(np.argmax(w))
                c.check(0 < top < t.size - 1, f"(k={k}, m={m}) sup on the boundary")
                c.check(w[0] < 1e-12 * w[top] and w[-1] < 1e-12 * w[top],
                        f"(k={k}, m={m}) edge values too large")


def _cli(*args, cwd):
    return subprocess.run([sys.executable, "-m", "zeta_audit", *args], capture_output=True,
                          text=True, cwd=cwd, timeout=600)


def test_criterion_10_cli(criterion, tmp_path):
    c = criterion(10, "verify exit codes and JSON round trip; zeros find --near 14")
    with running(c):
        found = _cli("zeros", "find", "--near", "14", cwd=tmp_path)
        c.check(found.returncode == 0 and found.stdout.strip() == "14.134725142",
                f"zeros find printed {found.stdout.strip()!r}")
        (tmp_path / "ok.ini").write_text("[a]\nchecker = alpha_integral\nX = 0\nA = 3\n")
        (tmp_path / "bad.ini").write_text("[a]\nchecker = alpha_integral\nX = 0\nA = 3\n"
                                          "[b]\nchecker = mu_limit\nD = 0.25\ndelta = -0.25\n"
                                          "gamma = 14.134725\nTp = 0\nrhs_offset = 0.1\n")
        for name, code in (("ok.ini", 0), ("bad.ini", 1)):
            got = _cli("verify", "--suite", name, cwd=tmp_path).returncode
            c.check(got == code, f"{name}: exit {got}, expected {code}")
        missing = _cli("verify", "--suite", "missing.txt", cwd=tmp_path)
        c.check(missing.returncode == 3, f"missing suite exit {missing.returncode}")
        run = _cli("verify", "--tol", "1e-8", "--output-format", "json", "-o", "r.json", cwd=tmp_path)
        doc = json.loads((tmp_path / "r.json").read_text())
        names = [case.name for case in I.core_suite()]
        c.check([r["name"] for r in doc["results"]] == names, "JSON records do not match the suite")
        c.check(json.loads(json.dumps(doc)) == doc, "JSON does not round-trip")
        failing = [r["name"] for r in doc["results"] if r["verdict"] != "pass"]
        c.check(run.returncode == 0, f"verify exit {run.returncode} (not passing: {', '.join(failing)})")
