"""Checkers for exact integral identities built from products of Gamma functions.

Each checker evaluates the left side by quadrature and the right side from
closed forms or finite series (no quadrature), then reports the residual.
The two paths share nothing beyond scalar special functions.

Verdicts: ``inconclusive`` when the quadrature error estimate exceeds the
case's error budget (the integral is not resolved well enough to judge),
otherwise ``pass`` iff ``|lhs - rhs| <= err_budget``.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np

from . import specialfn as sf
from .errors import DomainError, ParseError, ZetaAuditError
from .quad import (
    DecayHint, QuadResult, QuadratureConfig, fourier_numeric, integrate_interval,
    integrate_line, kernel_hint,
)

DEFAULT_CFG = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class IdentityCase:
    name: str
    checker: str
    params: dict = field(default_factory=dict)
    lhs_desc: str = ""
    rhs_desc: str = ""


@dataclass
class IdentityReport:
    case: IdentityCase
    lhs: complex
    rhs: complex
    abs_resid: float
    rel_resid: float
    err_budget: float
    verdict: str
    quad_err: float = 0.0
    note: str = ""

    def as_dict(self) -> dict:
        def cx(z):
            return [float(z.real), float(z.imag)]
        return {
            "name": self.case.name,
            "checker": self.case.checker,
            "params": {k: _param_to_json(v) for k, v in self.case.params.items()},
            "lhs": cx(self.lhs),
            "rhs": cx(self.rhs),
            "abs_resid": self.abs_resid,
            "rel_resid": self.rel_resid,
            "err_budget": self.err_budget,
            "quad_err": self.quad_err,
            "verdict": self.verdict,
            "note": self.note,
        }


def _param_to_json(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def make_report(case, lhs, rhs, *, rel_tol=0.0, abs_tol=0.0, extra=0.0,
                quad_err=0.0, note="") -> IdentityReport:
    lhs, rhs = complex(lhs), complex(rhs)
    abs_resid = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs), 1e-300)
    budget = rel_tol * scale + abs_tol + extra
    if quad_err > budget:
        verdict = "inconclusive"
    elif abs_resid <= budget:
        verdict = "pass"
    else:
        verdict = "fail"
    return IdentityReport(case, lhs, rhs, abs_resid, abs_resid / scale, budget,
                          verdict, quad_err, note)


def _cpow(base: float, expo):
    """base**expo for a positive real base, principal real logarithm."""
    return np.exp(expo * math.log(base))


def _integrate(f, hint: DecayHint, cfg: QuadratureConfig) -> QuadResult:
    """integrate_line after normalising f by its sampled peak magnitude.

    Gamma products at large ordinates can be 1e-20 or smaller; scaling keeps
    the absolute tolerance meaningful relative to the integrand.
    """
    half = hint.width + 10.0
    grid = np.linspace(hint.shift - half, hint.shift + half, 2001)
    peak = float(np.max(np.abs(f(grid))))
    if peak == 0.0:
        return QuadResult(0j, 0.0, half, 0)
    res = integrate_line(lambda t: f(t) / peak, hint, cfg)
    return QuadResult(res.value * peak, res.err_estimate * peak, res.truncation_T,
                      res.panels_used, res.tail_bound * peak)


def _auto_case(name, checker, **params):
    return IdentityCase(name, checker, params)


# ---------------------------------------------------------------------------
# two-Gamma line integral

def check_base(x1, x2, m=1.0, n=1.0, cfg: QuadratureConfig = DEFAULT_CFG,
               tol=1e-8, case=None) -> IdentityReport:
    """m^{-x1} n^{-x2} int m^{-it} n^{it} G(x1+it) G(x2-it) dt = 2 pi G(x1+x2)/(m+n)^{x1+x2}."""
    x1, x2 = complex(x1), complex(x2)
    if not (x1.real > 0 and x2.real > 0):
        raise DomainError("check_base needs Re x1 > 0 and Re x2 > 0")
    if not (m > 0 and n > 0):
        raise DomainError("m and n must be positive")
    case = case or _auto_case("base", "base", x1=x1, x2=x2, m=m, n=n)
    lm, ln_ = math.log(m), math.log(n)

    def f(t):
        return (np.exp(-(x1 + 1j * t) * lm - (x2 - 1j * t) * ln_)
                * sf.gamma(x1 + 1j * t) * sf.gamma(x2 - 1j * t))

    hint = DecayHint(sigma_sum=(x1 + x2).real, shift=0.5 * (x2.imag - x1.imag),
                     width=0.5 * abs(x1.imag + x2.imag), freq=abs(lm - ln_) / TWO_PI)
    res = _integrate(f, hint, cfg)
    s = x1 + x2
    rhs = TWO_PI * sf.gamma(s) * _cpow(m + n, -s)
    return make_report(case, res.value, rhs, rel_tol=tol, quad_err=res.err_estimate)


# ---------------------------------------------------------------------------
# Fourier transform of the exponential kernel

def kernel_transform(x, a, xi, form="minus") -> complex:
    """Closed form for F[E_{x,a}](xi).

    ``minus`` gives a^{-(x - i xi)} Gamma(x - i xi); ``plus`` gives
    a^{-(x + i xi)} Gamma(x + i xi), which is what the substitution
    u = a exp(-2 pi t) produces under F[g](xi) = int g(t) e^{-2 pi i t xi} dt.
    """
    if form not in ("minus", "plus"):
        raise DomainError(f"unknown form {form!r}")
    z = complex(x, -xi) if form == "minus" else complex(x, xi)
    return complex(_cpow(a, -z) * sf.gamma(z))


def check_fourier_kernel(x, a, xi, cfg: QuadratureConfig = DEFAULT_CFG, tol=1e-7,
                         form="minus", case=None) -> IdentityReport:
    if not (x > 0 and a > 0):
        raise DomainError("kernel needs x > 0 and a > 0")
    case = case or _auto_case("fourier_kernel", "fourier_kernel", x=x, a=a, xi=xi)
    p = sf.KernelParams(float(x), float(a))
    res = fourier_numeric(lambda t: sf.kernel_E(p, t), float(xi), kernel_hint(x, a), cfg)
    rhs = kernel_transform(x, a, xi, form)
    note = f"rhs a^-(x{'-' if form == 'minus' else '+'}i xi) Gamma(x{'-' if form == 'minus' else '+'}i xi)"
    return make_report(case, res.value, rhs, rel_tol=tol, quad_err=res.err_estimate,
                       note=note)


# ---------------------------------------------------------------------------
# multiplication formula  int F[f] g = int f F[g]

# e^{-pi t^2} <= e^{-25 pi} e^{-5 pi (|t| - 5)} for |t| >= 5
GAUSSIAN_HINT = DecayHint(sigma_sum=1.0, rate=5.0 * math.pi, width=5.0,
                          scale=math.exp(-25.0 * math.pi))


def _factor(spec):
    """(callable, decay hint) for 'gauss' or ('E', x, a)."""
    if spec == "gauss":
        return (lambda t: np.exp(-math.pi * np.asarray(t, dtype=float) ** 2)), GAUSSIAN_HINT
    kind, x, a = spec
    if kind != "E":
        raise DomainError(f"unknown factor {spec!r}")
    p = sf.KernelParams(float(x), float(a))
    return (lambda t: sf.kernel_E(p, t)), kernel_hint(x, a)


MULTIPLICATION_PAIRS = {
    "gauss-gauss": ("gauss", "gauss"),
    "E(1,1)-gauss": (("E", 1.0, 1.0), "gauss"),
    "E(1,2)-E(0.7,1)": (("E", 1.0, 2.0), ("E", 0.7, 1.0)),
    "E(1,1)-E(0.7,2)": (("E", 1.0, 1.0), ("E", 0.7, 2.0)),
    "gauss-E(0.7,2)": ("gauss", ("E", 0.7, 2.0)),
}


def _transformed(spec, cfg):
    g, hint = _factor(spec)

    def F(xis):
        xis = np.atleast_1d(np.asarray(xis, dtype=float))
        out = np.empty(xis.shape, dtype=complex)
        for i, xi in enumerate(xis):
            out[i] = fourier_numeric(g, xi, hint, cfg).value
        return out
    return F


def _pair_side(transformed_spec, plain_spec, cfg):
    F = _transformed(transformed_spec, cfg)
    g, hint = _factor(plain_spec)
    return integrate_line(lambda t: F(t) * g(t), hint, cfg)


def check_multiplication(fg_pair, cfg: QuadratureConfig = DEFAULT_CFG, tol=1e-7,
                         case=None) -> IdentityReport:
    if isinstance(fg_pair, str):
        if fg_pair not in MULTIPLICATION_PAIRS:
            raise DomainError(f"unknown pair {fg_pair!r}; known: {sorted(MULTIPLICATION_PAIRS)}")
        f_spec, g_spec = MULTIPLICATION_PAIRS[fg_pair]
    else:
        f_spec, g_spec = fg_pair
    case = case or _auto_case("multiplication", "multiplication", pair=str(fg_pair))
    lhs = _pair_side(f_spec, g_spec, cfg)
    rhs = _pair_side(g_spec, f_spec, cfg)
    return make_report(case, lhs.value, rhs.value, rel_tol=tol,
                       quad_err=lhs.err_estimate + rhs.err_estimate,
                       note="both sides by nested quadrature")


# ---------------------------------------------------------------------------
# the n-integrated identity and its von Mangoldt weighted sum

def check_eq_e(x1, x2, m=1.0, cfg: QuadratureConfig = DEFAULT_CFG, tol=1e-8,
               case=None) -> IdentityReport:
    """int m^{-x1-it} G(x1+it) G(x2+1/2-it)/(x2-it-1/2) dt
    = 2 pi G(x1+x2+1/2) / ((x1+x2-1/2) (m+1)^{x1+x2-1/2})."""
    x1, x2 = complex(x1), complex(x2)
    if not x1.real > 0:
        raise DomainError("check_eq_e needs Re x1 > 0")
    if not x2.real > 0.5 + 0.1:
        raise DomainError("check_eq_e needs Re x2 > 1/2 with margin 0.1")
    if abs(x1 + x2 - 0.5) < 0.1:
        raise DomainError("x1 + x2 too close to 1/2")
    case = case or _auto_case("eq_e", "eq_e", x1=x1, x2=x2, m=m)
    lm = math.log(m)

    def f(t):
        return (np.exp(-(x1 + 1j * t) * lm) / (x2 - 1j * t - 0.5)
                * sf.gamma(x1 + 1j * t) * sf.gamma(x2 + 0.5 - 1j * t))

    hint = DecayHint(sigma_sum=(x1 + x2).real - 0.5, shift=0.5 * (x2.imag - x1.imag),
                     width=0.5 * abs(x1.imag + x2.imag), freq=lm / TWO_PI)
    res = _integrate(f, hint, cfg)
    s = x1 + x2 - 0.5
    rhs = TWO_PI * sf.gamma(s + 1.0) / (s * _cpow(m + 1.0, s))
    return make_report(case, res.value, rhs, rel_tol=tol, quad_err=res.err_estimate)


@dataclass(frozen=True)
class E3Sides:
    lhs: complex
    rhs: complex
    quad_err: float
    tail: float


def eq_e3_sides(x1, x2, alpha, delta_p, Tp, M, cfg: QuadratureConfig = DEFAULT_CFG) -> E3Sides:
    """Both sides of the Lambda-weighted identity at one alpha."""
    x1, x2 = complex(x1), complex(x2)
    if not x1.real > 1:
        raise DomainError("needs Re x1 > 1 for the Dirichlet series of zeta'/zeta")
    if not (x1 + x2).real > 1.5:
        raise DomainError("needs Re(x1 + x2) > 3/2 for the m-sum")
    if not x2.real > 0.6:
        raise DomainError("needs Re x2 > 1/2 with margin 0.1")
    if M < 1000:
        raise DomainError("needs M >= 1000")
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    pre_exp = 0.5 - 0.5 * delta_p + 1j * Tp
    la = math.log(alpha)

    def f(t):
        z = x1 + 1j * t
        return (-sf.zeta_log_deriv(z) * np.exp((pre_exp - z) * la) / (x2 - 1j * t - 0.5)
                * sf.gamma(z) * sf.gamma(x2 + 0.5 - 1j * t))

    hint = DecayHint(sigma_sum=(x1 + x2).real - 0.5, shift=0.5 * (x2.imag - x1.imag),
                     width=0.5 * abs(x1.imag + x2.imag), freq=(abs(la) + 1.0) / TWO_PI)
    res = _integrate(f, hint, cfg)

    s = x1 + x2 - 0.5
    pref = TWO_PI * sf.gamma(s + 1.0) / s
    m, lam = sf.prime_powers(int(M))
    msum = np.sum(lam * np.exp(-s * np.log1p(alpha * m.astype(float))))
    weight = _cpow(alpha, pre_exp)
    rhs = pref * weight * msum
    # Lambda(m) <= log m and (1 + alpha m)^{-sigma} <= alpha^{-sigma} m^{-sigma}
    tail = abs(pref) * abs(weight) * alpha ** (-s.real) * sf.dirichlet_tail_bound(s.real, int(M))
    return E3Sides(complex(res.value), complex(rhs), res.err_estimate, tail)


def check_eq_e3_exact(x1, x2, alpha=1.0, delta_p=0.5, Tp=0.0, M=10**5,
                      cfg: QuadratureConfig = DEFAULT_CFG, tol=1e-6,
                      case=None) -> IdentityReport:
    """Lambda-weighted sum of the n-integrated identity, before any expansion in 1/(alpha m).

    ``tol`` is absolute; the truncated m-sum tail bound is added to the budget.
    """
    case = case or _auto_case("eq_e3", "eq_e3", x1=complex(x1), x2=complex(x2), alpha=alpha,
                              delta_p=delta_p, Tp=Tp, M=M)
    sides = eq_e3_sides(x1, x2, alpha, delta_p, Tp, M, cfg)
    return make_report(case, sides.lhs, sides.rhs, abs_tol=tol, extra=sides.tail,
                       quad_err=sides.quad_err, note=f"m-tail bound {sides.tail:.3g}")


def combine_abc(base_eval: Callable, alpha: float, delta_p: float):
    """Combine the alpha = 1, 2, 2 alpha and alpha instances of an identity.

    Returns E(1) - 2^{d/2} E(2) + 2^{d/2} E(2 alpha) - E(alpha), applied to the
    (lhs, rhs) pair.  Grouped as (E(1) - E(alpha)) + w (E(2 alpha) - E(2)) so an
    alpha-independent input cancels exactly.
    """
    cache = {}

    def ev(a):
        if a not in cache:
            cache[a] = tuple(complex(v) for v in base_eval(a))
        return cache[a]

    w = 2.0 ** (0.5 * delta_p)
    e1, e2, e2a, ea = ev(1.0), ev(2.0), ev(2.0 * alpha), ev(float(alpha))
    return tuple((e1[k] - ea[k]) + w * (e2a[k] - e2[k]) for k in range(2))


def check_fork_exact(x1, x2, alpha=2.0, delta_p=0.5, Tp=0.0, M=10**5,
                     cfg: QuadratureConfig = DEFAULT_CFG, tol=1e-5,
                     case=None) -> IdentityReport:
    """The four-instance combination of the Lambda-weighted identity (relative ``tol``)."""
    case = case or _auto_case("fork_exact", "fork_exact", x1=complex(x1), x2=complex(x2),
                              alpha=alpha, delta_p=delta_p, Tp=Tp, M=M)
    parts = {}

    def base_eval(a):
        parts[a] = eq_e3_sides(x1, x2, a, delta_p, Tp, M, cfg)
        return parts[a].lhs, parts[a].rhs

    lhs, rhs = combine_abc(base_eval, alpha, delta_p)
    w = 2.0 ** (0.5 * delta_p)
    weights = {1.0: 1.0, 2.0: w, 2.0 * alpha: w, float(alpha): 1.0}
    extra = sum(weights[a] * p.tail for a, p in parts.items())
    qerr = sum(weights[a] * p.quad_err for a, p in parts.items())
    return make_report(case, lhs, rhs, rel_tol=tol, extra=extra, quad_err=qerr)


def a1_coefficient(x1, x2) -> complex:
    """First binomial coefficient of (1 + 1/(alpha m))^{-(x1+x2-1/2)}."""
    return -(complex(x1) + complex(x2) - 0.5)


def j1_remainder(x1, x2, u):
    """(1 + u)^{-s} - u^{-s} (1 + a1/u), scaled by u^{s+2}; bounded as u grows."""
    s = complex(x1) + complex(x2) - 0.5
    u = np.asarray(u, dtype=float)
    exact = np.exp(-s * np.log1p(u))
    approx = np.exp(-s * np.log(u)) * (1.0 + a1_coefficient(x1, x2) / u)
    return np.abs((exact - approx) * np.exp((s + 2.0) * np.log(u)))


# ---------------------------------------------------------------------------
# the doubly integrated identity and its four-instance combination

def check_com4(x1, x2, alpha=1.0, cfg: QuadratureConfig = DEFAULT_CFG, tol=1e-8,
               case=None) -> IdentityReport:
    """int alpha^{-x1-it} G(x1+it) G(x2-it) / ((x1+it-1)(x2-it-1)) dt
    = 2 pi G(x1+x2) alpha^{-1} (alpha+1)^{2-x1-x2} / ((x1+x2-1)(x1+x2-2))."""
    x1, x2 = complex(x1), complex(x2)
    if not (x1.real > 1 and x2.real > 1):
        raise DomainError("check_com4 needs Re x1 > 1 and Re x2 > 1")
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    case = case or _auto_case("com4", "com4", x1=x1, x2=x2, alpha=alpha)
    la = math.log(alpha)

    def f(t):
        return (np.exp(-(x1 + 1j * t) * la) / ((x1 + 1j * t - 1.0) * (x2 - 1j * t - 1.0))
                * sf.gamma(x1 + 1j * t) * sf.gamma(x2 - 1j * t))

    hint = DecayHint(sigma_sum=(x1 + x2).real - 2.0, shift=0.5 * (x2.imag - x1.imag),
                     width=0.5 * abs(x1.imag + x2.imag), freq=abs(la) / TWO_PI)
    res = _integrate(f, hint, cfg)
    s = x1 + x2
    rhs = TWO_PI * sf.gamma(s) * _cpow(alpha + 1.0, 2.0 - s) / (alpha * (s - 1.0) * (s - 2.0))
    return make_report(case, res.value, rhs, rel_tol=tol, quad_err=res.err_estimate)


def kappa(tau, q, x, alpha, delta_p):
    """kappa(tau, q, x; alpha) with leading term 1."""
    p = -2.0 * x + 1.0 + q + 1j * tau
    c = _cpow(2.0, -1j * tau - q)
    ak = _cpow(alpha, -1j * tau - 0.5 * delta_p - q)
    return 1.0 - c * _cpow(3.0, p) - ak * _cpow(alpha + 1.0, p) + c * ak * _cpow(2.0 * alpha + 1.0, p)


def kappa_leading_power(tau, q, x, alpha, delta_p):
    """kappa with leading term 2^{-2x+1+q+i tau}, the value the four-instance combination produces."""
    p = -2.0 * x + 1.0 + q + 1j * tau
    return kappa(tau, q, x, alpha, delta_p) - 1.0 + _cpow(2.0, p)


def kappa_at_alpha_one(tau, q, x):
    """kappa (leading term 1) at alpha = 1."""
    return 1.0 - _cpow(2.0, -2.0 * x + 1.0 + q + 1j * tau)


def lemma3_rhs(x, q, tau, Tpp, alpha, delta_p, form="unit") -> complex:
    x = complex(x)
    k = kappa if form == "unit" else kappa_leading_power
    if form not in ("unit", "power"):
        raise DomainError(f"unknown form {form!r}")
    w = 2.0 * x - q - 1j * tau
    return complex(TWO_PI * sf.gamma(w + 1.0) * sf.gamma(0.5 + q + 1j * Tpp)
                   * k(tau, q, x, alpha, delta_p) / (w * (w - 1.0)))


def check_lemma3(x, q, tau, Tpp, alpha, delta_p, cfg: QuadratureConfig = DEFAULT_CFG,
                 tol=1e-7, form="unit", case=None) -> IdentityReport:
    x = complex(x)
    if not (x.real + 0.5 - q > 1 and x.real + 0.5 > 1):
        raise DomainError("the four-Gamma integral needs Re x + 1/2 - q > 1 and Re x + 1/2 > 1")
    if not (alpha > 0 and q > 0):
        raise DomainError("alpha and q must be positive")
    case = case or _auto_case("lemma3", "lemma3", x=x, q=q, tau=tau, Tpp=Tpp,
                              alpha=alpha, delta_p=delta_p)
    la = math.log(alpha)
    g_const = sf.gamma(0.5 + q + 1j * Tpp)

    def f(t):
        num = ((1.0 - np.exp((0.5 - 0.5 * delta_p - x - 1j * t) * la))
               * (1.0 - np.exp((0.5 - x - 1j * t) * sf.LN2)))
        den = (x - 0.5 - q - 1j * tau + 1j * t) * (x - 1j * t - 0.5)
        return (num / den * sf.gamma(x + 0.5 - q - 1j * tau + 1j * t) * g_const
                * sf.gamma(0.5 + x - 1j * t))

    hint = DecayHint(sigma_sum=2.0 * x.real + 1.0 - q - 2.0, shift=0.5 * tau,
                     width=0.5 * abs(tau - 2.0 * x.imag),
                     freq=(abs(la) + sf.LN2) / TWO_PI)
    res = _integrate(f, hint, cfg)
    rhs = lemma3_rhs(x, q, tau, Tpp, alpha, delta_p, form)
    # kappa can cancel to rounding level (it vanishes at alpha = 1 in the "power"
    # form), so allow a few ulps of its largest term times the prefactor
    w = 2.0 * x - q - 1j * tau
    pref = abs(TWO_PI * sf.gamma(w + 1.0) * g_const / (w * (w - 1.0)))
    p = -2.0 * x.real + 1.0 + q
    terms = 1.0 + 2.0 ** p + 2.0 ** -q * 3.0 ** p + alpha ** (-0.5 * delta_p - q) * (
        (alpha + 1.0) ** p + 2.0 ** -q * (2.0 * alpha + 1.0) ** p)
    rounding = 8.0 * np.finfo(float).eps * pref * terms
    note = "kappa leading term 1" if form == "unit" else "kappa leading term 2^(-2x+1+q+i tau)"
    return make_report(case, res.value, rhs, rel_tol=tol, extra=rounding,
                       quad_err=res.err_estimate, note=note)


# ---------------------------------------------------------------------------
# the alpha integral and the removable singularity of mu_i

def check_alpha_integral(X, A, cfg: QuadratureConfig = DEFAULT_CFG, tol=1e-9,
                         t_cap=1e3, case=None) -> IdentityReport:
    """int_1^inf alpha^{X-A} d alpha = 1/(A - 1 - X)."""
    X, A = complex(X), complex(A)
    c = X - A + 1.0
    if not c.real < 0:
        raise DomainError("needs Re(A - X) > 1")
    case = case or _auto_case("alpha_integral", "alpha_integral", X=X, A=A)
    res = integrate_interval(lambda a: np.exp((X - A) * np.log(a)), 1.0, t_cap, cfg)
    tail = -_cpow(t_cap, c) / c
    lhs = res.value + tail
    rhs = 1.0 / (A - 1.0 - X)
    return make_report(case, lhs, rhs, rel_tol=tol, quad_err=res.err_estimate)


def mu_limit_closed_form(D, entry, Tp) -> complex:
    """Limit of mu_i(D; t) at its removable point, from Gamma' (plus the bounded 1/eta term)."""
    D = complex(D)
    delta, tau = entry.beta_off, entry.gamma_ord - Tp
    Tpp = Tp + tau
    eta = complex(0.5 + delta, Tpp)
    main = (-sf.gamma_prime(D + 1j * Tp + 1j * tau)
            + sf.gamma_prime(D + 0.5 - delta) * sf.gamma(0.5 + delta + 1j * Tpp))
    return complex(main + sf.gamma(D + 1j * Tp + 1j * tau) / eta)


def richardson_limit(f, t0, steps=(1e-3, 1e-4, 1e-5)) -> complex:
    """Extrapolate f(t0 + h) to h = 0 from steps shrinking by a factor of 10."""
    vals = [complex(f(t0 + h)) for h in steps]
    r = 10.0
    while len(vals) > 1:
        vals = [(r * vals[i + 1] - vals[i]) / (r - 1.0) for i in range(len(vals) - 1)]
        r *= 10.0
    return vals[0]


def check_mu_limit(D, entry, Tp=0.0, tol=1e-5, rhs_offset=0.0, case=None) -> IdentityReport:
    """mu_i(D; t) near t = tau_i, extrapolated, against the L'Hopital closed form.

    Only meaningful when delta_i + delta'/2 = 0 and Im D = 0 (the removable
    configuration); ``rhs_offset`` exists for negative controls.
    """
    from .audit import mu_term  # audit builds on this module

    D = complex(D)
    case = case or _auto_case("mu_limit", "mu_limit", D=D, delta=entry.beta_off,
                              gamma=entry.gamma_ord, Tp=Tp)
    tau = entry.gamma_ord - Tp
    lhs = richardson_limit(lambda t: mu_term(D, entry, Tp, t), tau)
    rhs = mu_limit_closed_form(D, entry, Tp) + rhs_offset
    return make_report(case, lhs, rhs, rel_tol=tol,
                       note="rhs includes the regular Gamma(D+iT'+i tau)/eta_i term")


# ---------------------------------------------------------------------------
# suites

CHECKERS = {
    "base": check_base,
    "fourier_kernel": check_fourier_kernel,
    "multiplication": check_multiplication,
    "eq_e": check_eq_e,
    "eq_e3": check_eq_e3_exact,
    "fork_exact": check_fork_exact,
    "com4": check_com4,
    "lemma3": check_lemma3,
    "alpha_integral": check_alpha_integral,
    "mu_limit": None,  # handled specially: needs a ZeroEntry
}


def _run_case(case: IdentityCase, cfg: QuadratureConfig) -> IdentityReport:
    params = dict(case.params)
    if case.checker not in CHECKERS:
        raise DomainError(f"unknown checker {case.checker!r}")
    if case.checker == "mu_limit":
        from .zerodb import ZeroEntry
        entry = ZeroEntry(1, float(params.pop("gamma")), float(params.pop("delta")))
        return check_mu_limit(params.pop("D"), entry, case=case, **params)
    if case.checker == "multiplication":
        params["fg_pair"] = params.pop("pair")
    return CHECKERS[case.checker](cfg=cfg, case=case, **params)


def run_suite(suite, cfg: QuadratureConfig = DEFAULT_CFG) -> list[IdentityReport]:
    """Run every case in order; a failing case never aborts the suite."""
    reports = []
    for case in suite:
        try:
            reports.append(_run_case(case, cfg))
        except (ZetaAuditError, TypeError) as exc:
            nan = complex(math.nan, math.nan)
            reports.append(IdentityReport(case, nan, nan, math.nan, math.nan, math.nan,
                                          "inconclusive", math.nan,
                                          f"{type(exc).__name__}: {exc}"))
    return reports


def parse_value(text: str):
    text = text.strip()
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        return text


_META_KEYS = ("checker", "lhs", "rhs")


def parse_suite(text: str, source="<text>") -> list[IdentityCase]:
    """Parse an INI-style suite: one section per case, ``checker = <id>`` plus parameters."""
    cp = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ParseError(str(exc)) from None
    cases = []
    for name in cp.sections():
        sec = cp[name]
        if "checker" not in sec:
            raise ParseError(f"case [{name}] has no checker")
        params = {k: parse_value(v) for k, v in sec.items() if k not in _META_KEYS}
        cases.append(IdentityCase(name, sec["checker"].strip(), params,
                                  sec.get("lhs", ""), sec.get("rhs", "")))
    return cases


def load_suite(path) -> list[IdentityCase]:
    path = Path(path)
    return parse_suite(path.read_text(encoding="utf-8"), source=str(path))


def core_suite() -> list[IdentityCase]:
    text = resources.files("zeta_audit").joinpath("suites").joinpath("core.ini").read_text(
        encoding="utf-8")
    return parse_suite(text, source="core")
