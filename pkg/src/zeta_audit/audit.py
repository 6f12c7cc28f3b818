"""Numerical audit of the cancellation A* + S0 = 0 and its supporting bounds.

Notation: D = 1/2 - delta'/2 + i eps.  Every nontrivial zero (and the pole at
s = 1) contributes a record with offset delta, shift tau, T'' = T' + tau and a
sign; the pole record has delta = 1/2, T'' = 0 and sign -1.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from . import specialfn as sf
from .errors import DomainError, PoleError
from .identities import kappa, kappa_leading_power
from .quad import DecayHint, QuadratureConfig, integrate_line
from .zerodb import ZeroEntry, ZeroTable

TWO_PI = 2.0 * math.pi
POLE_TOL = 1e-8
REMOVABLE_TOL = 1e-6
CONVERGENCE_TOL = 1e-6
MIN_ZERO_DISTANCE = 0.05
AUDIT_CFG = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-10)


@dataclass(frozen=True)
class AuditParams:
    delta_p: float = 0.5
    Tp: float = 0.0
    eps: float = 0.25
    n_zeros: int = 100
    alpha_grid: tuple = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 100.0)
    M: int = 10**5

    def __post_init__(self):
        if not 0 < self.delta_p < 1:
            raise DomainError("delta' must lie in (0, 1)")
        if self.eps == 0:
            raise DomainError("eps must be non-zero")
        if self.n_zeros < 1:
            raise DomainError("n_zeros must be positive")
        if any(a < 1 for a in self.alpha_grid):
            raise DomainError("alpha grid values must be >= 1")
        object.__setattr__(self, "alpha_grid", tuple(float(a) for a in self.alpha_grid))

    @property
    def D(self) -> complex:
        return complex(0.5 - 0.5 * self.delta_p, self.eps)

    @property
    def s_point(self) -> complex:
        """1/2 - delta' + i(T' + 2 eps): where zeta'/zeta enters A0."""
        return complex(0.5 - self.delta_p, self.Tp + 2.0 * self.eps)

    def check_distance(self, table: ZeroTable) -> float:
        """Distance from s_point to the nearest tabulated zero (or its reflections)."""
        s = self.s_point
        best = math.inf
        for e in table.entries[:self.n_zeros]:
            for re in {0.5 + e.beta_off, 0.5 - e.beta_off}:
                for im in (e.gamma_ord, -e.gamma_ord):
                    best = min(best, abs(s - complex(re, im)))
        if best < MIN_ZERO_DISTANCE:
            raise DomainError(
                f"1/2 - delta' + i(T' + 2 eps) = {s} lies {best:.3g} from a zero; choose another eps"
            )
        return best

    def as_dict(self) -> dict:
        d = asdict(self)
        d["alpha_grid"] = list(self.alpha_grid)
        return d


@dataclass(frozen=True)
class ZeroRecord:
    """One summand: eta = 1/2 + delta + i T'' with T'' = T' + tau."""
    delta: float
    tau: float
    Tp: float = 0.0
    sign: float = 1.0
    index: int = 0  # 0 for the pole record

    @property
    def Tpp(self) -> float:
        return self.Tp + self.tau

    @property
    def eta(self) -> complex:
        return complex(0.5 + self.delta, self.Tpp)

    @property
    def gamma_factor(self) -> complex:
        """sign * Gamma(1/2 + delta + i T'')."""
        return self.sign * complex(sf.gamma(complex(0.5 + self.delta, self.Tpp)))


def pole_record(Tp: float = 0.0) -> ZeroRecord:
    return ZeroRecord(0.5, -Tp, Tp, -1.0, 0)


def _as_record(entry, Tp) -> ZeroRecord:
    if isinstance(entry, ZeroRecord):
        return entry
    return ZeroRecord(entry.beta_off, entry.gamma_ord - Tp, Tp, 1.0, entry.index)


def entry_records(entry: ZeroEntry, Tp: float = 0.0) -> list[ZeroRecord]:
    """Records for rho and its conjugate, plus 1 - conj(rho) and 1 - rho when off the line."""
    offsets = [entry.beta_off] if entry.beta_off == 0 else [entry.beta_off, -entry.beta_off]
    out = []
    for d in offsets:
        out.append(ZeroRecord(d, entry.gamma_ord - Tp, Tp, 1.0, entry.index))
        out.append(ZeroRecord(d, -entry.gamma_ord - Tp, Tp, 1.0, entry.index))
    return out


def audit_records(params: AuditParams, table: ZeroTable, n: int | None = None,
                  include_pole: bool = True) -> list[ZeroRecord]:
    """Pole record first, then zero records with delta >= -delta'/2 in ascending index."""
    n = params.n_zeros if n is None else n
    if n > table.count:
        raise DomainError(f"n_zeros={n} exceeds table size {table.count}")
    recs = [pole_record(params.Tp)] if include_pole else []
    for e in table.entries[:n]:
        recs += [r for r in entry_records(e, params.Tp) if r.delta >= -0.5 * params.delta_p]
    return recs


# ---------------------------------------------------------------------------
# summand functions

def xi_weight(x, alpha, t, delta_p):
    """(1 - alpha^{1/2-d'/2-x-it})(1 - 2^{1/2-x-it}) Gamma(x+1/2-it) / (x-1/2-it)."""
    x = complex(x)
    t = np.asarray(t, dtype=float)
    den = x - 0.5 - 1j * t
    if np.any(np.abs(den) < POLE_TOL):
        raise PoleError(f"xi_weight: x - 1/2 - it vanishes for x = {x}")
    z = 0.5 - x - 1j * t
    val = ((1.0 - np.exp((z - 0.5 * delta_p) * math.log(alpha))) * (1.0 - np.exp(z * sf.LN2))
           * sf.gamma(x + 0.5 - 1j * t) / den)
    return complex(val) if val.ndim == 0 else val


def mu_term(x, entry, Tp, t):
    """mu_i(x; t); at the removable point the L'Hopital value is used."""
    rec = _as_record(entry, Tp)
    x = complex(x)
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    den = x - 0.5 - rec.delta - 1j * rec.tau + 1j * t
    G = rec.gamma_factor
    g_main = sf.gamma(x + 1j * rec.Tp + 1j * t)
    near = np.abs(den) < REMOVABLE_TOL
    safe = np.where(near, 1.0, den)
    out = ((-1.0 / safe + 1.0 / rec.eta) * g_main
           + sf.gamma(x + 0.5 - rec.delta - 1j * rec.tau + 1j * t) * G / safe)
    if np.any(near):
        tn = t[near]
        out[near] = (-sf.gamma_prime(x + 1j * rec.Tp + 1j * tn)
                     + G * sf.gamma_prime(x + 0.5 - rec.delta - 1j * rec.tau + 1j * tn)
                     + g_main[near] / rec.eta)
    return complex(out[0]) if scalar else out


def gamma_term(x, entry, alpha, delta_p, Tp=0.0, form="unit"):
    """gamma_i(x, alpha); ``form`` picks kappa's leading term ("unit" or "power")."""
    rec = _as_record(entry, Tp)
    x = complex(x)
    w = 2.0 * x - rec.delta - 1j * rec.tau
    if abs(w) < 1e-12 or abs(w - 1.0) < 1e-12:
        raise PoleError(f"gamma_term: denominator vanishes at x = {x}")
    k = kappa if form == "unit" else kappa_leading_power
    return complex(TWO_PI * sf.gamma(w + 1.0) * rec.gamma_factor
                   * k(rec.tau, rec.delta, x, alpha, delta_p) / (w * (w - 1.0)))


def E_term(rec: ZeroRecord, params: AuditParams) -> complex:
    """E_i = 2 pi Gamma(2D+1-delta-i tau) sign Gamma(1/2+delta+iT'') / ((2D-delta-i tau)(2D-1-delta-i tau))."""
    w = 2.0 * params.D - rec.delta - 1j * rec.tau
    if abs(w) < 1e-12 or abs(w - 1.0) < 1e-12:
        raise PoleError(f"E_i denominator vanishes for record {rec.index}")
    g = sf.gamma(w + 1.0)
    if not np.isfinite(g):
        raise PoleError(f"Gamma pole in E_i for record {rec.index}")
    return complex(TWO_PI * g * rec.gamma_factor / (w * (w - 1.0)))


def stirling_gamma_bound(sigma: float, t: float) -> float:
    """Upper envelope sqrt(2 pi) |t|^{sigma-1/2} e^{-pi|t|/2} e^{1/(6|t|) + sigma^2/|t|}, |t| >= 1."""
    at = max(abs(t), 1.0)
    return (math.sqrt(TWO_PI) * at ** (sigma - 0.5) * math.exp(-0.5 * math.pi * at)
            * math.exp(1.0 / (6.0 * at) + sigma * sigma / at))


def E_envelope(rec: ZeroRecord, params: AuditParams) -> float:
    w = 2.0 * params.D - 1.0 - rec.delta - 1j * rec.tau  # E_i = 2 pi Gamma(w) Gamma(...)
    return TWO_PI * stirling_gamma_bound(w.real, w.imag) * stirling_gamma_bound(
        0.5 + rec.delta, rec.Tpp)


def V_alpha(params: AuditParams, alpha: float) -> complex:
    """Zeta'/zeta bracket of the (n1) right side at x = D."""
    D, Tp, dp = params.D, params.Tp, params.delta_p
    la = math.log(alpha)
    s_lo = 2.0 * D + 1j * Tp - 0.5
    pref = TWO_PI * sf.gamma(2.0 * D + 1j * Tp + 0.5) / s_lo
    t1 = (1.0 - np.exp((1.0 - 0.5 * dp - 2.0 * D) * la)) * (1.0 - np.exp((1.0 - 2.0 * D) * sf.LN2))
    t2 = (1.0 - np.exp((-0.5 * dp - 2.0 * D) * la)) * (1.0 - np.exp(-2.0 * D * sf.LN2))
    return complex(pref * (t1 * -sf.zeta_log_deriv(s_lo) + t2 * -sf.zeta_log_deriv(s_lo + 1.0)))


def compute_A0(params: AuditParams) -> complex:
    s = params.s_point
    factor = -1.0 + 2.0 ** complex(params.delta_p, -2.0 * params.eps)
    return complex(-TWO_PI * sf.gamma(s) * factor * sf.zeta_log_deriv(s))


def compute_A_star(params: AuditParams) -> complex:
    s = params.s_point
    return complex(-TWO_PI * sf.gamma(s) * sf.zeta_log_deriv(s))


# ---------------------------------------------------------------------------
# S0 and the step-1 report

def _doubling_list(n: int) -> list[int]:
    ns = sorted({max(1, n >> k) for k in range(5)})
    return ns


def compute_S0(params: AuditParams, table: ZeroTable, workers: int = 1):
    """Partial sums S0(N) for N in a doubling list ending at n_zeros.

    Returns ``(pole_term, [(N, S0(N)), ...], per-zero pair sums)``.  Terms may
    be evaluated in parallel but are always reduced in ascending index order.
    """
    if params.Tp != 0:
        raise DomainError("S0 is defined for T' = 0")
    recs = audit_records(params, table)
    pole = E_term(recs[0], params)
    zero_recs = recs[1:]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            terms = list(pool.map(lambda r: E_term(r, params), zero_recs))
    else:
        terms = [E_term(r, params) for r in zero_recs]
    by_index = {}
    for r, v in zip(zero_recs, terms):
        by_index.setdefault(r.index, []).append(v)
    pair_sums = []
    for i in range(1, params.n_zeros + 1):
        acc = 0j
        for v in by_index.get(i, []):
            acc += v
        pair_sums.append(acc)
    partial = []
    for N in _doubling_list(params.n_zeros):
        acc = pole
        for v in pair_sums[:N]:
            acc += v
        partial.append((N, acc))
    return pole, partial, pair_sums


@dataclass
class AuditReport:
    params: AuditParams
    A0: complex
    A_star: complex
    S0_partial: list
    claim_resid: float
    claim_resid_half: float
    cauchy_diff: float
    converged: bool
    zeros_source: str = ""
    notes: list = field(default_factory=list)

    @property
    def S0(self) -> complex:
        return self.S0_partial[-1][1]

    def as_dict(self) -> dict:
        def cx(z):
            return [float(z.real), float(z.imag)]
        return {
            "params": self.params.as_dict(),
            "A0": cx(self.A0),
            "A_star": cx(self.A_star),
            "S0_partial": [{"N": n, "S0": cx(v)} for n, v in self.S0_partial],
            "claim_resid": self.claim_resid,
            "claim_resid_half": self.claim_resid_half,
            "cauchy_diff": self.cauchy_diff,
            "converged": self.converged,
            "zeros_source": self.zeros_source,
            "notes": list(self.notes),
        }


def audit_step1(params: AuditParams, table: ZeroTable, workers: int = 1) -> AuditReport:
    params.check_distance(table)
    A0 = compute_A0(params)
    A_star = compute_A_star(params)
    _, partial, _ = compute_S0(params, table, workers)
    S_full = partial[-1][1]
    S_half = partial[-2][1] if len(partial) > 1 else partial[-1][1]
    cauchy = abs(S_full - S_half)
    finite = all(np.isfinite(v) for v in (A0, A_star, S_full))
    converged = bool(finite and cauchy < CONVERGENCE_TOL)
    resid = abs(A_star + S_full)
    resid_half = abs(A_star + S_half)
    notes = [
        f"zeros: {table.source} (first {params.n_zeros} of {table.count})",
        "A* has no zero truncation; S0 Cauchy difference is between the last two partial sums",
    ]
    if converged:
        holds = "yes" if resid < CONVERGENCE_TOL else "no"
        notes.append(f"A* + S0 vanishes to within {CONVERGENCE_TOL:g} at this (delta', eps): {holds}")
    else:
        notes.append("S0 not converged; no statement about A* + S0 is made")
    notes.append("the case analysis built on this equation rests on asserted continuations "
                 "and is outside what is computed here")
    return AuditReport(params, A0, A_star, partial, resid, resid_half, cauchy, converged,
                       table.source, notes)


# ---------------------------------------------------------------------------
# bounds and trends

def M_sum(params: AuditParams, table: ZeroTable, t, n: int | None = None):
    """M(t) = sum of mu_i(D; t) over the audit records (pole record included)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    recs = audit_records(params, table, n)
    D, Tp = params.D, params.Tp
    delta = np.array([r.delta for r in recs])[:, None]
    tau = np.array([r.tau for r in recs])[:, None]
    den = D - 0.5 - delta - 1j * tau + 1j * t[None, :]
    if np.any(np.abs(den) < REMOVABLE_TOL):
        out = np.zeros(t.shape, dtype=complex)
        for rec in recs:
            out += mu_term(D, rec, Tp, t)
        return out
    G = np.array([r.gamma_factor for r in recs])[:, None]
    inv_eta = np.array([1.0 / r.eta for r in recs])
    # the Gamma(x + iT' + it) factor is shared by every record
    shared = sf.gamma(D + 1j * Tp + 1j * t) * (np.sum(-1.0 / den, axis=0) + inv_eta.sum())
    own = sf.gamma(D + 0.5 - delta - 1j * tau + 1j * t[None, :]) * G / den
    # sum records in index order for reproducible rounding
    return shared + np.add.reduce(own, axis=0)


def _line_hint(params: AuditParams) -> DecayHint:
    # xi carries Gamma(D+1/2-it); every mu_i carries a Gamma in t + const, so the
    # product decays at least like e^{-pi|t|}; terms peaked near tau_i are damped
    # by e^{-pi|tau_i|/2} and are left inside a modest window.
    return DecayHint(sigma_sum=2.0 * params.D.real + 0.5, shift=0.0, rate=math.pi / 2,
                     width=5.0, scale=10.0)


def _integrate_peaked(f, hint, cfg):
    grid = np.linspace(hint.shift - hint.width - 10.0, hint.shift + hint.width + 10.0, 801)
    peak = float(np.max(np.abs(f(grid)))) or 1.0
    res = integrate_line(lambda t: f(t) / peak, hint, cfg)
    return res.value * peak, res.err_estimate * peak


@dataclass(frozen=True)
class BreakBound:
    alpha: float
    lhs_abs: float
    R0_abs: float
    Q0: float
    err: float

    @property
    def bound(self) -> float:
        return self.R0_abs + self.Q0

    @property
    def holds(self) -> bool:
        return self.lhs_abs <= self.bound + 2.0 * self.err


def _common_factor(D, t):
    return (1.0 - np.exp((0.5 - D - 1j * t) * sf.LN2)) * sf.gamma(D + 0.5 - 1j * t) / (D - 0.5 - 1j * t)


@lru_cache(maxsize=32)
def _R0_Q0(params: AuditParams, table: ZeroTable, n, cfg: QuadratureConfig):
    """|R0|, Q0 and their error; independent of alpha."""
    hint = _line_hint(params)

    def f(t):
        return M_sum(params, table, t, n) * _common_factor(params.D, t)

    R0, e1 = _integrate_peaked(f, hint, cfg)
    Q0, e2 = _integrate_peaked(lambda t: np.abs(f(t)), hint, cfg)
    return abs(R0), abs(Q0), e1 + e2


def check_break_bound(params: AuditParams, table: ZeroTable, alpha: float,
                      n: int | None = None, cfg: QuadratureConfig = AUDIT_CFG) -> BreakBound:
    """|int xi(D, alpha; t) M(t) dt| against the alpha-free bound |R0| + Q0."""
    D = params.D
    lhs, e1 = _integrate_peaked(
        lambda t: xi_weight(D, alpha, t, params.delta_p) * M_sum(params, table, t, n),
        _line_hint(params), cfg)
    R0, Q0, e2 = _R0_Q0(params, table, n, cfg)
    return BreakBound(float(alpha), abs(lhs), R0, Q0, e1 + e2)


def check_n1_trend(params: AuditParams, table: ZeroTable, n: int | None = None,
                   cfg: QuadratureConfig = AUDIT_CFG, kappa_form: str = "unit"):
    """[(alpha, |int xi M - V(alpha) - sum gamma_i(D, alpha)|)] over params.alpha_grid."""
    D = params.D
    hint = _line_hint(params)
    recs = audit_records(params, table, n)
    out = []
    for alpha in params.alpha_grid:
        lhs, _ = _integrate_peaked(
            lambda t: xi_weight(D, alpha, t, params.delta_p) * M_sum(params, table, t, n),
            hint, cfg)
        gsum = 0j
        for r in recs:
            gsum += gamma_term(D, r, alpha, params.delta_p, params.Tp, kappa_form)
        out.append((alpha, abs(lhs - V_alpha(params, alpha) - gsum)))
    return out


def trend_bounded(resids, factor: float = 3.0) -> bool:
    vals = np.array([r for _, r in resids])
    return bool(vals.max() <= factor * np.median(vals))


def summability_ratios(params: AuditParams, table: ZeroTable, alpha: float = 2.0,
                       x_window=None) -> np.ndarray:
    """Ratios P_{i+1}/P_i of per-pair bounds P_i = sum over the pair of sup_x |gamma_i(x, alpha)|."""
    if x_window is None:
        x_window = [params.D + 0.1 * k for k in range(11)]
    pairs = {}
    for r in audit_records(params, table, include_pole=False):
        m = max(abs(gamma_term(x, r, alpha, params.delta_p, params.Tp)) for x in x_window)
        pairs[r.index] = pairs.get(r.index, 0.0) + m
    P = np.array([pairs[i] for i in sorted(pairs)])
    return P[1:] / P[:-1]
