"""Complex special functions used throughout the package.

Every public function accepts a Python scalar or a numpy array.  Scalars come
back as ``complex`` (or ``float`` where noted); arrays come back as
``complex128`` arrays of the same shape, so quadrature integrands can be
evaluated on whole node sets at once.

Accuracy targets (relative, away from zeros of the function itself):

* ``gamma``      1e-12 on -50 < Re z <= 50, |Im z| <= 200
* ``log_gamma``  exp(log_gamma) agrees with gamma to 1e-10
* ``digamma``    1e-10 on the gamma domain
* ``zeta``       1e-10 on -10 <= Re s <= 10, |Im s| <= 100
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, NearZeroError, PoleError

EULER_GAMMA = 0.57721566490153286061
LOG_2PI = math.log(2.0 * math.pi)
LN2 = math.log(2.0)

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_2, B_4, ..., B_18
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
)

# Real part at which the asymptotic (Stirling) series takes over.
_ASYMPTOTIC_RE = 12.0

ZETA_ZERO_THRESHOLD = 1e-13


def _prepare(z):
    scalar = np.ndim(z) == 0
    return np.asarray(z, dtype=np.complex128), scalar


def _finish(out, scalar):
    if scalar:
        return complex(np.asarray(out).reshape(()))
    return out


def _check_gamma_poles(z):
    bad = (z.imag == 0.0) & (z.real <= 0.0) & (z.real == np.round(z.real))
    if np.any(bad):
        where = z[bad].ravel()[0]
        raise PoleError(f"gamma-type function has a pole at z = {where.real:g}")


def sinpi(z):
    """sin(pi z) with the real part reduced first, so zeros at integers are exact."""
    z, scalar = _prepare(z)
    n = np.round(z.real)
    r = (z.real - n) + 1j * z.imag
    sign = np.where(np.mod(n, 2.0) == 0.0, 1.0, -1.0)
    return _finish(sign * np.sin(np.pi * r), scalar)


def cospi(z):
    z, scalar = _prepare(z)
    return _finish(sinpi(z + 0.5), scalar)


def cotpi(z):
    """cot(pi z), written so it does not overflow for large |Im z|."""
    z, scalar = _prepare(z)
    out = np.empty_like(z)
    upper = z.imag >= 0.0
    # For Im w >= 0, e^{2 pi i w} has modulus <= 1.
    w = np.where(upper, z, np.conj(z))
    n = np.round(w.real)
    e = np.exp(2j * np.pi * ((w.real - n) + 1j * w.imag))
    with np.errstate(divide="ignore", invalid="ignore"):
        val = 1j * (e + 1.0) / (e - 1.0)
    out = np.where(upper, val, np.conj(val))
    return _finish(out, scalar)


def _lanczos_log_gamma(z):
    # valid (and accurate) for Re z >= 0.5
    zm = z - 1.0
    x = np.full_like(zm, _LANCZOS_COEF[0])
    for k in range(1, len(_LANCZOS_COEF)):
        x = x + _LANCZOS_COEF[k] / (zm + k)
    t = zm + _LANCZOS_G + 0.5
    return 0.5 * LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(x)


def gamma(z):
    """Gamma function via Lanczos, with reflection for Re z < 1/2."""
    z, scalar = _prepare(z)
    _check_gamma_poles(z)
    out = np.empty_like(z)
    right = z.real >= 0.5
    if np.any(right):
        out[right] = np.exp(_lanczos_log_gamma(z[right]))
    left = ~right
    if np.any(left):
        zl = z[left]
        out[left] = np.pi / (sinpi(zl) * np.exp(_lanczos_log_gamma(1.0 - zl)))
    return _finish(out, scalar)


def _shift_count(z):
    return np.maximum(0, np.ceil(_ASYMPTOTIC_RE - z.real)).astype(int)


def log_gamma(z):
    """Logarithm of the gamma function.

    For Re z > 0 this is the branch continuous along vertical lines that is
    real on the positive axis.  Left of the imaginary axis the value is still a
    logarithm of gamma(z), but no branch guarantee is made.
    """
    z, scalar = _prepare(z)
    _check_gamma_poles(z)
    shifts = _shift_count(z)
    acc = np.zeros_like(z)
    for k in range(int(shifts.max(initial=0))):
        m = k < shifts
        acc[m] += np.log(z[m] + k)
    w = z + shifts
    inv = 1.0 / w
    inv2 = inv * inv
    series = np.zeros_like(w)
    power = inv
    for k, b in enumerate(_BERNOULLI, start=1):
        series = series + b / (2 * k * (2 * k - 1)) * power
        power = power * inv2
    out = (w - 0.5) * np.log(w) - w + 0.5 * LOG_2PI + series - acc
    return _finish(out, scalar)


def digamma(z):
    """psi(z) = Gamma'(z)/Gamma(z): upward recurrence, then the asymptotic series."""
    z, scalar = _prepare(z)
    _check_gamma_poles(z)
    shifts = _shift_count(z)
    acc = np.zeros_like(z)
    for k in range(int(shifts.max(initial=0))):
        m = k < shifts
        acc[m] += 1.0 / (z[m] + k)
    w = z + shifts
    inv2 = 1.0 / (w * w)
    series = np.zeros_like(w)
    power = inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        series = series + b / (2 * k) * power
        power = power * inv2
    out = np.log(w) - 0.5 / w - series - acc
    return _finish(out, scalar)


def gamma_prime(z):
    """Gamma'(z) = Gamma(z) psi(z)."""
    z, scalar = _prepare(z)
    return _finish(gamma(z) * digamma(z), scalar)


# ---------------------------------------------------------------------------
# zeta via the Borwein-accelerated alternating (eta) series

@lru_cache(maxsize=64)
def _borwein_weights(n: int) -> np.ndarray:
    """(d_n - d_k)/d_n for k = 0..n-1, computed exactly then rounded once."""
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(
            math.factorial(n + i - 1) * 4**i,
            math.factorial(n - i) * math.factorial(2 * i),
        )
        d.append(n * acc)
    dn = d[n]
    w = [float((dn - d[k]) / dn) for k in range(n)]
    signs = [1.0 if k % 2 == 0 else -1.0 for k in range(n)]
    return np.array(w) * np.array(signs)


_RHO = math.log(3.0 + math.sqrt(8.0))


def _eta_terms_needed(s) -> int:
    t = float(np.max(np.abs(s.imag), initial=0.0))
    sig = float(np.min(s.real, initial=1.0))
    budget = 0.5 * math.pi * t + math.log1p(2.0 * t) + 40.0
    budget += max(0.0, 0.5 - sig) * math.log(2.0 + t)
    return max(20, int(math.ceil(budget / _RHO)))


def _eta_and_derivative(s):
    """eta(s) and eta'(s) for a 1-d array s (Re s >= -1/2 expected)."""
    n = _eta_terms_needed(s)
    w = _borwein_weights(n)
    logk = np.log(np.arange(1, n + 1, dtype=float))
    eta = np.empty_like(s)
    deta = np.empty_like(s)
    chunk = max(1, 2_000_000 // n)
    for lo in range(0, s.size, chunk):
        block = s[lo:lo + chunk, None]
        terms = w * np.exp(-block * logk)
        eta[lo:lo + chunk] = terms.sum(axis=1)
        deta[lo:lo + chunk] = -(terms * logk).sum(axis=1)
    return eta, deta


def _zeta_core(s, want_derivative):
    """zeta (and optionally zeta') on a flat array with s != 1 checked already."""
    z = np.empty_like(s)
    dz = np.empty_like(s) if want_derivative else None
    direct = s.real >= -0.5
    if np.any(direct):
        sd = s[direct]
        eta, deta = _eta_and_derivative(sd)
        p = np.exp((1.0 - sd) * LN2)  # 2^{1-s}
        denom = 1.0 - p
        zd = eta / denom
        z[direct] = zd
        if want_derivative:
            dz[direct] = (deta - zd * p * LN2) / denom
    refl = ~direct
    if np.any(refl):
        sr = s[refl]
        one_minus = 1.0 - sr
        z1, dz1 = _zeta_core(one_minus, True)
        chi_rest = np.exp(sr * LN2 + (sr - 1.0) * math.log(math.pi)) * gamma(one_minus)
        zr = chi_rest * sinpi(sr / 2.0) * z1
        z[refl] = zr
        if want_derivative:
            logd = LN2 + math.log(math.pi) - digamma(one_minus) - dz1 / z1
            dz[refl] = zr * logd + chi_rest * (0.5 * math.pi) * cospi(sr / 2.0) * z1
    return z, dz


def _check_zeta_pole(s):
    if np.any(s == 1.0):
        raise PoleError("zeta has a pole at s = 1")


def zeta(s):
    """Riemann zeta function.

    Right of Re s = -1/2 the Borwein-accelerated eta series is summed directly;
    further left the functional equation maps the point to Re s > 3/2.
    """
    s, scalar = _prepare(s)
    _check_zeta_pole(s)
    flat = s.ravel()
    z, _ = _zeta_core(flat, False)
    return _finish(z.reshape(s.shape), scalar)


def zeta_prime(s):
    s, scalar = _prepare(s)
    _check_zeta_pole(s)
    flat = s.ravel()
    _, dz = _zeta_core(flat, True)
    return _finish(dz.reshape(s.shape), scalar)


def zeta_log_deriv(s):
    """zeta'(s)/zeta(s), with zeta' from the term-by-term differentiated series."""
    s, scalar = _prepare(s)
    _check_zeta_pole(s)
    flat = s.ravel()
    z, dz = _zeta_core(flat, True)
    small = np.abs(z) < ZETA_ZERO_THRESHOLD
    if np.any(small):
        where = flat[small][0]
        raise NearZeroError(
            f"|zeta(s)| = {abs(z[small][0]):.3g} below threshold at s = {where}"
        )
    return _finish((dz / z).reshape(s.shape), scalar)


# ---------------------------------------------------------------------------
# von Mangoldt and Dirichlet series

MAX_LAMBDA_TERMS = 10**7


def von_mangoldt(m: int) -> float:
    """Lambda(m) by trial division."""
    if m < 1:
        raise DomainError("von_mangoldt needs m >= 1")
    if m == 1:
        return 0.0
    p = None
    d = 2
    n = m
    while d * d <= n:
        if n % d == 0:
            p = d
            break
        d += 1 if d == 2 else 2
    if p is None:
        return math.log(m)
    while n % p == 0:
        n //= p
    return math.log(p) if n == 1 else 0.0


@lru_cache(maxsize=8)
def prime_powers(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """All prime powers m <= limit with Lambda(m), in ascending m."""
    if limit > MAX_LAMBDA_TERMS:
        raise DomainError(f"Lambda table capped at {MAX_LAMBDA_TERMS}")
    if limit < 2:
        return np.zeros(0, dtype=np.int64), np.zeros(0)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    primes = np.nonzero(sieve)[0]
    ms, lams = [primes], [np.log(primes.astype(float))]
    base = primes.copy()
    power = primes.copy()
    while True:
        keep = power <= limit // base
        if not np.any(keep):
            break
        base = base[keep]
        power = power[keep] * base
        ms.append(power)
        lams.append(np.log(base.astype(float)))
    m = np.concatenate(ms)
    lam = np.concatenate(lams)
    order = np.argsort(m, kind="stable")
    return m[order], lam[order]


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    tail_bound: float
    terms: int


def dirichlet_tail_bound(sigma: float, M: int) -> float:
    """Upper bound for sum_{m>M} ln(m) m^{-sigma}, sigma > 1."""
    a = sigma - 1.0
    lnM = math.log(M)
    integral = M ** (-a) * (lnM / a + 1.0 / a**2)
    return integral + lnM * M ** (-sigma)


def lambda_series(s, M: int) -> SeriesResult:
    """Partial sum of sum_{m<=M} Lambda(m) m^{-s}, i.e. a truncation of -zeta'/zeta."""
    s = complex(s)
    if s.real <= 1.0:
        raise DomainError("lambda_series needs Re s > 1")
    m, lam = prime_powers(int(M))
    value = complex(np.sum(lam * np.exp(-s * np.log(m.astype(float)))))
    return SeriesResult(value, dirichlet_tail_bound(s.real, int(M)), int(M))


# ---------------------------------------------------------------------------
# kernels

@dataclass(frozen=True)
class KernelParams:
    x: float
    a: float

    def __post_init__(self):
        if not (self.x > 0 and self.a > 0):
            raise DomainError("kernel needs x > 0 and a > 0")


@dataclass(frozen=True)
class DecayFamilyParams:
    a: float = 1.0
    b: float = 1.0
    c: float = 1.0
    k: int = 0
    m: int = 0

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.c > 0):
            raise DomainError("decay family needs a, b, c > 0")
        if self.k < 0 or self.m < 0:
            raise DomainError("k and m must be non-negative")


def kernel_E(p: KernelParams, t):
    """E_{x,a}(t) = 2 pi exp(-2 pi x t) exp(-a exp(-2 pi t)), evaluated in log form."""
    t = np.asarray(t, dtype=float)
    with np.errstate(over="ignore"):
        expo = LOG_2PI - 2.0 * math.pi * p.x * t - p.a * np.exp(-2.0 * math.pi * t)
    out = np.exp(expo)
    return float(out) if out.ndim == 0 else out


def _h(p: DecayFamilyParams, t):
    with np.errstate(over="ignore"):
        return np.exp(-p.a * t - p.b * np.exp(-p.c * t))


# central-difference stencils for derivative orders 0..4
_STENCILS = {
    0: ((0,), (1.0,)),
    1: ((-1, 1), (-0.5, 0.5)),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5)),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0)),
}


def decay_family_h(p: DecayFamilyParams, t):
    """k-th derivative of h(t) = exp(-a t) exp(-b exp(-c t)).

    Derivatives use central differences with step 1e-4 * max(1, |t|).
    """
    if p.k not in _STENCILS:
        raise DomainError("derivative order limited to k <= 4")
    t = np.asarray(t, dtype=float)
    if p.k == 0:
        out = _h(p, t)
    else:
        step = 1e-4 * np.maximum(1.0, np.abs(t))
        offsets, coefs = _STENCILS[p.k]
        out = sum(c * _h(p, t + o * step) for o, c in zip(offsets, coefs))
        out = out / step**p.k
    return float(out) if out.ndim == 0 else out


def weighted_decay(p: DecayFamilyParams, t):
    """|t|^m |h^{(k)}(t)|, the quantity whose boundedness defines rapid decrease."""
    t = np.asarray(t, dtype=float)
    return np.abs(t) ** p.m * np.abs(decay_family_h(p, t))
