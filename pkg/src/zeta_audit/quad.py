"""Adaptive Gauss-Kronrod quadrature over the real line.

Integrands are expected to decay exponentially, as products of Gamma factors
do along vertical lines.  The infinite range is truncated using a
Stirling-type tail bound, and that bound is added to the reported error.

Integrands are called with a 1-d float array of nodes and must return an
array of the same length (complex or real).  Scalar-only callables are
wrapped with ``np.vectorize`` automatically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoConvergence, NonFinite, TruncationInsufficient

# Kronrod 15-point rule with its embedded 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # 15 nodes on [-1, 1], ascending
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-11
    max_truncation: float = 200.0
    initial_panels: int = 16
    max_refinements: int = 5000

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            v = getattr(self, name)
            if not (1e-15 < v < 1):
                raise DomainError(f"{name} must lie in (1e-15, 1), got {v}")
        if not (10 <= self.max_truncation <= 1000):
            raise DomainError("max_truncation must lie in [10, 1000]")
        if self.initial_panels < 1 or self.max_refinements < 1:
            raise DomainError("initial_panels and max_refinements must be positive")


@dataclass(frozen=True)
class DecayHint:
    """What the caller knows about how the integrand decays.

    The integrand is assumed bounded by about
    ``scale * |t - shift|^(sigma_sum - 1) * exp(-rate * (|t - shift| - width))``
    once ``|t - shift| > width``; ``freq`` is the largest oscillation frequency
    (cycles per unit t) present, used to size panels.
    """
    sigma_sum: float = 1.0
    shift: float = 0.0
    rate: float = math.pi
    scale: float = 1.0
    width: float = 0.0
    freq: float = 0.0

    def __post_init__(self):
        if not self.rate > 0:
            raise DomainError("decay rate must be positive")
        if self.width < 0:
            raise DomainError("width must be non-negative")


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_estimate: float
    truncation_T: float
    panels_used: int
    tail_bound: float = 0.0


def tail_bound(hint: DecayHint, T: float) -> float:
    """Two-sided tail mass beyond distance T from the decay window."""
    power = max(T, 1.0) ** (hint.sigma_sum - 1.0)
    return 4.0 * math.pi * hint.scale / hint.rate * power * math.exp(-hint.rate * T)


def choose_truncation(hint: DecayHint, cfg: QuadratureConfig) -> float:
    """Smallest T (to 1e-3) whose tail bound is below abs_tol / 10."""
    target = cfg.abs_tol / 10.0
    limit = cfg.max_truncation - hint.width
    if limit <= 1.0 or tail_bound(hint, limit) >= target:
        raise TruncationInsufficient(
            f"tail bound {tail_bound(hint, max(limit, 1.0)):.3g} cannot reach "
            f"{target:.3g} within max_truncation={cfg.max_truncation}"
        )
    # the bound is decreasing beyond its maximum at (sigma_sum - 1)/rate
    lo = max(1.0, (hint.sigma_sum - 1.0) / hint.rate)
    if tail_bound(hint, lo) < target:
        return lo
    hi = limit
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        if tail_bound(hint, mid) < target:
            hi = mid
        else:
            lo = mid
    return hi


def _as_vector_callable(f):
    def call(t):
        try:
            out = np.asarray(f(t))
        except (TypeError, ValueError):
            out = None
        if out is None or out.shape != t.shape:
            out = np.asarray(np.vectorize(f, otypes=[complex])(t))
        return out
    return call


def _eval_panels(f, left, right):
    mid = 0.5 * (left + right)
    half = 0.5 * (right - left)
    nodes = mid[:, None] + half[:, None] * NODES[None, :]
    vals = f(nodes.ravel()).reshape(nodes.shape)
    if not np.all(np.isfinite(vals)):
        bad = nodes[~np.isfinite(vals)][0]
        raise NonFinite(f"integrand is not finite at t = {bad:.6g}")
    vals = vals.astype(np.complex128)
    kron = half * (vals @ KRONROD_WEIGHTS)
    gauss = half * (vals @ GAUSS_WEIGHTS)
    resabs = half * (np.abs(vals) @ KRONROD_WEIGHTS)
    err = np.abs(kron - gauss)
    # a panel whose Kronrod/Gauss gap is at rounding level cannot be improved
    roundoff = err <= 50.0 * _EPS * resabs
    return kron, err, roundoff


def integrate_interval(f, a: float, b: float, cfg: QuadratureConfig,
                       min_panels: int | None = None) -> QuadResult:
    """Globally adaptive G7-K15 integration of f over [a, b]."""
    f = _as_vector_callable(f)
    n0 = max(cfg.initial_panels, min_panels or 1)
    edges = np.linspace(a, b, n0 + 1)
    left, right = edges[:-1], edges[1:]
    kron, err, roundoff = _eval_panels(f, left, right)
    refinements = 0
    while True:
        total = kron.sum()
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        err_sum = float(err.sum())
        if err_sum <= tol:
            break
        active = (~roundoff) & (err > tol / (2.0 * err.size))
        if not np.any(active):
            break
        # refine the worst panels first, at most what the budget still allows
        idx = np.nonzero(active)[0]
        room = cfg.max_refinements - refinements
        if room <= 0:
            raise NoConvergence(
                f"refinement budget exhausted: error {err_sum:.3g} > tolerance {tol:.3g}"
            )
        if idx.size > room:
            idx = idx[np.argsort(-err[idx], kind="stable")[:room]]
            idx.sort()
        refinements += idx.size
        mids = 0.5 * (left[idx] + right[idx])
        new_left = np.concatenate([left[idx], mids])
        new_right = np.concatenate([mids, right[idx]])
        k2, e2, r2 = _eval_panels(f, new_left, new_right)
        keep = np.ones(left.size, dtype=bool)
        keep[idx] = False
        left = np.concatenate([left[keep], new_left])
        right = np.concatenate([right[keep], new_right])
        kron = np.concatenate([kron[keep], k2])
        err = np.concatenate([err[keep], e2])
        roundoff = np.concatenate([roundoff[keep], r2])
        order = np.argsort(left, kind="stable")
        left, right, kron, err, roundoff = (
            left[order], right[order], kron[order], err[order], roundoff[order]
        )
    return QuadResult(complex(kron.sum()), float(err.sum()), 0.5 * (b - a), int(left.size))


def integrate_line(f, hint: DecayHint, cfg: QuadratureConfig) -> QuadResult:
    """Integral of f over the whole real line.

    The range is cut to ``shift +- (width + T)`` with T from
    :func:`choose_truncation`; panels start no wider than
    ``1 / (10 max(1, freq))``.
    """
    T = choose_truncation(hint, cfg)
    half = hint.width + T
    a, b = hint.shift - half, hint.shift + half
    panel_width = 1.0 / (10.0 * max(1.0, abs(hint.freq)))
    min_panels = int(math.ceil((b - a) / panel_width))
    res = integrate_interval(f, a, b, cfg, min_panels=min_panels)
    tb = tail_bound(hint, T)
    return QuadResult(res.value, res.err_estimate + tb, half, res.panels_used, tb)


def fourier_numeric(g, xi: float, support_hint: DecayHint, cfg: QuadratureConfig) -> QuadResult:
    """F[g](xi) = integral of g(t) exp(-2 pi i t xi) dt."""
    g = _as_vector_callable(g)
    hint = DecayHint(
        sigma_sum=support_hint.sigma_sum, shift=support_hint.shift, rate=support_hint.rate,
        scale=support_hint.scale, width=support_hint.width,
        freq=max(abs(support_hint.freq), abs(xi)),
    )
    return integrate_line(lambda t: g(t) * np.exp(-2j * math.pi * xi * t), hint, cfg)


def kernel_hint(x: float, a: float) -> DecayHint:
    """Decay window for E_{x,a}: peak at exp(-2 pi t) = x / a, rate 2 pi x to the right."""
    peak = math.log(a / x) / (2.0 * math.pi)
    return DecayHint(sigma_sum=1.0, shift=peak, rate=2.0 * math.pi * x, scale=1.0)


GAUSSIAN_HINT = DecayHint(sigma_sum=1.0, shift=0.0, rate=math.pi, scale=1.0)
