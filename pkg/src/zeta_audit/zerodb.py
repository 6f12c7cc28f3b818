"""Tables of nontrivial zeta zeros and the Hadamard explicit formula.

Zero-table file format: UTF-8 text, one ordinate per line, ``#`` starts a
comment line, an optional second column gives the offset ``beta_off`` of the
real part from 1/2 (default 0).  Rows with a non-zero offset are synthetic
hypothesis data and are never validated against zeta.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import specialfn as sf
from .errors import NotFound, OrderError, ParseError, PoleError, ValidationError, DomainError

ENV_VAR = "ZETA_AUDIT_ZEROS"
BUNDLED_NAME = "zeros.txt"
VALIDATION_THRESHOLD = 1e-6
VALIDATE_FIRST = 50

# constant of the Hadamard product: B = log(4 pi)/2 - 1 - gamma_E/2
HADAMARD_B = 0.5 * math.log(4.0 * math.pi) - 1.0 - 0.5 * sf.EULER_GAMMA


@dataclass(frozen=True)
class ZeroEntry:
    index: int
    gamma_ord: float
    beta_off: float = 0.0

    def __post_init__(self):
        if self.index < 1:
            raise DomainError("zero index starts at 1")
        if not self.gamma_ord > 0:
            raise DomainError("ordinate must be positive")
        if not -0.5 < self.beta_off < 0.5:
            raise DomainError("beta_off must lie in (-1/2, 1/2)")

    @property
    def rho(self) -> complex:
        return complex(0.5 + self.beta_off, self.gamma_ord)


@dataclass(frozen=True)
class ZeroTable:
    entries: tuple[ZeroEntry, ...]
    source: str = "<memory>"

    def __post_init__(self):
        g = [e.gamma_ord for e in self.entries]
        for i in range(1, len(g)):
            if not g[i] > g[i - 1]:
                raise OrderError(
                    f"ordinates must be strictly ascending: entry {i + 1} "
                    f"({g[i]}) follows {g[i - 1]}"
                )

    @property
    def count(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def ordinates(self, n: int | None = None) -> np.ndarray:
        return np.array([e.gamma_ord for e in self.entries[:n]], dtype=float)

    def offsets(self, n: int | None = None) -> np.ndarray:
        return np.array([e.beta_off for e in self.entries[:n]], dtype=float)

    def head(self, n: int) -> "ZeroTable":
        return ZeroTable(self.entries[:n], self.source)

    @classmethod
    def from_ordinates(cls, ordinates, offsets=None, source="<memory>"):
        offsets = [0.0] * len(ordinates) if offsets is None else offsets
        return cls(tuple(ZeroEntry(i + 1, float(g), float(b))
                         for i, (g, b) in enumerate(zip(ordinates, offsets))), source)


# ---------------------------------------------------------------------------
# critical-line root finding

def riemann_siegel_theta(t):
    t = np.asarray(t, dtype=float)
    return np.imag(sf.log_gamma(0.25 + 0.5j * t)) - 0.5 * t * math.log(math.pi)


def hardy_z(t):
    """Z(t) = exp(i theta(t)) zeta(1/2 + i t), real-valued on the real axis."""
    t = np.asarray(t, dtype=float)
    val = np.exp(1j * riemann_siegel_theta(t)) * sf.zeta(0.5 + 1j * t)
    out = np.real(val)
    return float(out) if out.ndim == 0 else out


def _bisect_brackets(lo, hi, zlo):
    lo, hi, zlo = lo.copy(), hi.copy(), zlo.copy()
    for _ in range(200):
        if not np.any(hi - lo > 4.0 * np.spacing(hi)):
            break
        mid = 0.5 * (lo + hi)
        zm = hardy_z(mid)
        same = np.sign(zm) == np.sign(zlo)
        lo = np.where(same, mid, lo)
        zlo = np.where(same, zm, zlo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def _sign_changes(a, b, step):
    n = max(2, int(math.ceil((b - a) / step)) + 1)
    grid = np.linspace(a, b, n)
    z = hardy_z(grid)
    idx = np.nonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)[0]
    return grid[idx], grid[idx + 1], z[idx]


def find_zero_near(t0: float, window: float) -> float:
    """Ordinate of the critical-line zero closest to t0 within t0 +- window."""
    if not window > 0:
        raise DomainError("window must be positive")
    a, b = max(t0 - window, 1.0), t0 + window
    if b <= a:
        raise NotFound(f"no zero in [{t0 - window}, {t0 + window}]")
    lo, hi, zlo = _sign_changes(a, b, min(0.01, window / 20.0))
    if lo.size == 0:
        raise NotFound(f"no sign change of Z(t) in [{a:g}, {b:g}]")
    roots = _bisect_brackets(lo, hi, zlo)
    root = float(roots[np.argmin(np.abs(roots - t0))])
    if abs(sf.zeta(0.5 + 1j * root)) >= 1e-10:
        raise NotFound(f"sign change at {root} is not a zero of zeta")
    return root


def scan_zeros(t_max: float, step: float = 0.02) -> np.ndarray:
    """All critical-line zero ordinates in (0, t_max] detected by sign changes of Z."""
    lo, hi, zlo = _sign_changes(1.0, t_max, step)
    return _bisect_brackets(lo, hi, zlo)


# ---------------------------------------------------------------------------
# loading

def parse_zeros(text: str, source: str = "<text>") -> ZeroTable:
    ords, offs = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) > 2:
            raise ParseError(f"expected 1 or 2 columns, got {len(parts)}", lineno)
        try:
            g = float(parts[0])
            b = float(parts[1]) if len(parts) == 2 else 0.0
        except ValueError:
            raise ParseError(f"not a decimal literal: {line!r}", lineno) from None
        if not (math.isfinite(g) and g > 0):
            raise ParseError(f"ordinate must be positive and finite: {line!r}", lineno)
        if not -0.5 < b < 0.5:
            raise ParseError(f"beta_off must lie in (-1/2, 1/2): {line!r}", lineno)
        if ords and not g > ords[-1]:
            raise OrderError(
                f"line {lineno}: ordinate {g} does not exceed previous {ords[-1]}"
            )
        ords.append(g)
        offs.append(b)
    return ZeroTable.from_ordinates(ords, offs, source=source)


def zeta_magnitudes(table: ZeroTable, limit: int | None = None):
    """(on-line entries, |zeta(1/2 + i gamma)|) for the first ``limit`` entries."""
    entries = table.entries if limit is None else table.entries[:limit]
    online = [e for e in entries if e.beta_off == 0.0]
    if not online:
        return [], np.zeros(0)
    g = np.array([e.gamma_ord for e in online])
    return online, np.abs(sf.zeta(0.5 + 1j * g))


def validate_table(table: ZeroTable, limit: int | None = VALIDATE_FIRST) -> np.ndarray:
    """|zeta(1/2 + i gamma)| for the on-line entries; raises on the first failure."""
    online, mags = zeta_magnitudes(table, limit)
    for e, v in zip(online, mags):
        if not v < VALIDATION_THRESHOLD:
            raise ValidationError(
                f"entry {e.index} (gamma = {e.gamma_ord}): |zeta(1/2 + i gamma)| = {v:.3g}",
                index=e.index, value=float(v),
            )
    return mags


def load_zeros(path, validate: bool = True) -> ZeroTable:
    path = Path(path)
    table = parse_zeros(path.read_text(encoding="utf-8"), source=str(path))
    if validate:
        validate_table(table)
    return table


def bundled_path() -> Path:
    return Path(str(resources.files("zeta_audit").joinpath("data").joinpath(BUNDLED_NAME)))


def bundled_zeros(validate: bool = False) -> ZeroTable:
    return load_zeros(bundled_path(), validate=validate)


def default_zeros(path=None, validate: bool = False) -> ZeroTable:
    """Explicit path, else $ZETA_AUDIT_ZEROS, else the bundled table."""
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    if path is None:
        return bundled_zeros(validate=validate)
    return load_zeros(path, validate=validate)


# ---------------------------------------------------------------------------
# explicit formula

@dataclass(frozen=True)
class ExplicitFormulaConfig:
    n_zeros: int = 100
    pairing: str = "conjugate_pairs"
    include_pole: bool = True
    include_E: bool = True

    def __post_init__(self):
        if self.n_zeros < 0:
            raise DomainError("n_zeros must be non-negative")
        if self.pairing not in ("conjugate_pairs", "raw_order"):
            raise DomainError(f"unknown pairing {self.pairing!r}")


def explicit_E(s):
    """Gamma-factor remainder: -B - log(pi)/2 + psi(s/2 + 1)/2."""
    s = complex(s)
    return -HADAMARD_B - 0.5 * math.log(math.pi) + 0.5 * sf.digamma(s / 2.0 + 1.0)


def _zero_set(entry: ZeroEntry) -> list[complex]:
    """rho and its conjugate, plus the reflections 1 - rho when off the line."""
    rho = entry.rho
    zeros = [rho, rho.conjugate()]
    if entry.beta_off != 0.0:
        refl = 1.0 - rho.conjugate()
        zeros += [refl, refl.conjugate()]
    return zeros


def explicit_log_deriv(s, cfg: ExplicitFormulaConfig, table: ZeroTable) -> complex:
    """Truncated right side of the explicit formula for -zeta'/zeta(s)."""
    s = complex(s)
    if cfg.n_zeros > table.count:
        raise DomainError(f"n_zeros={cfg.n_zeros} exceeds table size {table.count}")
    entries = table.entries[:cfg.n_zeros]
    groups = [_zero_set(e) for e in entries]
    for grp in groups:
        for rho in grp:
            if abs(s - rho) < 1e-12:
                raise PoleError(f"s = {s} coincides with zero {rho}")
    if cfg.pairing == "conjugate_pairs":
        zsum = 0j
        for grp in groups:
            zsum += sum((1.0 / (s - r) + 1.0 / r) for r in grp)
    else:
        upper = [r for grp in groups for r in grp if r.imag > 0]
        lower = [r for grp in groups for r in grp if r.imag < 0]
        zsum = 0j
        for r in upper + lower:
            zsum += 1.0 / (s - r) + 1.0 / r
    out = -zsum
    if cfg.include_pole:
        if s == 1:
            raise PoleError("s = 1 is the pole of zeta")
        out += 1.0 / (s - 1.0)
    if cfg.include_E:
        out += explicit_E(s)
    return out
