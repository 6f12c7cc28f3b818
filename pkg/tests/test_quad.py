import math

import numpy as np
import pytest

from zeta_audit import specialfn as sf
from zeta_audit.errors import DomainError, NoConvergence, NonFinite, TruncationInsufficient
from zeta_audit.identities import GAUSSIAN_HINT, MULTIPLICATION_PAIRS, check_multiplication
from zeta_audit.quad import (
    GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, DecayHint, QuadratureConfig, choose_truncation,
    fourier_numeric, integrate_interval, integrate_line, kernel_hint, tail_bound,
)

CFG = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)


def gauss(t):
    return np.exp(-np.asarray(t) ** 2)


def sech_pi(t):
    return np.abs(sf.gamma(0.5 + 1j * np.asarray(t))) ** 2


def gamma_one_sq(t):
    return np.abs(sf.gamma(1 + 1j * np.asarray(t))) ** 2


EXAMPLES = [
    (gauss, DecayHint(sigma_sum=1.0, rate=5.0, width=5.0, scale=math.exp(-25.0)), math.sqrt(math.pi)),
    (sech_pi, DecayHint(sigma_sum=1.0), math.pi),
    (gamma_one_sq, DecayHint(sigma_sum=2.0), math.pi / 2),
]


def test_kronrod_rule_is_exact_for_polynomials():
    for deg in range(23):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert abs(KRONROD_WEIGHTS @ NODES**deg - exact) < 1e-14
    for deg in range(14):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert abs(GAUSS_WEIGHTS @ NODES**deg - exact) < 1e-14


@pytest.mark.parametrize("f, hint, exact", EXAMPLES)
def test_line_examples(f, hint, exact):
    res = integrate_line(f, hint, CFG)
    assert abs(res.value - exact) <= max(CFG.abs_tol, CFG.rel_tol * abs(res.value)) + res.tail_bound + 1e-14
    assert abs(res.value - exact) < 1e-10
    assert res.truncation_T <= CFG.max_truncation
    assert np.isfinite(res.err_estimate) and res.err_estimate >= 0


def test_deterministic():
    a = integrate_line(sech_pi, DecayHint(), CFG)
    b = integrate_line(sech_pi, DecayHint(), CFG)
    assert a == b


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(abs_tol=1e-16)
    with pytest.raises(DomainError):
        QuadratureConfig(rel_tol=1.0)
    with pytest.raises(DomainError):
        QuadratureConfig(max_truncation=5)
    with pytest.raises(DomainError):
        DecayHint(rate=0.0)


def test_choose_truncation_examples():
    tight = choose_truncation(DecayHint(sigma_sum=2.0), QuadratureConfig(abs_tol=1e-10))
    loose = choose_truncation(DecayHint(sigma_sum=2.0), QuadratureConfig(abs_tol=1e-2))
    assert 7 <= tight <= 12
    assert loose < tight
    assert tail_bound(DecayHint(sigma_sum=2.0), tight) < 1e-11
    with pytest.raises(TruncationInsufficient):
        choose_truncation(DecayHint(sigma_sum=10.0, rate=0.1),
                          QuadratureConfig(abs_tol=1e-12, max_truncation=50))


def test_nonfinite_integrand():
    with pytest.raises(NonFinite):
        integrate_line(lambda t: np.where(t > 1.0, np.nan, 1.0), DecayHint(), CFG)


def test_refinement_budget():
    cfg = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-14, max_refinements=2, initial_panels=1)
    with pytest.raises(NoConvergence):
        integrate_interval(lambda t: np.sqrt(np.abs(t - 0.3)), 0.0, 1.0, cfg)


def test_scalar_integrand_is_vectorized():
    res = integrate_line(lambda t: math.exp(-t * t), EXAMPLES[0][1], CFG)
    assert abs(res.value - math.sqrt(math.pi)) < 1e-12


def test_linearity():
    hint = DecayHint(sigma_sum=2.0)
    a, b = 0.3 - 2j, 1.7
    fa = integrate_line(sech_pi, hint, CFG)
    fb = integrate_line(gamma_one_sq, hint, CFG)
    fab = integrate_line(lambda t: a * sech_pi(t) + b * gamma_one_sq(t), hint, CFG)
    budget = 2 * (abs(a) * fa.err_estimate + abs(b) * fb.err_estimate + fab.err_estimate)
    assert abs(fab.value - (a * fa.value + b * fb.value)) <= budget


def test_conjugate_symmetry():
    def f(t):
        return sf.gamma(1.2 + 0.4j + 1j * t) * sf.gamma(0.9 - 1j * t) * np.exp(-0.7j * t)

    hint = DecayHint(sigma_sum=2.1, shift=-0.2, width=0.2, freq=0.7 / (2 * math.pi))
    mirrored = DecayHint(sigma_sum=2.1, shift=0.2, width=0.2, freq=0.7 / (2 * math.pi))
    r = integrate_line(f, hint, CFG)
    rc = integrate_line(lambda t: np.conj(f(-t)), mirrored, CFG)
    assert abs(rc.value - np.conj(r.value)) <= r.err_estimate + rc.err_estimate


@pytest.mark.parametrize("f, hint, exact", EXAMPLES)
def test_refinement_monotone(f, hint, exact):
    errs = []
    for rt in (1e-6, 5e-7, 2.5e-7, 1.25e-7):
        cfg = QuadratureConfig(abs_tol=1e-13, rel_tol=rt, initial_panels=2)
        errs.append(abs(integrate_interval(f, -12, 12, cfg).value - exact))
    for prev, cur in zip(errs, errs[1:]):
        assert cur <= prev + 1e-15


def test_fourier_examples():
    g = fourier_numeric(lambda t: np.exp(-math.pi * t**2), 0.0, GAUSSIAN_HINT, CFG)
    assert abs(g.value - 1) < 1e-12
    k = fourier_numeric(lambda t: sf.kernel_E(sf.KernelParams(1, 1), t), 0.0, kernel_hint(1, 1), CFG)
    assert abs(k.value - 1) < 1e-12


def test_fourier_panels_resolve_oscillation():
    res = fourier_numeric(lambda t: np.exp(-math.pi * t**2), 7.0, GAUSSIAN_HINT, CFG)
    assert abs(res.value - math.exp(-math.pi * 49)) < 1e-12
    assert res.panels_used >= 2 * res.truncation_T * 10 * 7


@pytest.mark.slow
@pytest.mark.parametrize("pair", ["gauss-gauss", "E(1,1)-gauss", "E(1,1)-E(0.7,2)", "gauss-E(0.7,2)"])
def test_multiplication_formula_pairs(pair):
    assert pair in MULTIPLICATION_PAIRS
    r = check_multiplication(pair, CFG)
    assert r.abs_resid <= 1e-8
