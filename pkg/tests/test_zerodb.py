import math
import threading

import mpmath
import numpy as np
import pytest

from zeta_audit import specialfn as sf
from zeta_audit import zerodb as zd
from zeta_audit.errors import DomainError, NotFound, OrderError, ParseError, PoleError, ValidationError


def write(tmp_path, text, name="z.txt"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_load_three_entries(tmp_path):
    p = write(tmp_path, "14.134725141734695\n21.022039638771555\n25.010857580145688")
    t = zd.load_zeros(p, validate=True)
    assert t.count == 3 and len(t) == 3
    assert t.entries[2].index == 3 and t.source == str(p)


def test_first_ordinates_rederived_by_sign_changes():
    found = zd.scan_zeros(26.0)
    assert np.allclose(found, [14.134725141734695, 21.022039638771555, 25.010857580145688], atol=1e-11)


def test_empty_file(tmp_path):
    assert zd.load_zeros(write(tmp_path, ""), validate=True).count == 0


def test_descending_is_order_error(tmp_path):
    with pytest.raises(OrderError):
        zd.load_zeros(write(tmp_path, "21.0\n14.1\n"), validate=False)


def test_parse_error_reports_line(tmp_path):
    with pytest.raises(ParseError) as exc:
        zd.load_zeros(write(tmp_path, "# header\n14.13\nabc\n"), validate=False)
    assert exc.value.line == 3


def test_comments_and_offsets():
    t = zd.parse_zeros("# c\n14.134725141735\n# mid\n30.0 0.25\n")
    assert t.offsets().tolist() == [0.0, 0.25]
    zd.validate_table(t)  # the synthetic off-line row is skipped
    with pytest.raises(ParseError):
        zd.parse_zeros("14.0 0.7\n")


def test_validation_error_reports_index(tmp_path):
    with pytest.raises(ValidationError) as exc:
        zd.load_zeros(write(tmp_path, "14.134725141734695\n21.5\n"), validate=True)
    assert exc.value.index == 2 and exc.value.value > 1e-6


def test_bundled_table_valid():
    t = zd.bundled_zeros(validate=False)
    assert t.count >= 100
    mags = zd.validate_table(t, limit=None)
    assert mags.size == t.count and np.all(mags < 1e-6)


def test_bundled_table_matches_mpmath_sample(table):
    for n in (1, 2, 50, 100, 250):
        assert abs(table.entries[n - 1].gamma_ord - float(mpmath.zetazero(n).imag)) < 1e-9


def test_default_zeros_resolution(tmp_path, monkeypatch):
    custom = write(tmp_path, "14.134725141734695\n")
    monkeypatch.setenv(zd.ENV_VAR, str(custom))
    assert zd.default_zeros().count == 1
    monkeypatch.delenv(zd.ENV_VAR)
    assert zd.default_zeros().count >= 100
    assert zd.default_zeros(custom).source == str(custom)


@pytest.mark.parametrize("t0, window, expected", [(14, 1, 14.1347251417), (20.5, 1, 21.0220396387)])
def test_find_zero_near(t0, window, expected):
    t = zd.find_zero_near(t0, window)
    assert abs(t - expected) < 1e-9
    assert abs(sf.zeta(0.5 + 1j * t)) < 1e-10


def test_find_zero_not_found():
    with pytest.raises(NotFound):
        zd.find_zero_near(16.5, 0.5)


def test_hadamard_constant_and_E():
    assert abs(zd.HADAMARD_B - (-0.0230957089661210)) < 1e-15
    base = -zd.HADAMARD_B - 0.5 * math.log(math.pi)
    assert abs(zd.explicit_E(0) - (base - sf.EULER_GAMMA / 2)) < 1e-14
    assert abs(zd.explicit_E(1) - (base + 0.5 * sf.digamma(1.5))) < 1e-14


def test_explicit_formula_off_the_real_axis():
    """Truncated at 400 paired zeros, the sum is already close at a complex point."""
    s = 3 + 2j
    direct = -sf.zeta_log_deriv(s)
    N = 400
    ours = zd.explicit_log_deriv(s, zd.ExplicitFormulaConfig(n_zeros=N), zd.bundled_zeros())
    # the paired tail beyond N is about sum 2 Re(s-1/2)/gamma^2 ~ 2 Re(s - 1/2) log(gamma_N)/(2 pi gamma_N)
    assert abs(ours - direct) < 0.02


def test_explicit_s2_within_tolerance(table):
    cfg = zd.ExplicitFormulaConfig(n_zeros=100)
    v = zd.explicit_log_deriv(2, cfg, table)
    assert abs(v + sf.zeta_log_deriv(2)) < 2e-2
    assert abs(v.imag) <= 1e-9


def test_explicit_residual_decreases(table):
    ref = -sf.zeta_log_deriv(2)
    res = [abs(zd.explicit_log_deriv(2, zd.ExplicitFormulaConfig(n_zeros=n), table) - ref)
           for n in (25, 50, 100, 200, 400)]
    for prev, cur in zip(res, res[1:]):
        assert cur <= 1.1 * prev
    full = abs(zd.explicit_log_deriv(2, zd.ExplicitFormulaConfig(n_zeros=table.count), table) - ref)
    assert full < res[2]


def test_pole_toggle(table):
    on = zd.explicit_log_deriv(2, zd.ExplicitFormulaConfig(n_zeros=10), table)
    off = zd.explicit_log_deriv(2, zd.ExplicitFormulaConfig(n_zeros=10, include_pole=False), table)
    assert on - off == pytest.approx(1.0, abs=1e-15)


def test_raw_order_same_value_for_finite_sums(table):
    a = zd.explicit_log_deriv(2 + 1j, zd.ExplicitFormulaConfig(n_zeros=50), table)
    b = zd.explicit_log_deriv(2 + 1j, zd.ExplicitFormulaConfig(n_zeros=50, pairing="raw_order"), table)
    assert abs(a - b) < 1e-12


def test_explicit_errors(table):
    with pytest.raises(PoleError):
        zd.explicit_log_deriv(1, zd.ExplicitFormulaConfig(n_zeros=5), table)
    with pytest.raises(PoleError):
        zd.explicit_log_deriv(table.entries[0].rho, zd.ExplicitFormulaConfig(n_zeros=5), table)
    with pytest.raises(DomainError):
        zd.explicit_log_deriv(2, zd.ExplicitFormulaConfig(n_zeros=table.count + 1), table)
    with pytest.raises(DomainError):
        zd.ExplicitFormulaConfig(pairing="sideways")


def test_offline_entry_contributes_four_zeros():
    t = zd.ZeroTable.from_ordinates([14.134725141734695], [0.2])
    cfg = zd.ExplicitFormulaConfig(n_zeros=1, include_pole=False, include_E=False)
    s = 2.0
    expected = -sum(1 / (s - r) + 1 / r for r in (0.7 + 14.134725141734695j, 0.7 - 14.134725141734695j,
                                                  0.3 + 14.134725141734695j, 0.3 - 14.134725141734695j))
    assert abs(zd.explicit_log_deriv(s, cfg, t) - expected) < 1e-15


def test_table_shared_across_threads(table):
    out = []

    def work():
        out.append(zd.explicit_log_deriv(2, zd.ExplicitFormulaConfig(n_zeros=100), table))

    threads = [threading.Thread(target=work) for _ in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert len(set(out)) == 1
