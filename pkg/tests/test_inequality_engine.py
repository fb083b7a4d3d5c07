import math

import mpmath
import pytest

from redheffer import (
    GridSpec,
    Order,
    QuotientKind,
    TheoremId,
    bw1_margin,
    check_inequality,
    check_power_chain,
    first_zero,
    inequality_bounds,
    monotonicity_scan,
    quotient_eval,
    sharp_constants,
    sharpness_probe,
    suite_summary,
    tight_first_zero,
)
from redheffer.errors import InequalityViolation, MissingParameter, OutOfDomain
from redheffer.inequality_engine import log_inorm, log_jnorm, raw_sharpness_probe, run_all, zhu_t5_gap

PI = math.pi
SMALL = GridSpec(nu_values=(-0.5, 0.5, 2.0), interior_points=19, r_values=(1.0, PI / 2))


def test_sharp_constants_half_orders():
    j = tight_first_zero(Order(0.5))
    c = sharp_constants("T1", Order(0.5), j1=j)
    assert c.lower_exp == pytest.approx(PI**2 / 6, rel=1e-15) and c.upper_exp == 1.0
    c = sharp_constants("T2", Order(0.5), j1=j)
    assert c.lower_exp == pytest.approx(PI**2 / 10, rel=1e-15) and c.upper_exp == 0.0
    c = sharp_constants("T5", Order(-0.5), r=PI / 2)
    assert c.upper_exp == pytest.approx(-PI**2 / 8, rel=1e-15)
    c = sharp_constants("TAN", Order(3.0))
    assert (c.nu, c.lower_exp, c.upper_exp) == (-0.5, PI**2 / 12, 1.0)


def test_sharp_constants_missing_inputs():
    with pytest.raises(MissingParameter):
        sharp_constants("T1", Order(0.0))
    with pytest.raises(MissingParameter):
        sharp_constants("T6", Order(0.0))
    with pytest.raises(OutOfDomain):
        sharp_constants("ZHU", Order(0.0), r=-1.0)


@pytest.mark.parametrize("x", [1e-3, 0.1, 0.7, 1.5, 2.5, 3.1])
def test_t1_bounds_match_sinc(x):
    lo, mid, up = inequality_bounds("T1", Order(0.5), x)
    base = 1 - x * x / PI**2
    assert mid == pytest.approx(math.sin(x) / x, rel=1e-13)
    assert lo == pytest.approx(base ** (PI**2 / 6), rel=1e-12)
    assert up == pytest.approx(base, rel=1e-12)
    assert lo <= mid <= up


@pytest.mark.parametrize("x", [1e-3, 0.3, 0.8, 1.2, 1.55])
def test_tan_bounds_match_closed_form(x):
    lo, mid, up = inequality_bounds("TAN", Order(-0.5), x)
    base = 1 / (1 - 4 * x * x / PI**2)
    assert mid == pytest.approx(math.tan(x) / x, rel=1e-13)
    assert lo == pytest.approx(base ** (PI**2 / 12), rel=1e-12)
    assert lo <= mid <= up


@pytest.mark.parametrize("x", [0.01, 0.5, 1.4])
def test_t5_bounds_match_cosh(x):
    lo, mid, up = inequality_bounds("T5", Order(-0.5), x, r=PI / 2)
    assert mid == pytest.approx(math.cosh(x), rel=1e-13)
    assert lo == 1.0
    assert up == pytest.approx((1 - 4 * x * x / PI**2) ** (-PI**2 / 8), rel=1e-12)


def test_log_helpers_small_and_large_x():
    with mpmath.workdps(40):
        for x in (1e-6, 1e-2, 0.5, 2.0):
            assert log_jnorm(0.5, x) == pytest.approx(float(mpmath.log(mpmath.sin(x) / x)), rel=1e-13)
            assert log_inorm(-0.5, x) == pytest.approx(float(mpmath.log(mpmath.cosh(x))), rel=1e-13)


def test_theta_example():
    # Theta_{-1/2} with r = pi/2 is log(tanh x / x) / log(1 - 4x^2/pi^2)
    x = PI / 4
    with mpmath.workdps(40):
        want = mpmath.log(mpmath.tanh(x) / x) / mpmath.log(1 - 4 * x * x / mpmath.pi**2)
    assert quotient_eval("Theta", Order(-0.5), x, r=PI / 2) == pytest.approx(float(want), rel=1e-12)
    assert float(want) == pytest.approx(0.6268857, abs=1e-7)


@pytest.mark.parametrize("x", [1e-3, 0.05, 1.0, 3.0])
def test_phi_closed_form(x):
    with mpmath.workdps(40):
        want = mpmath.log(mpmath.sin(x) / x) / mpmath.log(1 - x * x / mpmath.pi**2)
    assert quotient_eval("phi", Order(0.5), x) == pytest.approx(float(want), rel=1e-11)


def test_quotient_domain_errors():
    with pytest.raises(MissingParameter):
        quotient_eval("Gamma", Order(0.0), 0.5)
    with pytest.raises(OutOfDomain):
        quotient_eval("phi", Order(0.5), 4.0)
    with pytest.raises(OutOfDomain):
        inequality_bounds("T1", Order(0.5), 0.0)


def test_phi_probe_limits():
    # phi_{1/2} tends to pi^2/6 at 0 and to 1 at pi
    r0, r_end = sharpness_probe("T1", Order(0.5))
    assert r0 < 1e-6 and r_end < 1e-2
    raw0, _ = raw_sharpness_probe("T1", Order(0.5))
    assert raw0 < 1e-6


def test_power_chain_example():
    j = first_zero(Order(0.0))
    chain = check_power_chain(Order(0.0), 1.5, 6, j)
    assert len(chain) == 6
    assert all(b > a for a, b in zip(chain, chain[1:]))
    t = (1.5 / j.mid) ** 2
    assert chain[2] == pytest.approx(math.log1p(-(t**3)), rel=1e-15)
    with pytest.raises(OutOfDomain):
        check_power_chain(Order(0.0), 3.0, 6, j)
    with pytest.raises(ValueError):
        check_power_chain(Order(0.0), 1.0, 0, j)


def test_power_chain_violation_is_reported():
    # a fake zero far below j_{0,1} makes J_0 exceed the k=1 term
    from redheffer.zeros import CertifiedZero

    fake = CertifiedZero(1, 1.0, 1.0)
    with pytest.raises(InequalityViolation):
        check_power_chain(Order(0.0), 0.9, 3, fake)


@pytest.mark.parametrize("nu", [-0.5, 0.0, 3.0])
def test_bw1_margin_against_mpmath(nu):
    j = first_zero(Order(nu))
    for x in (0.1, 1.0, 0.99 * j.lo):
        with mpmath.workdps(40):
            theta = mpmath.mpf(j.mid) ** 2 / (4 * (nu + 1) * (nu + 2))
            want = -theta * mpmath.log(1 - (mpmath.mpf(x) / j.mid) ** 4)
        assert bw1_margin(Order(nu), x, j) == pytest.approx(float(want), rel=1e-13)
        assert bw1_margin(Order(nu), x, j) > 0


def test_zhu_gap_positive():
    for x in (1e-8, 0.5, 1.5):
        assert zhu_t5_gap(Order(0.0), x, PI / 2) > 0


@pytest.mark.parametrize("theorem", ["T1", "T2", "T3", "T5", "T6", "TAN", "CHAIN", "ZHU"])
def test_small_grid_passes(theorem):
    reports = check_inequality(theorem, SMALL)
    assert reports and all(r.passed for r in reports), [r.reason for r in reports if not r.passed]


def test_conj_is_exploratory():
    reports = check_inequality("CONJ", SMALL)
    assert {r.status for r in reports} == {"exploratory"}
    assert all(r.comparison_margin > 0 for r in reports)


def test_bw1_below_range_recorded_only():
    rep = check_inequality("BW1", GridSpec(nu_values=(-0.9,), interior_points=9))[0]
    assert rep.passed and rep.status == "exploratory" and rep.notes


def test_summary_counts():
    reports = run_all(SMALL, ["T1", "CONJ"])
    assert suite_summary(reports, "x") == {"suite": "x", "passed": 3, "failed": 0, "exploratory": 3}


def test_report_dict_has_no_nan():
    d = check_inequality("T3", SMALL)[0].to_dict()
    assert d["theorem"] == "T3" and d["comparison_margin"] is None


@pytest.mark.parametrize("kind", ["phi", "Phi", "Gamma", "Theta"])
def test_monotone_decreasing(kind):
    ok, direction, worst = monotonicity_scan(kind, Order(1.0), SMALL)
    assert ok and direction == "decreasing" and worst < 0


def test_psi_increasing_at_minus_half():
    ok, direction, _ = monotonicity_scan("psi", Order(-0.5), SMALL)
    assert ok and direction == "increasing"


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(interior_points=0)
    with pytest.raises(ValueError):
        GridSpec(nu_values=(-1.0,))
    assert GridSpec(interior_points=3).abscissae(4.0) == [1.0, 2.0, 3.0]
