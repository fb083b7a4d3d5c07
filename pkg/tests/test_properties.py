"""Randomized invariants checked with hypothesis."""

import math
from fractions import Fraction

import mpmath
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import inorm_oracle, jnorm_oracle
from redheffer import (
    Order,
    closed_form,
    eval_inorm,
    eval_jnorm,
    first_zero,
    inequality_bounds,
    sigma_table_recurrence,
    tight_first_zero,
)
from redheffer.number_theory import bernoulli_numbers

orders = st.floats(min_value=-0.99, max_value=12.0, allow_nan=False)
fractions = st.floats(min_value=1e-6, max_value=0.999, allow_nan=False)
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(nu=orders, x=st.floats(min_value=-25.0, max_value=25.0, allow_nan=False))
def test_jnorm_within_its_bound(nu, x):
    sv = eval_jnorm(Order(nu), x)
    with mpmath.workdps(40):
        assert abs(mpmath.mpf(sv.value) - jnorm_oracle(nu, abs(x))) <= sv.abs_error + 1e-300
    assert eval_jnorm(Order(nu), -x).value == sv.value


@SETTINGS
@given(nu=orders, x=st.floats(min_value=0.0, max_value=20.0, allow_nan=False))
def test_inorm_within_bound_and_at_least_one(nu, x):
    sv = eval_inorm(Order(nu), x)
    assert sv.value >= 1.0
    with mpmath.workdps(40):
        assert abs(mpmath.mpf(sv.value) - inorm_oracle(nu, x)) <= sv.abs_error
    assert eval_inorm(Order(nu), x + 0.5).value > sv.value


@SETTINGS
@given(nu=orders)
def test_first_zero_in_bracket(nu):
    z = first_zero(Order(nu))
    assert 4 * (nu + 1) < z.lo**2 and z.hi**2 < 4 * (nu + 1) * (nu + 2)
    with mpmath.workdps(30):
        assert mpmath.besselj(nu, z.lo) * mpmath.besselj(nu, z.hi) <= 0


@SETTINGS
@given(nu=orders, m=st.integers(min_value=1, max_value=12))
def test_rayleigh_sums_bracket_first_zero(nu, m):
    # sigma_m^(-1/m) < j^2 < sigma_m / sigma_(m+1)
    sig = sigma_table_recurrence(Order(Fraction(nu)), m + 1, exact=True)
    j2 = Fraction(tight_first_zero(Order(nu)).mid) ** 2
    assert sig[m] / sig[m + 1] > j2 * (1 - Fraction(1, 10**12))
    assert float(sig[m]) ** (-1.0 / m) < float(j2) * (1 + 1e-12)


@SETTINGS
@given(nu=st.floats(min_value=-0.95, max_value=10.0), frac=fractions)
def test_t1_sandwich(nu, frac):
    j = tight_first_zero(Order(nu)).mid
    lo, mid, up = inequality_bounds("T1", Order(nu), frac * j)
    assert lo * (1 - 1e-12) <= mid <= up * (1 + 1e-12)


@SETTINGS
@given(nu=st.floats(min_value=-0.95, max_value=10.0), frac=fractions)
def test_t6_sandwich(nu, frac):
    r = 1.7
    lo, mid, up = inequality_bounds("T6", Order(nu), frac * r, r=r)
    assert lo * (1 - 1e-12) <= mid <= up * (1 + 1e-12)


@SETTINGS
@given(x=st.floats(min_value=1e-8, max_value=1.5707, allow_nan=False))
def test_tan_sandwich(x):
    lo, mid, up = inequality_bounds("TAN", Order(-0.5), x)
    assert lo * (1 - 1e-12) <= mid <= up * (1 + 1e-12)
    assert abs(mid / closed_form("tanc", x) - 1) < 1e-12


@given(n=st.integers(min_value=1, max_value=60))
def test_bernoulli_signs_alternate(n):
    b = bernoulli_numbers(2 * n)[2 * n]
    assert (b > 0) == (n % 2 == 1)


@SETTINGS
@given(x=st.floats(min_value=0.0, max_value=30.0, allow_nan=False))
def test_half_order_closed_forms(x):
    jv, iv = eval_jnorm(Order(-0.5), x), eval_inorm(Order(0.5), x)
    assert abs(jv.value - math.cos(x)) <= jv.abs_error + 1e-16
    assert abs(iv.value - closed_form("sinhc", x)) <= iv.abs_error + 4e-16 * iv.value
