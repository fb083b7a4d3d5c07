import json
import math

import mpmath
import numpy as np
import pytest

from redheffer import (
    CertifiedZero,
    Order,
    ZeroTable,
    cached_zero_table,
    euler_rayleigh_bracket,
    first_zero,
    interlacing_residuals,
    tight_first_zero,
    zero_table,
)
from redheffer.errors import InvalidTolerance, OrderMismatch
from redheffer.zeros import CERT_FACTOR, UNIT_ROUNDOFF, _scipy_eval, cache_key, mcmahon, mcmahon_power_tail, refine_zero

GRID = [-0.9, -0.75, -0.5, -0.25, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0]


def zero_oracle(nu, n):
    """mpmath zero; negative orders by root polishing from Euler-Rayleigh (n=1) or McMahon starts."""
    with mpmath.workdps(30):
        if nu >= 0:
            return mpmath.besseljzero(nu, n)
        if n == 1:
            from redheffer import sigma_table_recurrence

            sig = sigma_table_recurrence(Order(nu), 6, dps=30)
            start = mpmath.sqrt(sig[5] / sig[6])
        else:
            start = mpmath.mpf(float(mcmahon(nu, n)))
        return mpmath.findroot(lambda t: mpmath.besselj(nu, t), start)


@pytest.mark.parametrize("nu", GRID)
def test_first_zero_matches_mpmath_and_bracket(nu):
    z = first_zero(Order(nu))
    truth = float(zero_oracle(nu, 1))
    assert z.lo <= truth <= z.hi
    assert z.hi - z.lo <= 2e-12
    a, b = euler_rayleigh_bracket(Order(nu))
    assert a < z.lo and z.hi < b


def test_first_zero_bad_tol():
    with pytest.raises(InvalidTolerance):
        first_zero(Order(0), tol=0.0)


@pytest.mark.parametrize("nu", [-0.9, 0.0, 2.7])
def test_tight_first_zero_is_ulp_scale(nu):
    z = tight_first_zero(Order(nu))
    truth = zero_oracle(nu, 1)
    assert z.lo <= truth <= z.hi
    assert z.hi - z.lo < 64 * UNIT_ROUNDOFF * z.hi


@pytest.mark.parametrize("nu", [-0.9, -0.5, 0.0, 1.0, 2.7, 10.0])
def test_table_against_mpmath(nu, tables):
    zt = tables(nu, 2000)
    for n in (1, 2, 3, 17, 40, 41, 150, 999, 2000):
        truth = zero_oracle(nu, n)
        z = zt[n]
        assert z.lo <= truth <= z.hi, (nu, n)
        assert z.n == n


def test_table_widths(tables):
    zt = tables(0.0, 2000)
    lo, hi = zt.bounds
    small = hi < 80.0
    assert np.all(hi[small] - lo[small] <= 2e-12 * (1 + 1e-9))
    assert np.all(np.diff(lo) > 0)
    # enclosure floor beyond the mpmath range
    assert np.all(hi - lo <= 2 * np.maximum(1e-12, 4 * CERT_FACTOR * UNIT_ROUNDOFF * (1 + hi)) * (1 + 1e-9))


def test_bounds_read_only(tables):
    lo, _ = tables(0.0, 2000).bounds
    with pytest.raises(ValueError):
        lo[0] = 0.0


def test_one_based_indexing(tables):
    zt = tables(0.5, 200)
    with pytest.raises(IndexError):
        zt[0]
    assert len(zt) == 200


def test_certified_error_model_covers_scipy():
    # the CERT_FACTOR envelope must dominate the actual scipy error
    rng = np.random.default_rng(7)
    for nu in (-0.9, -0.5, 0.0, 1.0, 2.7, 10.0):
        x = np.sort(rng.uniform(0.1, 3000.0, 60))
        v, err = _scipy_eval(nu, x)
        with mpmath.workdps(30):
            truth = np.array([float(mpmath.besselj(nu, xi)) for xi in x])
        assert np.all(np.abs(v - truth) <= err)


@pytest.mark.parametrize("nu", [-0.5, 0.0, 3.0])
def test_mcmahon_is_close_for_large_n(nu):
    n = np.array([50, 100])
    truth = np.array([float(zero_oracle(nu, int(k))) for k in n])
    assert np.all(np.abs(mcmahon(nu, n) - truth) < 1e-6)


@pytest.mark.parametrize("nu,m", [(0.0, 1), (0.0, 2), (2.7, 1), (2.7, 3)])
def test_mcmahon_tail_error_estimate(nu, m, tables):
    from redheffer import sigma_table_recurrence

    n = 200
    tail, err = mcmahon_power_tail(nu, tables(nu, n)[n], m)
    with mpmath.workdps(30):
        sigma = sigma_table_recurrence(Order(nu), m, dps=30)[m]
        partial = mpmath.fsum(mpmath.besseljzero(nu, k) ** (-2 * m) for k in range(1, n + 1))
        actual = float(sigma - partial)
    assert abs(actual - tail) <= err
    assert err < 1e-3 * actual


def test_interlacing(tables):
    a, b = tables(0.0, 2000), tables(1.0, 2000)
    gaps = interlacing_residuals(a, b)
    assert all(g > 0 for g in gaps)
    with pytest.raises(OrderMismatch):
        interlacing_residuals(a, tables(2.0, 2000))


def test_refine_zero():
    z = first_zero(Order(0.0))
    with mpmath.workdps(50):
        j = refine_zero(Order(0.0), z, 40)
        assert abs(j - mpmath.besseljzero(0, 1)) < mpmath.mpf(10) ** -38


def test_json_round_trip(tables):
    zt = tables(-0.5, 200)
    back = ZeroTable.from_json(zt.to_json())
    assert back.zeros == zt.zeros and back.order == zt.order
    assert json.loads(zt.to_json())["nu"] == -0.5


def test_cache_hit_equals_cold(tmp_path):
    order = Order(0.25)
    cold = cached_zero_table(order, 100, 1e-12, tmp_path)
    assert (tmp_path / cache_key(order, 100, 1e-12)).exists()
    warm = cached_zero_table(order, 100, 1e-12, tmp_path)
    assert warm.meta == {"cache": "hit"}
    assert warm.zeros == cold.zeros


def test_cache_dir_from_env(tmp_path, monkeypatch):
    from redheffer.zeros import default_cache_dir

    monkeypatch.setenv("REDHEFFER_CACHE_DIR", str(tmp_path))
    assert default_cache_dir() == tmp_path


def test_certified_zero_properties():
    z = CertifiedZero(1, 1.0, 3.0)
    assert z.mid == 2.0 and z.halfwidth == 1.0
