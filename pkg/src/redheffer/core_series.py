"""Normalized Bessel and modified Bessel functions with certified error bounds.

The normalized functions are

    J_nu(x) = sum_n (-1)^n Gamma(nu+1) / (4^n n! Gamma(nu+n+1)) x^(2n)
    I_nu(x) = sum_n        Gamma(nu+1) / (4^n n! Gamma(nu+n+1)) x^(2n)

so both equal 1 at the origin and are even in x.  Every evaluator returns a
:class:`SeriesValue` whose ``abs_error`` bounds the distance to the true value
(truncation plus a running floating-point rounding bound).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING

import mpmath
import numpy as np

from .errors import InvalidOrder, InvalidTolerance, NearPole, NonConvergence, OutOfDomain, TailBoundFailure

if TYPE_CHECKING:
    from .zeros import CertifiedZero, ZeroTable

UNIT_ROUNDOFF = 2.0**-53
TERM_CAP = 500
DEFAULT_TOL = 1e-12
RHO_GEO = 0.5
DEFLATION_THRESHOLD = 0.9
# past this multiple of j_{nu,1} deflation no longer helps
DEFLATION_OUTER = 1.1
# relative accuracy of the double-double first zero (bisected to 34 digits)
DD_REL = 1e-32


@dataclass(frozen=True)
class Order:
    """Bessel order ``nu``; only ``nu > -1`` is admissible."""

    nu: float

    def __post_init__(self) -> None:
        nu = float(self.nu)
        if not math.isfinite(nu) or nu <= -1.0:
            raise InvalidOrder(f"nu must exceed -1 (got {self.nu!r})")
        object.__setattr__(self, "nu", nu)

    @property
    def fraction(self) -> Fraction:
        """Exact rational value of the stored binary64 order."""
        return Fraction(self.nu)

    def shifted(self, k: int = 1) -> Order:
        return Order(self.nu + k)


@dataclass(frozen=True)
class SeriesValue:
    value: float
    abs_error: float
    terms_used: int
    method: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "abs_error", float(self.abs_error))

    def __float__(self) -> float:
        return self.value

    @property
    def lo(self) -> float:
        return self.value - self.abs_error

    @property
    def hi(self) -> float:
        return self.value + self.abs_error


class ClosedFormKind(str, Enum):
    SINC = "sinc"
    COS = "cos"
    J3HALF = "j3half"
    SINHC = "sinhc"
    COSH = "cosh"
    TANC = "tanc"
    TANHC = "tanhc"
    LAZAREVIC = "lazarevic"


def _check_tol(tol: float) -> None:
    if not (tol > 0.0) or not math.isfinite(tol):
        raise InvalidTolerance(f"tolerance must be positive and finite (got {tol!r})")


def _gamma(k: int) -> float:
    # bound on the relative error after k floating-point operations
    ku = k * UNIT_ROUNDOFF
    return ku / (1.0 - ku)


# ---------------------------------------------------------------------------
# power series kernels


def _series(
    nu: float, x: float, sign: int, tol: float, skip_first: bool = False, fallback: bool = True
) -> SeriesValue:
    """Sum the normalized series; ``sign=-1`` for J, ``+1`` for I."""
    q = x * x / 4.0
    term = 1.0
    terms = [] if skip_first else [1.0]
    rounding = 0.0
    magnitude = 0.0 if skip_first else 1.0
    partial = 0.0 if skip_first else 1.0
    for n in range(TERM_CAP):
        ratio = q / ((n + 1) * (nu + n + 1))
        term = sign * term * ratio
        # term n+1 carries at most 4(n+1)+1 roundings
        nxt_err = abs(term) * _gamma(4 * (n + 1) + 2)
        # without the leading 1 the target is relative to the (small) sum itself
        scale = tol * (abs(partial) if skip_first and partial else max(1.0, abs(partial)))
        if sign < 0:
            # alternating; monotone decrease from here on once ratio < 1
            if ratio < 1.0 and abs(term) <= 0.25 * scale:
                tail = abs(term) * (1.0 + _gamma(4 * (n + 1) + 2))
                return _finish(nu, x, sign, tol, terms, rounding, tail, magnitude, skip_first, fallback)
        else:
            next_ratio = q / ((n + 2) * (nu + n + 2))
            if next_ratio < RHO_GEO and abs(term) / (1.0 - next_ratio) <= 0.25 * scale:
                tail = abs(term) * (1.0 + _gamma(4 * (n + 1) + 2)) / (1.0 - next_ratio)
                return _finish(nu, x, sign, tol, terms, rounding, tail, magnitude, skip_first, fallback)
        terms.append(term)
        rounding += nxt_err
        magnitude += abs(term)
        partial += term
    raise NonConvergence(f"series for nu={nu}, x={x} did not converge within {TERM_CAP} terms")


def _finish(
    nu: float,
    x: float,
    sign: int,
    tol: float,
    terms: list[float],
    rounding: float,
    tail: float,
    magnitude: float,
    skip_first: bool,
    fallback: bool,
) -> SeriesValue:
    value = math.fsum(terms)
    err = tail + rounding + abs(value) * UNIT_ROUNDOFF
    budget = tol * (abs(value) if skip_first else max(1.0, abs(value)))
    if err <= budget or not fallback:
        return SeriesValue(value, err, len(terms), "power_series")
    # cancellation ate the budget: redo the same sum with more digits
    return _series_mp(nu, x, sign, tol, magnitude, skip_first)


def _series_mp(
    nu: float, x: float, sign: int, tol: float, magnitude: float, skip_first: bool = False
) -> SeriesValue:
    lost = max(0, int(math.log10(max(magnitude, 1.0) / tol))) + 1
    dps = 25 + lost
    with mpmath.workdps(dps):
        q = mpmath.mpf(x) ** 2 / 4
        mnu = mpmath.mpf(nu)
        term = mpmath.mpf(1)
        total = mpmath.mpf(0) if skip_first else mpmath.mpf(1)
        absum = mpmath.mpf(1)
        for n in range(TERM_CAP):
            ratio = q / ((n + 1) * (mnu + n + 1))
            term = sign * term * ratio
            if ratio < RHO_GEO and abs(term) <= mpmath.mpf(tol) * 1e-3:
                bound = abs(term) / (1 - ratio) if sign > 0 else abs(term)
                value = float(total)
                err = float(bound) + float(absum) * 10.0 ** (5 - dps) + abs(value) * UNIT_ROUNDOFF
                return SeriesValue(value, err, n + 1, "power_series")
            total += term
            absum += abs(term)
    raise NonConvergence(f"extended-precision series for nu={nu}, x={x} did not converge")


# ---------------------------------------------------------------------------
# first-zero deflation


@lru_cache(maxsize=256)
def _tight_first_zero(nu: float) -> tuple[float, float]:
    from .zeros import first_zero

    z = first_zero(Order(nu), tol=4.0 * UNIT_ROUNDOFF * 4.0 * math.sqrt((nu + 1.0) * (nu + 2.0)))
    return z.lo, z.hi


@lru_cache(maxsize=256)
def _first_zero_dd(nu: float) -> tuple[float, float]:
    """``j_{nu,1}`` as an unevaluated sum hi + lo of two floats."""
    from .zeros import CertifiedZero, refine_zero

    lo, hi = _tight_first_zero(nu)
    with mpmath.workdps(40):
        j = refine_zero(Order(nu), CertifiedZero(1, lo, hi), 34)
        head = float(j)
        return head, float(j - head)


def _cofactor_series(nu: float, x: float, j: float, tol: float) -> tuple[float, float, float, int]:
    """Sum ``R(x) = -sum_{n>=1} c_n g_n`` with ``c_n = a_n j^(2n)``.

    ``g_n = (1 - w^n)/(1 - w)``, ``w = x^2/j^2``; this is the divided
    difference of the normalized series between x and j, so
    ``(1 - w) * R = J_nu(x) - J_nu(j)`` holds exactly for the node ``j``.
    Returns (value, rounding+tail bound, node-sensitivity, terms).
    """
    big_j = j * j
    w = (x / j) ** 2
    c = 1.0
    g = 0.0
    terms: list[float] = []
    rounding = 0.0
    sens = 0.0
    partial = 0.0
    for n in range(TERM_CAP):
        ratio = big_j / (4.0 * (n + 1) * (nu + n + 1))
        c = -c * ratio
        g = w * g + 1.0
        t = -c * g
        k = n + 1
        g_next = w * g + 1.0
        step = big_j / (4.0 * (k + 1) * (nu + k + 1)) * g_next / g
        if step < 1.0 and abs(t) <= 0.25 * tol * max(1.0, abs(partial)):
            tail = abs(t) * (1.0 + _gamma(6 * k + 4))
            value = math.fsum(terms)
            err = tail + rounding + abs(value) * UNIT_ROUNDOFF
            return value, err, sens / j, len(terms)
        terms.append(t)
        partial += t
        rounding += abs(t) * _gamma(6 * k + 4)
        sens += abs(c) * (2.0 * g + k * (k - 1) * max(1.0, w) ** k)
    raise NonConvergence(f"deflated series for nu={nu}, x={x} did not converge within {TERM_CAP} terms")


def eval_jnorm_cofactor(order: Order, x: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    """Entire cofactor ``R`` in ``J_nu(x) = (1 - x^2/j_{nu,1}^2) R(x)``; ``R > 0`` on ``[0, j_{nu,2})``."""
    _check_tol(tol)
    lo, hi = _tight_first_zero(order.nu)
    j = 0.5 * (lo + hi)
    value, err, sens, used = _cofactor_series(order.nu, abs(x), j, tol)
    err += sens * 0.5 * (hi - lo)
    return SeriesValue(value, err, used, "product_deflation")


def _deflated_jnorm(nu: float, x: float, tol: float) -> SeriesValue:
    # node at the float head jh of j = jh + jl: J(x) = (1 - x^2/jh^2) R(x) + J(jh),
    # and J(jh) = 2 jl/jh R(j) to first order, which the double-double factor supplies
    jh, jl = _first_zero_dd(nu)
    r, err_r, _, used = _cofactor_series(nu, x, jh, tol)
    factor = ((jh - x) + jl) * (jh + x + jl) / (jh * jh)
    value = factor * r
    # R(j) replaced by R(x): |R'| <= 2m t2/(1 - m^2 t2) on [0, m] with t2 >= sum_{n>=2} j_n^-2
    m = max(jh, x)
    t2 = (1.0 / (4.0 * (nu + 1.0)) - 1.0 / (jh * jh)) * (1.0 + 1e-12) + 1e-300
    slope = 2.0 * m * t2 / (1.0 - m * m * t2) if m * m * t2 < 1.0 else math.inf
    swap = 2.0 * abs(jl) / jh * min(1.0, abs(jh - x) * slope)
    # rest of j beyond the double-double; |J'| <= j/(2(nu+1))
    node = jh / (2.0 * (nu + 1.0)) * DD_REL * jh + 2.0 * jl * jl / (jh * jh)
    err = abs(factor) * err_r + swap + node + abs(value) * _gamma(8)
    return SeriesValue(value, err, used, "product_deflation")


# ---------------------------------------------------------------------------
# public evaluators


def eval_jnorm(order: Order, x: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    """Normalized Bessel function ``2^nu Gamma(nu+1) x^-nu J_nu(x)``."""
    _check_tol(tol)
    if not math.isfinite(x):
        raise OutOfDomain(f"x must be finite (got {x!r})")
    ax = abs(x)
    if ax == 0.0:
        return SeriesValue(1.0, 0.0, 1, "power_series")
    nu = order.nu
    if ax <= DEFLATION_THRESHOLD * 2.0 * math.sqrt(nu + 1.0):
        return _series(nu, ax, -1, tol)
    lo, hi = _tight_first_zero(nu)
    if ax <= DEFLATION_THRESHOLD * lo or ax >= DEFLATION_OUTER * hi:
        return _series(nu, ax, -1, tol)
    sv = _deflated_jnorm(nu, ax, tol)
    if sv.abs_error <= tol * max(1.0, abs(sv.value)):
        return sv
    # cancellation in the cofactor outran the budget
    return _series(nu, ax, -1, tol)


def eval_jnorm_minus_one(order: Order, x: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    """``J_nu(x) - 1`` without the cancellation of forming ``J_nu(x)`` first."""
    _check_tol(tol)
    ax = abs(x)
    if ax == 0.0:
        return SeriesValue(0.0, 0.0, 0, "power_series")
    return _series(order.nu, ax, -1, tol, skip_first=True)


def eval_inorm(order: Order, x: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    """Normalized modified Bessel function; ``>= 1`` for every real x."""
    _check_tol(tol)
    if not math.isfinite(x):
        raise OutOfDomain(f"x must be finite (got {x!r})")
    if x == 0.0:
        return SeriesValue(1.0, 0.0, 1, "power_series")
    return _series(order.nu, abs(x), +1, tol)


def eval_inorm_minus_one(order: Order, x: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    _check_tol(tol)
    if x == 0.0:
        return SeriesValue(0.0, 0.0, 0, "power_series")
    return _series(order.nu, abs(x), +1, tol, skip_first=True)


def eval_jnorm_deriv(order: Order, x: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    """``J_nu'(x) = -x/(2(nu+1)) J_{nu+1}(x)``."""
    _check_tol(tol)
    if x == 0.0:
        return SeriesValue(0.0, 0.0, 0, "power_series")
    scale = x / (2.0 * (order.nu + 1.0))
    inner = eval_jnorm(order.shifted(1), x, tol / max(1.0, abs(scale)))
    value = -scale * inner.value
    err = abs(scale) * inner.abs_error + abs(value) * _gamma(3)
    return SeriesValue(value, err, inner.terms_used, inner.method)


def eval_inorm_deriv(order: Order, x: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    """``I_nu'(x) = x/(2(nu+1)) I_{nu+1}(x)``."""
    _check_tol(tol)
    if x == 0.0:
        return SeriesValue(0.0, 0.0, 0, "power_series")
    scale = x / (2.0 * (order.nu + 1.0))
    inner = eval_inorm(order.shifted(1), x, tol / max(1.0, abs(scale)))
    value = scale * inner.value
    err = abs(scale) * inner.abs_error + abs(value) * _gamma(3)
    return SeriesValue(value, err, inner.terms_used, inner.method)


# ---------------------------------------------------------------------------
# Mittag-Leffler ratios
#
# The exact Rayleigh sums sigma^(2) and sigma^(4) are split off where that
# avoids cancellation, so the table mostly feeds remainders weighted by
# x^4 j^-4; what lies beyond the table is bounded through power tails.


def _sigma2(nu: float) -> float:
    return 1.0 / (4.0 * (nu + 1.0))


def _sigma4(nu: float) -> float:
    return 1.0 / (16.0 * (nu + 1.0) ** 2 * (nu + 2.0))


def _enclosures(order: Order, zeros: ZeroTable) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """lo, mid, hi arrays; the first zero is intersected with its tightly certified enclosure."""
    lo, hi = zeros.bounds
    lo = lo.copy()
    hi = hi.copy()
    tlo, thi = _tight_first_zero(order.nu)
    a, b = max(lo[0], tlo), min(hi[0], thi)
    if a <= b:
        lo[0], hi[0] = a, b
    return lo, 0.5 * (lo + hi), hi


def _power_tail(nu: float, lo: np.ndarray, hi: np.ndarray, k: int, last: CertifiedZero) -> tuple[float, float]:
    """``sum_{n>N} j_n^-2k`` for k = 1, 2 with its error bound.

    Two estimates: sigma^(2k) minus the partial sum (limited by the
    resolution of sigma^(2k)) and McMahon's asymptotic tail; the one with
    the smaller error is used.
    """
    from .zeros import mcmahon_power_tail

    sigma = _sigma2(nu) if k == 1 else _sigma4(nu)
    # fsum is correctly rounded, so only the per-term powers contribute
    g = _gamma(2 * k + 2)
    s_lower = math.fsum(hi ** (-2 * k)) * (1.0 - g)
    s_upper = math.fsum(lo ** (-2 * k)) * (1.0 + g)
    t = max(sigma - 0.5 * (s_lower + s_upper), 0.0)
    et = 0.5 * (s_upper - s_lower) + sigma * _gamma(10)
    ta, eta = mcmahon_power_tail(nu, last, k)
    if eta < et:
        return ta, eta
    return t, et


def _check_table(order: Order, zeros: ZeroTable) -> None:
    if abs(zeros.order.nu - order.nu) > 1e-12 * max(1.0, abs(order.nu)):
        raise OutOfDomain(f"zero table is for nu={zeros.order.nu}, not nu={order.nu}")
    if not zeros.zeros:
        raise TailBoundFailure("zero table is empty")


def _accept(value: float, err: float, tol: float, n: int) -> None:
    if not (err <= tol * max(1.0, abs(value))):
        raise TailBoundFailure(f"Mittag-Leffler error bound {err:.3e} exceeds tolerance with N={n}")


def ratio_J(order: Order, x: float, zeros: ZeroTable, tol: float = DEFAULT_TOL) -> SeriesValue:
    """``J_{nu+1}(x)/J_nu(x) = sum_n 2x/(j_{nu,n}^2 - x^2)`` for ``|x| < j_{nu,1}``."""
    _check_tol(tol)
    _check_table(order, zeros)
    ax = abs(x)
    if ax >= zeros.zeros[0].lo:
        raise OutOfDomain(f"|x|={ax} is not below the first zero of J_{order.nu}")
    if ax == 0.0:
        return SeriesValue(0.0, 0.0, 0, "mittag_leffler")
    nu = order.nu
    lo, mid, hi = _enclosures(order, zeros)
    hw = hi - mid
    x2 = ax * ax
    d = (mid - ax) * (mid + ax)
    jh, jl = _first_zero_dd(nu)
    use_dd = lo[0] <= jh + jl <= hi[0]
    if use_dd:
        # keeps j - x accurate right up to the pole
        d[0] = ((jh - ax) + jl) * (jh + ax + jl)
        hw[0] = DD_REL * jh
        lo[0], hi[0] = jh - hw[0], jh + hw[0]
    # 2x/(j^2-x^2) = 2x j^-2 + 2x^3 j^-4 + 2x^5 j^-4/(j^2-x^2)
    c5 = 2.0 * ax * x2 * x2
    r = c5 / (mid**4 * d)
    if use_dd:
        # j^-4 from the double-double zero as well, not the table midpoint
        r[0] = c5 / (jh**4 * d[0]) * (1.0 - 4.0 * jl / jh)
    dlo = (lo - ax) * (lo + ax)
    # derivative in j is r (4/j + 2j/(j^2-x^2)); take the worst end
    sens = c5 / (lo**4 * dlo) * (4.0 / lo + 2.0 * hi / dlo) * hw
    head = [2.0 * ax * _sigma2(nu), 2.0 * ax * x2 * _sigma4(nu)]
    partial = math.fsum(head) + math.fsum(r)
    err = math.fsum(sens) + math.fsum(r) * _gamma(9) + (head[0] + head[1]) * _gamma(8) + abs(partial) * _gamma(2)
    jn_lo = float(lo[-1])
    t4, et4 = _power_tail(nu, lo, hi, 2, zeros.zeros[-1])
    u = x2 / (jn_lo * jn_lo)
    if u >= 1.0:
        raise TailBoundFailure("zero table too short for this abscissa")
    # remaining terms lie in [0, 2x^5 T4/(j_{N+1}^2 (1-u))]
    width = c5 * (t4 + et4) / (jn_lo * jn_lo * (1.0 - u))
    value = partial + 0.5 * width
    err += 0.5 * width
    _accept(value, err, tol, len(mid))
    return SeriesValue(math.copysign(value, x), err, len(mid), "mittag_leffler")


def ratio_I(order: Order, x: float, zeros: ZeroTable, tol: float = DEFAULT_TOL) -> SeriesValue:
    """``I_{nu+1}(x)/I_nu(x) = sum_n 2x/(j_{nu,n}^2 + x^2)``."""
    _check_tol(tol)
    _check_table(order, zeros)
    if not math.isfinite(x):
        raise OutOfDomain("x must be finite")
    ax = abs(x)
    if ax == 0.0:
        return SeriesValue(0.0, 0.0, 0, "mittag_leffler")
    nu = order.nu
    lo, mid, hi = _enclosures(order, zeros)
    x2 = ax * ax
    r = 2.0 * ax / (mid * mid + x2)
    sens = 4.0 * ax * hi / (lo * lo + x2) ** 2 * (hi - mid)
    # sum_{n>N} 2x/(j^2+x^2) = 2x T2 - 2x^3 T4 + [0, 2x^5 T4/j_{N+1}^2]
    t2, et2 = _power_tail(nu, lo, hi, 1, zeros.zeros[-1])
    t4, et4 = _power_tail(nu, lo, hi, 2, zeros.zeros[-1])
    jn_lo = float(lo[-1])
    width = 2.0 * ax * x2 * x2 * (t4 + et4) / (jn_lo * jn_lo)
    value = math.fsum(r) + math.fsum([2.0 * ax * t2, -2.0 * ax * x2 * t4]) + 0.5 * width
    err = math.fsum(sens) + math.fsum(r) * _gamma(5) + 2.0 * ax * et2 + 2.0 * ax * x2 * et4
    err += 0.5 * width + abs(value) * _gamma(3)
    _accept(value, err, tol, len(mid))
    return SeriesValue(math.copysign(value, x), err, len(mid), "mittag_leffler")


def turanian_residual(order: Order, x: float, zeros_next: ZeroTable, tol: float = DEFAULT_TOL) -> float:
    """Residual of ``1 - J_nu J_{nu+2}/J_{nu+1}^2 = sum_n 4 j^2/(x^2 - j^2)^2`` (zeros of ``J_{nu+1}``)."""
    _check_tol(tol)
    nxt = order.shifted(1)
    _check_table(nxt, zeros_next)
    ax = abs(x)
    lo1, _ = _tight_first_zero(order.nu)
    if ax >= lo1:
        raise OutOfDomain(f"|x|={ax} is not below the first zero of J_{order.nu}")
    j0 = eval_jnorm(order, ax, tol).value
    j1 = eval_jnorm(nxt, ax, tol).value
    j2 = eval_jnorm(order.shifted(2), ax, tol).value
    if abs(j1) < 1e-8:
        raise NearPole(f"J_{nxt.nu}({x}) is too close to zero")
    nu = order.nu
    lhs = 1.0 - (nu + 1.0) / (nu + 2.0) * j0 * j2 / (j1 * j1)
    lo, mid, hi = _enclosures(nxt, zeros_next)
    x2 = ax * ax
    # (1-u)^-2 = 1 + 2u + u^2 (3 - 2u)/(1-u)^2 with u = x^2/j^2
    u = x2 / (mid * mid)
    rest = 4.0 * u * u * (3.0 - 2.0 * u) / (mid * mid * (1.0 - u) ** 2)
    t4, et4 = _power_tail(nxt.nu, lo, hi, 2, zeros_next.zeros[-1])
    jn_lo = float(lo[-1])
    un = x2 / (jn_lo * jn_lo)
    width = 12.0 * x2 * x2 * (t4 + et4) / (jn_lo * jn_lo * (1.0 - un) ** 2)
    rhs = math.fsum([4.0 * _sigma2(nxt.nu), 8.0 * x2 * _sigma4(nxt.nu)]) + math.fsum(rest) + 0.5 * width
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# elementary oracles

_J3HALF_TAYLOR = (1.0, -1.0 / 10.0, 1.0 / 280.0, -1.0 / 15120.0, 1.0 / 1330560.0)


def closed_form(kind: ClosedFormKind | str, x: float) -> float:
    """Elementary special cases of the normalized functions at ``nu = +-1/2, 3/2``."""
    kind = ClosedFormKind(kind)
    if kind in (ClosedFormKind.TANC, ClosedFormKind.LAZAREVIC) and abs(x) >= math.pi / 2:
        raise OutOfDomain(f"{kind.value} requires |x| < pi/2")
    if kind is ClosedFormKind.COS:
        return math.cos(x)
    if kind is ClosedFormKind.COSH:
        return math.cosh(x)
    if x == 0.0:
        return 1.0
    if kind is ClosedFormKind.SINC:
        return math.sin(x) / x
    if kind is ClosedFormKind.SINHC:
        return math.sinh(x) / x
    if kind is ClosedFormKind.TANC:
        return math.tan(x) / x
    if kind is ClosedFormKind.TANHC:
        return math.tanh(x) / x
    if kind is ClosedFormKind.LAZAREVIC:
        return math.sin(x) ** 3 / (x**3 * math.cos(x))
    # j3half: 3(sin x/x^3 - cos x/x^2), cancellation-free near the origin
    if abs(x) < 0.05:
        t = x * x
        return math.fsum(c * t**k for k, c in enumerate(_J3HALF_TAYLOR))
    return 3.0 * (math.sin(x) / x**3 - math.cos(x) / x**2)
