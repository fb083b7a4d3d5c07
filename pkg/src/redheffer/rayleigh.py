"""Rayleigh sums ``sigma_nu^(2m) = sum_n j_{nu,n}^-2m`` and the sequences built from them.

Two independent routes are provided: the convolution recurrence that comes
from the power series of ``(x/2) J_{nu+1}(x)/J_nu(x)`` and direct summation
over a certified zero table.  The recurrence runs in binary64, in exact
rationals, or in mpmath at a chosen precision.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from .core_series import DEFAULT_TOL, UNIT_ROUNDOFF, Order, SeriesValue, ratio_J
from .errors import DegenerateDifference, OrderMismatch, TailBoundFailure
from .zeros import CertifiedZero, ZeroTable, mcmahon_power_tail, refine_zero

Number = Union[float, Fraction, mpmath.mpf]

MIN_ZEROS_M1 = 50
DEFAULT_DPS = 60


@dataclass(frozen=True)
class RayleighTable:
    """``sigma[m-1]`` holds ``sigma_nu^(2m)``; ``rel_error[m-1]`` bounds its relative error."""

    order: Order
    m_max: int
    sigma: tuple
    rel_error: tuple
    mode: str

    def __getitem__(self, m: int) -> Number:
        if m < 1:
            raise IndexError("Rayleigh sums start at m = 1")
        return self.sigma[m - 1]


def _mode_of(exact: bool, dps: int | None) -> str:
    if exact:
        return "exact"
    return "mp" if dps else "float"


def sigma_table_recurrence(order: Order, m_max: int, exact: bool = False, dps: int | None = None) -> RayleighTable:
    """``sigma^(2m) = (1/(nu+m)) sum_{k=1}^{m-1} sigma^(2k) sigma^(2m-2k)``, ``sigma^(2) = 1/(4(nu+1))``.

    ``exact=True`` uses the rational value of the stored order; ``dps`` selects
    mpmath arithmetic.  Every term is positive, so relative errors only
    accumulate additively.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    mode = _mode_of(exact, dps)
    if mode == "exact":
        nu: Number = order.fraction
        one: Number = Fraction(1)
        unit = 0.0
    elif mode == "mp":
        ctx_prec = mpmath.mp.dps
        mpmath.mp.dps = dps
        nu = mpmath.mpf(order.nu)
        one = mpmath.mpf(1)
        unit = 10.0 ** (1 - dps)
    else:
        nu = order.nu
        one = 1.0
        unit = UNIT_ROUNDOFF
    try:
        sig = [one / (4 * (nu + 1))]
        err = [3 * unit]
        for m in range(2, m_max + 1):
            acc = 0 * one
            worst = 0.0
            for k in range(1, m):
                acc += sig[k - 1] * sig[m - k - 1]
                worst = max(worst, err[k - 1] + err[m - k - 1])
            sig.append(acc / (nu + m))
            err.append(worst + (m + 3) * unit)
    finally:
        if mode == "mp":
            mpmath.mp.dps = ctx_prec
    return RayleighTable(order, m_max, tuple(sig), tuple(err), mode)


def sigma_by_zero_sum(order: Order, m: int, zeros: ZeroTable) -> SeriesValue:
    """Partial sum over the table plus McMahon's asymptotic tail."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if abs(zeros.order.nu - order.nu) > 1e-12 * max(1.0, abs(order.nu)):
        raise OrderMismatch(f"zero table is for nu={zeros.order.nu}, not nu={order.nu}")
    n = len(zeros)
    if m == 1 and n < MIN_ZEROS_M1:
        raise TailBoundFailure(f"the m=1 tail needs at least {MIN_ZEROS_M1} zeros (got {n})")
    lo, hi = zeros.bounds
    mid = 0.5 * (lo + hi)
    s = 2 * m
    partial = math.fsum(mid ** (-s))
    # enclosure sensitivity plus per-term rounding of the powers
    err = math.fsum(s * (hi - mid) / lo * lo ** (-s)) + partial * (s + 2) * UNIT_ROUNDOFF
    tail, tail_err = mcmahon_power_tail(order.nu, zeros.zeros[-1], m)
    if not math.isfinite(tail_err):
        raise TailBoundFailure(f"zero {n} of J_{order.nu} is outside the asymptotic regime")
    value = partial + tail
    err += tail_err + abs(value) * UNIT_ROUNDOFF
    return SeriesValue(value, err, n, "mittag_leffler")


# ---------------------------------------------------------------------------
# scaled sequences


@dataclass(frozen=True)
class SequenceTable:
    """``alpha_m = j^2m sigma_nu^(2m)``, ``beta_m = j^2m sigma_{nu+1}^(2m)``, ``omega_m = alpha_m - beta_m``.

    Values are mpmath numbers at ``dps`` digits because ``alpha_m - 1`` and
    the increments of ``omega`` fall far below binary64 resolution.
    """

    order: Order
    m_max: int
    dps: int
    j1: mpmath.mpf
    alpha: tuple
    beta: tuple
    omega: tuple
    alpha_gt_one: bool
    alpha_decreasing: bool
    beta_decreasing: bool
    omega_increasing: bool

    def worst(self, name: str) -> float:
        """Largest step against the expected direction (negative means strictly monotone)."""
        seq = getattr(self, name)
        sign = 1 if name == "omega" else -1
        steps = [-sign * (b - a) for a, b in zip(seq, seq[1:])]
        return float(max(steps)) if steps else -math.inf

    @property
    def alpha_minus_one(self) -> float:
        return float(self.alpha[-1] - 1)


def _strict(seq, increasing: bool) -> bool:
    return all((b > a) if increasing else (b < a) for a, b in zip(seq, seq[1:]))


def refined_first_zero(order: Order, j1: CertifiedZero, dps: int) -> mpmath.mpf:
    return refine_zero(order, j1, dps)


def scaled_sequences(order: Order, m_max: int, j1: CertifiedZero, dps: int = DEFAULT_DPS) -> SequenceTable:
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    if j1.n != 1:
        raise ValueError("j1 must be the first zero")
    sig = sigma_table_recurrence(order, m_max, dps=dps)
    sig1 = sigma_table_recurrence(order.shifted(1), m_max, dps=dps)
    with mpmath.workdps(dps):
        j = refined_first_zero(order, j1, dps)
        jsq = j * j
        alpha, beta = [], []
        power = mpmath.mpf(1)
        for m in range(1, m_max + 1):
            power *= jsq
            alpha.append(power * sig[m])
            beta.append(power * sig1[m])
        omega = [a - b for a, b in zip(alpha, beta)]
    return SequenceTable(
        order,
        m_max,
        dps,
        j,
        tuple(alpha),
        tuple(beta),
        tuple(omega),
        all(a > 1 for a in alpha),
        _strict(alpha, False),
        _strict(beta, False),
        _strict(omega, True),
    )


# ---------------------------------------------------------------------------
# the conjectured ratio inequality


@dataclass(frozen=True)
class ConjectureRecord:
    nu: float
    m: int
    ratio: float
    jsq: float
    margin: float
    status: str = "ok"

    def as_row(self) -> list[str]:
        return [repr(self.nu), str(self.m), repr(self.ratio), repr(self.jsq), repr(self.margin), self.status]


CSV_HEADER = ("nu", "m", "ratio", "jsq", "margin", "status")


def _precision(table: RayleighTable) -> float:
    return table.rel_error[-1] if table.mode != "exact" else 0.0


def conjecture_ratio(
    order: Order, m: int, sig_nu: RayleighTable, sig_nu1: RayleighTable, j1: CertifiedZero | mpmath.mpf
) -> ConjectureRecord:
    """``(sigma_nu^(2m) - sigma_{nu+1}^(2m)) / (sigma_nu^(2m+2) - sigma_{nu+1}^(2m+2))`` against ``j_{nu,1}^2``.

    The margin is computed before rounding to binary64, so with exact or
    extended-precision tables it is meaningful even when it is far below
    the size of ``jsq``.
    """
    if sig_nu.m_max < m + 1 or sig_nu1.m_max < m + 1:
        raise ValueError(f"Rayleigh tables must cover m={m + 1}")
    if abs(sig_nu1.order.nu - (order.nu + 1.0)) > 1e-12 * max(1.0, abs(order.nu)):
        raise OrderMismatch("second Rayleigh table must be for nu+1")
    eps = max(_precision(sig_nu), _precision(sig_nu1))
    hi_dps = 30 if sig_nu.mode != "mp" else max(30, int(-math.log10(max(eps, 1e-300))) + 10)
    with mpmath.workdps(hi_dps):
        if isinstance(j1, CertifiedZero):
            j = refined_first_zero(order, j1, hi_dps) if sig_nu.mode != "float" else mpmath.mpf(j1.mid)
        else:
            j = mpmath.mpf(j1)
        pieces = []
        for k in (m, m + 1):
            a, b = sig_nu[k], sig_nu1[k]
            diff = a - b
            if abs(diff) <= 1e3 * eps * max(abs(a), abs(b)):
                raise DegenerateDifference(f"sigma difference at m={k} is below working precision")
            pieces.append(diff)
        ratio = pieces[0] / pieces[1]
        if isinstance(ratio, Fraction):
            ratio = mpmath.mpf(ratio.numerator) / ratio.denominator
        jsq = j * j
        margin = jsq - ratio
    return ConjectureRecord(order.nu, m, float(ratio), float(jsq), float(margin), "ok")


def conjecture_sweep(nus, m_max: int, dps: int = DEFAULT_DPS) -> list[ConjectureRecord]:
    """Records for every (nu, m), m = 1..m_max, in (nu, m) order; precision failures become ``inconclusive``."""
    from .zeros import first_zero

    out = []
    for nu in nus:
        order = Order(nu)
        sig = sigma_table_recurrence(order, m_max + 1, dps=dps)
        sig1 = sigma_table_recurrence(order.shifted(1), m_max + 1, dps=dps)
        with mpmath.workdps(dps):
            j = refined_first_zero(order, first_zero(order), dps)
        for m in range(1, m_max + 1):
            try:
                out.append(conjecture_ratio(order, m, sig, sig1, j))
            except DegenerateDifference:
                out.append(ConjectureRecord(order.nu, m, math.nan, float(j * j), math.nan, "inconclusive"))
    return out


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.as_row())
    return buf.getvalue()


# ---------------------------------------------------------------------------
# omega_nu(x)


def omega_x(order: Order, x: float, zeros_nu: ZeroTable, zeros_nu1: ZeroTable, tol: float = DEFAULT_TOL) -> SeriesValue:
    """``sum_m omega_m t^m / sum_m t^m`` with ``t = x^2/j^2``, in its Mittag-Leffler difference form.

    Equal to ``(j^2 - x^2)/(2x) (J_{nu+1}/J_nu - J_{nu+2}/J_{nu+1})``.
    """
    if not 0.0 < x:
        raise ValueError("x must be positive")
    j = zeros_nu.zeros[0].mid
    r0 = ratio_J(order, x, zeros_nu, tol)
    r1 = ratio_J(order.shifted(1), x, zeros_nu1, tol)
    scale = (j - x) * (j + x) / (2.0 * x)
    diff = r0.value - r1.value
    value = scale * diff
    # d/dj of the prefactor, with the first enclosure half-width
    err = abs(scale) * (r0.abs_error + r1.abs_error) + abs(j / x * diff) * zeros_nu.zeros[0].halfwidth
    err += abs(value) * 4 * UNIT_ROUNDOFF
    return SeriesValue(value, err, r0.terms_used, "mittag_leffler")


def omega_x_series(seq: SequenceTable, x: float) -> float:
    """``(1 - t) sum_m omega_m t^(m-1)`` truncated at ``seq.m_max``; only for cross-checks at small t."""
    with mpmath.workdps(seq.dps):
        t = mpmath.mpf(x) ** 2 / seq.j1**2
        total = mpmath.mpf(0)
        power = mpmath.mpf(1)
        for w in seq.omega:
            total += w * power
            power *= t
        return float((1 - t) * total)
