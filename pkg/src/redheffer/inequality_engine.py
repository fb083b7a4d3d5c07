"""Grid checks of sharp power bounds (after Redheffer's inequality) for the normalized Bessel functions.

Every inequality is of the form ``base^lower_exp <= middle <= base^upper_exp``
and is checked in log space, so margins read

    lower margin = log(middle) - lower_exp * log(base)
    upper margin = upper_exp * log(base) - log(middle)

Grid checks are sampling: each evaluation carries a rigorous error bound, the
grid itself does not certify the open interval.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable

from .core_series import Order, eval_inorm, eval_inorm_minus_one, eval_jnorm, eval_jnorm_cofactor, eval_jnorm_minus_one
from .errors import InequalityViolation, MissingParameter, NearPole, OutOfDomain, RedhefferError
from .rayleigh import sigma_table_recurrence
from .zeros import CertifiedZero, tight_first_zero

DEFAULT_NUS = (-0.9, -0.75, -0.5, -0.25, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0)
DEFAULT_RS = (0.5, 1.0, math.pi / 2, math.pi, 10.0)
DEFAULT_G = 99
DEFAULT_TOL_MARGIN = 1e-12
CHAIN_K_MAX = 6
PROBE_OFFSET = 1e-4
# x below SMALL_X * 2 sqrt(mu+1) (a lower bound for j_{mu,1}) switches logs to the Rayleigh series
SMALL_X = 0.05
SERIES_TERMS = 12
# evaluations feed margins compared against ~1e-12, so ask for more than the library default
EVAL_TOL = 1e-14
# Baricz-Wu lower bound is stated for nu >= -7/8
BW1_MIN_NU = -0.875


class TheoremId(str, Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T5 = "T5"
    T6 = "T6"
    CONJ = "CONJ"
    TAN = "TAN"
    CHAIN = "CHAIN"
    ZHU = "ZHU"
    BW1 = "BW1"


class QuotientKind(str, Enum):
    phi = "phi"
    Phi = "Phi"
    Omega = "Omega"
    Psi = "Psi"
    Gamma = "Gamma"
    Theta = "Theta"
    psi = "psi"
    omega_x = "omega_x"


J_THEOREMS = frozenset({TheoremId.T1, TheoremId.T2, TheoremId.T3, TheoremId.CONJ, TheoremId.CHAIN, TheoremId.BW1})
R_THEOREMS = frozenset({TheoremId.T5, TheoremId.T6, TheoremId.ZHU})
R_KINDS = frozenset({QuotientKind.Psi, QuotientKind.Gamma, QuotientKind.Theta})
DECREASING = frozenset({QuotientKind.phi, QuotientKind.Phi, QuotientKind.Gamma, QuotientKind.Theta, QuotientKind.Psi})

# (residual_0 tolerance, residual_end tolerance); None means recorded only
SHARPNESS_TOL = {
    TheoremId.T1: (1e-3, 1e-2),
    TheoremId.T2: (1e-3, None),
    TheoremId.T3: (None, 1e-2),
    TheoremId.T5: (1e-3, None),
    TheoremId.T6: (1e-3, None),
    TheoremId.TAN: (1e-3, 1e-2),
}


@dataclass(frozen=True)
class SharpConstants:
    theorem: TheoremId
    nu: float
    r: float | None
    lower_exp: float | None
    upper_exp: float | None


@dataclass(frozen=True)
class GridSpec:
    nu_values: tuple[float, ...] = DEFAULT_NUS
    interior_points: int = DEFAULT_G
    r_values: tuple[float, ...] = DEFAULT_RS
    tol_margin: float = DEFAULT_TOL_MARGIN
    chain_k_max: int = CHAIN_K_MAX

    def __post_init__(self) -> None:
        object.__setattr__(self, "nu_values", tuple(float(v) for v in self.nu_values))
        object.__setattr__(self, "r_values", tuple(float(v) for v in self.r_values))
        for nu in self.nu_values:
            Order(nu)
        if self.interior_points < 1:
            raise ValueError("interior_points must be positive")
        if any(not (r > 0.0 and math.isfinite(r)) for r in self.r_values):
            raise OutOfDomain("r values must be positive and finite")
        if not self.tol_margin >= 0.0:
            raise ValueError("tol_margin must be non-negative")
        if self.chain_k_max < 2:
            raise ValueError("chain_k_max must be at least 2")

    def abscissae(self, upper: float) -> list[float]:
        g = self.interior_points
        return [upper * i / (g + 1) for i in range(1, g + 1)]


@dataclass
class InequalityReport:
    theorem: TheoremId
    nu: float
    r: float | None
    min_lower_margin: float | None = None
    min_upper_margin: float | None = None
    argmin_lower: float | None = None
    argmin_upper: float | None = None
    sharpness_residual_0: float | None = None
    sharpness_residual_end: float | None = None
    raw_residual_0: float | None = None
    raw_residual_end: float | None = None
    comparison_margin: float | None = None
    passed: bool = False
    status: str = "failed"
    reason: str = ""
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["theorem"] = self.theorem.value
        return d


# ---------------------------------------------------------------------------
# logs of the normalized functions


@lru_cache(maxsize=None)
def _sigmas(mu: float) -> tuple[float, ...]:
    table = sigma_table_recurrence(Order(mu), SERIES_TERMS)
    return tuple(float(table[m]) for m in range(1, SERIES_TERMS + 1))


def _small(mu: float, x: float) -> bool:
    return x <= SMALL_X * 2.0 * math.sqrt(mu + 1.0)


def _log_series(coeffs, x: float, sign: int) -> float:
    # log J = -sum sigma_m x^2m / m, log I = -sum (-1)^m sigma_m x^2m / m
    q = x * x
    return -math.fsum(c * (sign * q) ** m / m for m, c in enumerate(coeffs, 1) if c)


def log_jnorm(mu: float, x: float) -> float:
    if _small(mu, x):
        return _log_series(_sigmas(mu), x, 1)
    order = Order(mu)
    v = eval_jnorm(order, x, EVAL_TOL).value
    if v <= 0.0:
        raise OutOfDomain(f"J_{mu}({x}) is not positive")
    if v > 0.5:
        return math.log1p(eval_jnorm_minus_one(order, x, EVAL_TOL).value)
    return math.log(v)


def log_inorm(mu: float, x: float) -> float:
    if _small(mu, x):
        return _log_series(_sigmas(mu), x, -1)
    return math.log1p(eval_inorm_minus_one(Order(mu), x, EVAL_TOL).value)


def _log1m_sq(x: float, u: float) -> float:
    """``log(1 - (x/u)^2)`` without cancellation at either end."""
    t = (x / u) ** 2
    if t < 0.5:
        return math.log1p(-t)
    return math.log((u - x) * (u + x)) - 2.0 * math.log(u)


def _log_plus_minus(x: float, u: float) -> float:
    """``log((u^2+x^2)/(u^2-x^2))``."""
    t = (x / u) ** 2
    return math.log1p(t) - _log1m_sq(x, u)


# ---------------------------------------------------------------------------
# constants


def _j_value(order: Order, j1: CertifiedZero | None) -> float:
    if j1 is None:
        raise MissingParameter("j1 is required for this theorem")
    return j1.mid


def sharp_constants(
    theorem: TheoremId | str, order: Order, r: float | None = None, j1: CertifiedZero | None = None
) -> SharpConstants:
    theorem = TheoremId(theorem)
    nu = order.nu
    if theorem is TheoremId.TAN:
        return SharpConstants(theorem, -0.5, math.pi / 2, math.pi**2 / 12.0, 1.0)
    if theorem in R_THEOREMS:
        if r is None:
            raise MissingParameter(f"{theorem.value} needs the radius r")
        if not r > 0.0:
            raise OutOfDomain("r must be positive")
        r2 = r * r
        if theorem is TheoremId.T5:
            return SharpConstants(theorem, nu, r, 0.0, -r2 / (4.0 * (nu + 1.0)))
        if theorem is TheoremId.T6:
            return SharpConstants(theorem, nu, r, r2 / (4.0 * (nu + 1.0) * (nu + 2.0)), 0.0)
        return SharpConstants(theorem, nu, r, 0.0, r2 / (8.0 * (nu + 1.0)))
    j2 = _j_value(order, j1) ** 2
    if theorem is TheoremId.T1:
        return SharpConstants(theorem, nu, None, j2 / (4.0 * (nu + 1.0)), 1.0)
    if theorem is TheoremId.T2:
        return SharpConstants(theorem, nu, None, j2 / (4.0 * (nu + 2.0)), 0.0)
    if theorem is TheoremId.T3:
        return SharpConstants(theorem, nu, None, 0.0, 1.0)
    if theorem is TheoremId.CONJ:
        return SharpConstants(theorem, nu, None, j2 / (4.0 * (nu + 1.0) * (nu + 2.0)), 1.0)
    if theorem is TheoremId.BW1:
        return SharpConstants(theorem, nu, None, j2 / (8.0 * (nu + 1.0) * (nu + 2.0)), None)
    return SharpConstants(theorem, nu, None, None, 1.0)  # CHAIN: xi = 1


# ---------------------------------------------------------------------------
# middles and bases in log form


def _log_terms(theorem: TheoremId, nu: float, x: float, u: float) -> tuple[float, float]:
    """``(log middle, log base)`` at ``x``; ``u`` is ``j_{nu,1}`` or ``r``."""
    if theorem is TheoremId.T1:
        return log_jnorm(nu, x), _log1m_sq(x, u)
    if theorem is TheoremId.T2:
        return log_jnorm(nu + 1.0, x), _log1m_sq(x, u)
    if theorem is TheoremId.T3:
        mid = (nu + 2.0) / (nu + 1.0) * log_jnorm(nu + 1.0, x) - log_jnorm(nu, x)
        return mid, -_log1m_sq(x, u)
    if theorem in (TheoremId.CONJ, TheoremId.TAN):
        return log_jnorm(nu + 1.0, x) - log_jnorm(nu, x), -_log1m_sq(x, u)
    if theorem is TheoremId.BW1:
        return log_jnorm(nu + 1.0, x) - log_jnorm(nu, x), _log_plus_minus(x, u)
    if theorem is TheoremId.T5:
        return log_inorm(nu, x), _log1m_sq(x, u)
    if theorem is TheoremId.T6:
        return log_inorm(nu + 1.0, x) - log_inorm(nu, x), _log1m_sq(x, u)
    if theorem is TheoremId.ZHU:
        return log_inorm(nu, x), _log_plus_minus(x, u)
    raise ValueError(f"{theorem.value} has no single middle/base template")


def inequality_bounds(
    theorem: TheoremId | str, order: Order, x: float, r: float | None = None
) -> tuple[float | None, float, float | None]:
    """``(lower, middle, upper)`` in the linear domain at one point."""
    theorem = TheoremId(theorem)
    if theorem is TheoremId.TAN:
        order = Order(-0.5)
    c = sharp_constants(theorem, order, r, None if theorem in R_THEOREMS else tight_first_zero(order))
    u = _upper_end(theorem, order, r)
    _check_interior(x, u)
    log_mid, log_base = _log_terms(theorem, order.nu, x, u)
    lower = None if c.lower_exp is None else math.exp(c.lower_exp * log_base)
    upper = None if c.upper_exp is None else math.exp(c.upper_exp * log_base)
    return lower, math.exp(log_mid), upper


def _upper_end(theorem: TheoremId, order: Order, r: float | None) -> float:
    if theorem in R_THEOREMS:
        if r is None:
            raise MissingParameter(f"{theorem.value} needs the radius r")
        return r
    return tight_first_zero(order).mid


def _check_interior(x: float, u: float) -> None:
    if not 0.0 < x < u:
        raise OutOfDomain(f"x={x!r} must lie in (0, {u!r})")


# ---------------------------------------------------------------------------
# quotients


def _jq(nu: float, x: float, j: float) -> float:
    """``(j^2 - x^2) / J_nu(x)``, through the deflation cofactor near the zero."""
    if x >= 0.5 * j:
        return j * j / eval_jnorm_cofactor(Order(nu), x, EVAL_TOL).value
    return (j - x) * (j + x) / eval_jnorm(Order(nu), x, EVAL_TOL).value


def _jratio(mu: float, x: float) -> float:
    """``J_{mu+1}(x) / J_mu(x)`` away from the zeros of ``J_mu``."""
    den = eval_jnorm(Order(mu), x, EVAL_TOL).value
    if den == 0.0:
        raise NearPole(f"J_{mu} vanishes at x={x}")
    return eval_jnorm(Order(mu + 1.0), x, EVAL_TOL).value / den


def _iratio(mu: float, x: float) -> float:
    return eval_inorm(Order(mu + 1.0), x, EVAL_TOL).value / eval_inorm(Order(mu), x, EVAL_TOL).value


def _omega_x(nu: float, x: float, j: float) -> float:
    """``(j^2-x^2)/(2x) (J_{nu+1}/J_nu - J_{nu+2}/J_{nu+1})`` for the unnormalized J."""
    first = _jq(nu, x, j) * eval_jnorm(Order(nu + 1.0), x, EVAL_TOL).value / (4.0 * (nu + 1.0))
    second = (j - x) * (j + x) * _jratio(nu + 1.0, x) / (4.0 * (nu + 2.0))
    return first - second


def quotient_eval(kind: QuotientKind | str, order: Order, x: float, r: float | None = None) -> float:
    """The log-quotient ``kind`` at ``x``; the J-kinds use ``j_{nu,1}``, the I-kinds need ``r``."""
    kind = QuotientKind(kind)
    nu = order.nu
    if kind in R_KINDS:
        if r is None:
            raise MissingParameter(f"{kind.value} needs the radius r")
        u = r
    else:
        u = tight_first_zero(order).mid
    _check_interior(x, u)
    lb = _log1m_sq(x, u)
    if kind is QuotientKind.phi:
        return log_jnorm(nu, x) / lb
    if kind is QuotientKind.Phi:
        return log_jnorm(nu + 1.0, x) / lb
    if kind is QuotientKind.Omega:
        if _small(nu, x):
            # the x^2 coefficients cancel exactly; drop that term before summing
            a, b = _sigmas(nu), _sigmas(nu + 1.0)
            k = (nu + 2.0) / (nu + 1.0)
            coeffs = [0.0] + [bi * k - ai for ai, bi in zip(a[1:], b[1:])]
            return _log_series(coeffs, x, 1) / -lb
        mid = (nu + 2.0) / (nu + 1.0) * log_jnorm(nu + 1.0, x) - log_jnorm(nu, x)
        return mid / -lb
    if kind is QuotientKind.psi:
        return (log_jnorm(nu + 1.0, x) - log_jnorm(nu, x)) / -lb
    if kind is QuotientKind.omega_x:
        return _omega_x(nu, x, u)
    if kind is QuotientKind.Gamma:
        return log_inorm(nu, x) / -lb
    if kind is QuotientKind.Psi:
        return log_inorm(nu, x) + r * r / (4.0 * (nu + 1.0)) * lb
    return (log_inorm(nu + 1.0, x) - log_inorm(nu, x)) / lb  # Theta


# ---------------------------------------------------------------------------
# sharpness
#
# Endpoint limits are probed through the derivative ratio f'/g' of each
# log-quotient f/g (the form used with l'Hospital's rule).  Near a zero of the
# base the raw quotient only converges like 1/|log(offset)|, while f'/g'
# converges linearly in the offset; raw residuals are kept as diagnostics.


def _derivative_ratio(theorem: TheoremId, nu: float, x: float, u: float) -> float:
    if theorem is TheoremId.T1:
        return _jq(nu, x, u) * eval_jnorm(Order(nu + 1.0), x, EVAL_TOL).value / (4.0 * (nu + 1.0))
    if theorem is TheoremId.T2:
        return (u - x) * (u + x) * _jratio(nu + 1.0, x) / (4.0 * (nu + 2.0))
    if theorem is TheoremId.T3:
        first = _jq(nu, x, u) * eval_jnorm(Order(nu + 1.0), x, EVAL_TOL).value
        return (first - (u - x) * (u + x) * _jratio(nu + 1.0, x)) / (4.0 * (nu + 1.0))
    if theorem in (TheoremId.CONJ, TheoremId.TAN):
        return _omega_x(nu, x, u)
    if theorem is TheoremId.BW1:
        return _omega_x(nu, x, u) * (u * u + x * x) / (2.0 * u * u)
    if theorem is TheoremId.CHAIN:
        # k = 2: d log J / d log(1 - x^4/j^4)
        cof = _jq(nu, x, u) * eval_jnorm(Order(nu + 1.0), x, EVAL_TOL).value
        return (u * u + x * x) * cof / (8.0 * (nu + 1.0) * x * x)
    if theorem is TheoremId.T5:
        return (u - x) * (u + x) * _iratio(nu, x) / (4.0 * (nu + 1.0))
    if theorem is TheoremId.T6:
        diff = _iratio(nu + 1.0, x) / (nu + 2.0) - _iratio(nu, x) / (nu + 1.0)
        return (x - u) * (x + u) * diff / 4.0
    # ZHU
    return (u * u - x * x) * (u * u + x * x) * _iratio(nu, x) / (8.0 * (nu + 1.0) * u * u)


def _raw_quotient(theorem: TheoremId, nu: float, x: float, u: float) -> float:
    if theorem is TheoremId.CHAIN:
        return log_jnorm(nu, x) / math.log1p(-((x / u) ** 4))
    log_mid, log_base = _log_terms(theorem, nu, x, u)
    if theorem is TheoremId.T5:
        return log_mid / -log_base  # Gamma, positive orientation
    return log_mid / log_base


def _limits(theorem: TheoremId, c: SharpConstants) -> tuple[float | None, float | None]:
    if theorem is TheoremId.T1:
        return c.lower_exp, 1.0
    if theorem is TheoremId.T2:
        return c.lower_exp, 0.0
    if theorem is TheoremId.T3:
        return 0.0, 1.0
    if theorem in (TheoremId.CONJ, TheoremId.TAN, TheoremId.BW1):
        return c.lower_exp, 1.0
    if theorem is TheoremId.CHAIN:
        return None, 1.0
    if theorem is TheoremId.T5:
        return -c.upper_exp, 0.0
    if theorem is TheoremId.T6:
        return c.lower_exp, 0.0
    return c.upper_exp, 0.0  # ZHU


def _probe(theorem: TheoremId, order: Order, u: float, c: SharpConstants, f: Callable) -> tuple:
    lim0, lim_end = _limits(theorem, c)
    x0 = PROBE_OFFSET * u
    x1 = (1.0 - PROBE_OFFSET) * u
    res0 = None if lim0 is None else abs(f(theorem, order.nu, x0, u) - lim0)
    res1 = None if lim_end is None else abs(f(theorem, order.nu, x1, u) - lim_end)
    return res0, res1


def sharpness_probe(theorem: TheoremId | str, order: Order, r: float | None = None) -> tuple[float | None, float | None]:
    """Distances of the limit forms from the sharp constants at relative offset 1e-4 from each end."""
    theorem = TheoremId(theorem)
    if theorem is TheoremId.TAN:
        order = Order(-0.5)
    u = _upper_end(theorem, order, r)
    c = sharp_constants(theorem, order, r, None if theorem in R_THEOREMS else tight_first_zero(order))
    return _probe(theorem, order, u, c, _derivative_ratio)


def raw_sharpness_probe(theorem: TheoremId | str, order: Order, r: float | None = None) -> tuple[float | None, float | None]:
    """Same probes on the log-quotients themselves."""
    theorem = TheoremId(theorem)
    if theorem is TheoremId.TAN:
        order = Order(-0.5)
    u = _upper_end(theorem, order, r)
    c = sharp_constants(theorem, order, r, None if theorem in R_THEOREMS else tight_first_zero(order))
    return _probe(theorem, order, u, c, _raw_quotient)


# ---------------------------------------------------------------------------
# chain and comparisons


def check_power_chain(order: Order, x: float, k_max: int, j1: CertifiedZero) -> list[float]:
    """``log(1 - (x/j)^(2k))`` for ``k = 1..k_max``; each is checked above the previous and above ``log J_nu(x)``.

    Logs keep the chain resolvable when ``1 - t^k`` rounds to 1.
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    if not 0.0 < abs(x) < j1.lo:
        raise OutOfDomain(f"x={x!r} must lie in (0, {j1.lo!r})")
    x = abs(x)
    t = (x / j1.mid) ** 2
    chain = [_log1m_sq(x, j1.mid)] + [math.log1p(-(t**k)) for k in range(2, k_max + 1)]
    if not log_jnorm(order.nu, x) < chain[0]:
        raise InequalityViolation(f"J_{order.nu}({x}) is not below the first chain term")
    for k in range(1, k_max):
        if not chain[k] > chain[k - 1]:
            raise InequalityViolation(f"chain not increasing at k={k + 1} (x={x})")
    return chain


def bw1_margin(order: Order, x: float, j1: CertifiedZero) -> float:
    """How far the conjectured lower bound beats the Baricz-Wu one: ``-theta log(1 - (x/j)^4)``."""
    if not 0.0 < abs(x) < j1.lo:
        raise OutOfDomain(f"x={x!r} must lie in (0, {j1.lo!r})")
    j = j1.mid
    theta = j * j / (4.0 * (order.nu + 1.0) * (order.nu + 2.0))
    return -theta * math.log1p(-((x / j) ** 4))


def zhu_t5_gap(order: Order, x: float, r: float) -> float:
    """``log`` of the T5 upper bound minus ``log`` of the Zhu upper bound; ``-r^2/(8(nu+1)) log(1 - (x/r)^4)``."""
    if not 0.0 < abs(x) < r:
        raise OutOfDomain(f"x={x!r} must lie in (0, {r!r})")
    return -r * r / (8.0 * (order.nu + 1.0)) * math.log1p(-((x / r) ** 4))


# ---------------------------------------------------------------------------
# grid checks


def _grid_margins(theorem: TheoremId, order: Order, c: SharpConstants, u: float, xs: list[float], rep: InequalityReport):
    lows, ups = [], []
    for x in xs:
        log_mid, log_base = _log_terms(theorem, order.nu, x, u)
        if c.lower_exp is not None:
            lows.append((log_mid - c.lower_exp * log_base, x))
        if c.upper_exp is not None:
            ups.append((c.upper_exp * log_base - log_mid, x))
    if lows:
        rep.min_lower_margin, rep.argmin_lower = min(lows)
    if ups:
        rep.min_upper_margin, rep.argmin_upper = min(ups)


def _chain_margins(order: Order, j1: CertifiedZero, xs: list[float], k_max: int, rep: InequalityReport) -> None:
    # lower: log of the k=1 term minus log J; upper: smallest step along the chain
    lows, ups = [], []
    for x in xs:
        t = (x / j1.mid) ** 2
        chain = [_log1m_sq(x, j1.mid)] + [math.log1p(-(t**k)) for k in range(2, k_max + 1)]
        lows.append((chain[0] - log_jnorm(order.nu, x), x))
        ups.append((min(b - a for a, b in zip(chain, chain[1:])), x))
    rep.min_lower_margin, rep.argmin_lower = min(lows)
    rep.min_upper_margin, rep.argmin_upper = min(ups)


def _single_report(theorem: TheoremId, order: Order, r: float | None, spec: GridSpec) -> InequalityReport:
    rep = InequalityReport(theorem, order.nu, r)
    tol = spec.tol_margin
    try:
        j1 = None if theorem in R_THEOREMS else tight_first_zero(order)
        c = sharp_constants(theorem, order, r, j1)
        u = r if theorem in R_THEOREMS else j1.mid
        xs = spec.abscissae(u)
        if theorem is TheoremId.CHAIN:
            _chain_margins(order, j1, xs, spec.chain_k_max, rep)
        else:
            _grid_margins(theorem, order, c, u, xs, rep)
        if theorem in (TheoremId.CONJ, TheoremId.BW1):
            rep.comparison_margin = min(bw1_margin(order, x, j1) for x in xs)
        elif theorem is TheoremId.ZHU:
            rep.comparison_margin = min(zhu_t5_gap(order, x, r) for x in xs)
        rep.sharpness_residual_0, rep.sharpness_residual_end = _probe(theorem, order, u, c, _derivative_ratio)
        rep.raw_residual_0, rep.raw_residual_end = _probe(theorem, order, u, c, _raw_quotient)
    except RedhefferError as exc:
        rep.passed = False
        rep.status = "failed"
        rep.reason = f"{type(exc).__name__}: {exc}"
        return rep
    _judge(rep, tol)
    return rep


def _ok(value: float | None, tol: float) -> bool:
    return value is None or value >= -tol


def _judge(rep: InequalityReport, tol: float) -> None:
    th = rep.theorem
    failures = []
    if th is TheoremId.CONJ:
        # only the proven side (exponent 1) and the Baricz-Wu dominance are asserted
        if not _ok(rep.min_upper_margin, tol):
            failures.append("upper margin below tolerance")
        if not rep.comparison_margin > 0.0:
            failures.append("bw1 dominance margin not positive")
        if rep.min_lower_margin is not None and rep.min_lower_margin < -tol:
            rep.notes.append("exploratory anomaly: conjectured lower side violated on the grid")
    else:
        if th is TheoremId.BW1 and rep.nu < BW1_MIN_NU:
            rep.notes.append("bw1 is stated for nu >= -7/8; lower margin recorded only")
        elif not _ok(rep.min_lower_margin, tol):
            failures.append("lower margin below tolerance")
        if not _ok(rep.min_upper_margin, tol):
            failures.append("upper margin below tolerance")
        if th in (TheoremId.BW1, TheoremId.ZHU) and not rep.comparison_margin > 0.0:
            failures.append("comparison margin not positive")
    tol0, tol_end = SHARPNESS_TOL.get(th, (None, None))
    if tol0 is not None and not rep.sharpness_residual_0 <= tol0:
        failures.append("sharpness residual at 0 too large")
    if tol_end is not None and not rep.sharpness_residual_end <= tol_end:
        failures.append("sharpness residual at the endpoint too large")
    rep.passed = not failures
    rep.reason = "; ".join(failures)
    if not rep.passed:
        rep.status = "failed"
    elif th is TheoremId.CONJ or rep.notes:
        rep.status = "exploratory"
    else:
        rep.status = "passed"


def check_inequality(theorem: TheoremId | str, spec: GridSpec | None = None) -> list[InequalityReport]:
    """One report per ``(nu, r)`` of the grid, in grid order."""
    theorem = TheoremId(theorem)
    spec = spec or GridSpec()
    if theorem is TheoremId.TAN:
        return [_single_report(theorem, Order(-0.5), math.pi / 2, spec)]
    reports = []
    for nu in spec.nu_values:
        order = Order(nu)
        if theorem in R_THEOREMS:
            reports.extend(_single_report(theorem, order, r, spec) for r in spec.r_values)
        else:
            reports.append(_single_report(theorem, order, None, spec))
    return reports


def run_all(spec: GridSpec | None = None, theorems=None) -> list[InequalityReport]:
    spec = spec or GridSpec()
    theorems = [TheoremId(t) for t in (theorems or list(TheoremId))]
    return [rep for t in theorems for rep in check_inequality(t, spec)]


def suite_summary(reports, suite: str = "inequalities") -> dict:
    counts = {"passed": 0, "failed": 0, "exploratory": 0}
    for rep in reports:
        counts[rep.status] += 1
    return {"suite": suite, **counts}


# ---------------------------------------------------------------------------
# monotonicity


def monotonicity_scan(kind: QuotientKind | str, order: Order, spec: GridSpec | None = None) -> tuple[bool, str, float]:
    """Successive differences of ``kind`` on the grid.

    For the kinds expected to decrease the direction is ``"decreasing"`` and
    ``worst_violation`` is the largest forward difference (negative when the
    scan is clean).  Other kinds report the observed direction.
    """
    kind = QuotientKind(kind)
    spec = spec or GridSpec()
    radii = spec.r_values if kind in R_KINDS else (None,)
    diffs = []
    for r in radii:
        u = r if r is not None else tight_first_zero(order).mid
        values = [quotient_eval(kind, order, x, r) for x in spec.abscissae(u)]
        diffs.extend(b - a for a, b in zip(values, values[1:]))
    if not diffs:
        return True, "constant", 0.0
    if kind in DECREASING:
        worst = max(diffs)
        return worst < 0.0, "decreasing", worst
    if all(d > 0.0 for d in diffs):
        return True, "increasing", -min(diffs)
    if all(d < 0.0 for d in diffs):
        return True, "decreasing", max(diffs)
    return False, "none", max(max(diffs), -min(diffs))


__all__ = [
    "GridSpec",
    "InequalityReport",
    "QuotientKind",
    "SharpConstants",
    "TheoremId",
    "bw1_margin",
    "check_inequality",
    "check_power_chain",
    "inequality_bounds",
    "monotonicity_scan",
    "quotient_eval",
    "run_all",
    "sharp_constants",
    "sharpness_probe",
    "suite_summary",
    "zhu_t5_gap",
]
