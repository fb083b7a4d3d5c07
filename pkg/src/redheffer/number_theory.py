"""Bernoulli numbers, even zeta and eta values, and the closed forms of the Rayleigh sums at nu = -1/2, 1/2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath

from .errors import CacheTooSmall, InequalityViolation, OrderMismatch
from .rayleigh import SequenceTable

MAX_M = 100
ZETA_DPS = 60


@dataclass(frozen=True)
class NumberTheoryCache:
    """Index ``m`` of each list refers to argument ``2m``; ``bernoulli_even[0]`` is ``B_0``."""

    M: int
    bernoulli_even: tuple[Fraction, ...]
    zeta_even: tuple  # zeta(2), ..., zeta(2M) as mpf
    eta_even: tuple
    genocchi: tuple[Fraction, ...]  # G_0, G_2, ..., G_2M

    def bernoulli(self, n: int) -> Fraction:
        if n % 2 or n // 2 > self.M:
            raise CacheTooSmall(f"B_{n} is not cached (M={self.M})")
        return self.bernoulli_even[n // 2]

    def zeta(self, m: int):
        """``zeta(2m)``."""
        self._check(m)
        return self.zeta_even[m - 1]

    def eta(self, m: int):
        """``eta(2m)``."""
        self._check(m)
        return self.eta_even[m - 1]

    def _check(self, m: int) -> None:
        if not 1 <= m <= self.M:
            raise CacheTooSmall(f"2m={2 * m} is outside the cache (M={self.M})")


def bernoulli_numbers(n_max: int) -> list[Fraction]:
    """``B_0..B_n_max`` from ``sum_{k=0}^{n} C(n+1, k) B_k = 0`` (so ``B_1 = -1/2``)."""
    b = [Fraction(1)]
    for n in range(1, n_max + 1):
        if n > 1 and n % 2:
            b.append(Fraction(0))
            continue
        s = sum(comb(n + 1, k) * b[k] for k in range(n))
        b.append(-s / (n + 1))
    return b


def build_cache(M: int) -> NumberTheoryCache:
    if not 1 <= M <= MAX_M:
        raise ValueError(f"M must lie in 1..{MAX_M}")
    b = bernoulli_numbers(2 * M)
    b_even = tuple(b[0 : 2 * M + 1 : 2])
    with mpmath.workdps(ZETA_DPS):
        zeta = []
        eta = []
        for m in range(1, M + 1):
            bm = b_even[m]
            # zeta(2m) = (-1)^(m+1) B_2m (2 pi)^2m / (2 (2m)!)
            z = (-1) ** (m + 1) * mpmath.mpf(bm.numerator) / bm.denominator * (2 * mpmath.pi) ** (2 * m)
            z /= 2 * factorial(2 * m)
            zeta.append(z)
            eta.append((1 - mpmath.mpf(2) ** (1 - 2 * m)) * z)
    genocchi = tuple(2 * (1 - 2 ** (2 * m)) * b_even[m] for m in range(M + 1))
    return NumberTheoryCache(M, b_even, tuple(zeta), tuple(eta), genocchi)


def sigma_half_closed(sign: Fraction | float, m: int, cache: NumberTheoryCache) -> Fraction:
    """``sigma_{-1/2}^(2m) = (-1)^m 2^(2m-2) G_2m/(2m)!`` and ``sigma_{1/2}^(2m) = (-1)^(m-1) 2^(2m-1) B_2m/(2m)!``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if m > cache.M:
        raise CacheTooSmall(f"2m={2 * m} is outside the cache (M={cache.M})")
    half = Fraction(sign)
    if half == Fraction(-1, 2):
        return (-1) ** m * Fraction(2) ** (2 * m - 2) * cache.genocchi[m] / factorial(2 * m)
    if half == Fraction(1, 2):
        return (-1) ** (m - 1) * Fraction(2) ** (2 * m - 1) * cache.bernoulli_even[m] / factorial(2 * m)
    raise ValueError("sign must be -1/2 or 1/2")


def omega_eta_identity_residual(m: int, cache: NumberTheoryCache, seq: SequenceTable) -> float:
    """``|omega_{m,-1/2} - eta(2m)|``; also insists on ``omega_{m+1} > omega_m``."""
    if seq.order.nu != -0.5:
        raise OrderMismatch("the eta identity concerns nu = -1/2")
    if seq.m_max < m + 1:
        raise CacheTooSmall(f"sequence table must cover m={m + 1}")
    with mpmath.workdps(max(seq.dps, ZETA_DPS)):
        residual = abs(seq.omega[m - 1] - cache.eta(m))
        if not seq.omega[m] > seq.omega[m - 1]:
            raise InequalityViolation(f"omega_{{{m + 1}}} does not exceed omega_{{{m}}} at nu=-1/2")
        return float(residual)


def eta_alternating(m: int, dps: int = 30) -> float:
    """``sum_{n>=1} (-1)^(n-1) n^-2m`` by Cohen-Rodriguez Villegas-Zagier acceleration; an oracle independent of Bernoulli numbers."""
    with mpmath.workdps(dps + 10):
        n = int(1.31 * (dps + 10)) + 1
        d = (3 + mpmath.sqrt(8)) ** n
        d = (d + 1 / d) / 2
        b = mpmath.mpf(-1)
        c = -d
        s = mpmath.mpf(0)
        for k in range(n):
            c = b - c
            s += c * mpmath.mpf(k + 1) ** (-2 * m)
            b = b * (k + n) * (k - n) / ((k + mpmath.mpf(0.5)) * (k + 1))
        return float(s / d)
