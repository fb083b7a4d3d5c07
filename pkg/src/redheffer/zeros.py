"""Certified enclosures of the positive zeros ``j_{nu,n}`` of ``J_nu``.

Enclosures come from bisection only.  The first zero is isolated inside its
Euler-Rayleigh bracket using the power series of the normalized function;
higher zeros are bracketed by McMahon-guided stepping and certified by
sign evaluations with explicit error models, after which one counting pass
over a fine mesh confirms that no zero was skipped.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import mpmath
import numpy as np
from scipy import special

from .core_series import UNIT_ROUNDOFF, Order, _series, _series_mp
from .errors import InvalidTolerance, MeshRefinementExhausted, OrderMismatch, SignCertificationFailure

# scipy.special.jv is trusted to CERT_FACTOR * u * (1 + x) * max(|J|, sqrt(2/(pi x)));
# tests/test_zeros.py checks this model against mpmath
CERT_FACTOR = 128.0
# below this abscissa enclosures are finished with mpmath evaluations
MP_LIMIT = 80.0
MP_DPS = 30
SEQUENTIAL_ZEROS = 40
WINDOW = 0.45 * math.pi
MAX_REFINEMENTS = 6


@dataclass(frozen=True)
class CertifiedZero:
    n: int
    lo: float
    hi: float

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def halfwidth(self) -> float:
        return 0.5 * (self.hi - self.lo)


@dataclass(frozen=True)
class ZeroTable:
    order: Order
    zeros: tuple[CertifiedZero, ...]
    tol: float = 1e-12
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __len__(self) -> int:
        return len(self.zeros)

    def __getitem__(self, n: int) -> CertifiedZero:
        """One-based access: ``table[1]`` is the first zero."""
        if n < 1:
            raise IndexError("zero indices start at 1")
        return self.zeros[n - 1]

    @property
    def mids(self) -> np.ndarray:
        return np.array([z.mid for z in self.zeros])

    @cached_property
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Enclosure ends as read-only arrays."""
        lo = np.array([z.lo for z in self.zeros])
        hi = np.array([z.hi for z in self.zeros])
        lo.flags.writeable = False
        hi.flags.writeable = False
        return lo, hi

    def to_json(self) -> str:
        doc = {
            "nu": self.order.nu,
            "tol": self.tol,
            "zeros": [{"n": z.n, "lo": z.lo, "hi": z.hi} for z in self.zeros],
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> ZeroTable:
        doc = json.loads(text)
        zeros = tuple(CertifiedZero(int(z["n"]), float(z["lo"]), float(z["hi"])) for z in doc["zeros"])
        return cls(Order(doc["nu"]), zeros, float(doc["tol"]))


def euler_rayleigh_bracket(order: Order) -> tuple[float, float]:
    """``4(nu+1) < j_{nu,1}^2 < 4(nu+1)(nu+2)`` from the first two Rayleigh sums."""
    nu = order.nu
    return 2.0 * math.sqrt(nu + 1.0), 2.0 * math.sqrt((nu + 1.0) * (nu + 2.0))


# ---------------------------------------------------------------------------
# sign evaluators


def _series_sign(nu: float, x: float, precise: bool) -> tuple[float, float]:
    if precise:
        sv = _series_mp(nu, x, -1, 1e-30, 1e30)
    else:
        sv = _series(nu, x, -1, 1e-17, fallback=False)
    return sv.value, sv.abs_error


def _scipy_eval(nu: float, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    v = special.jv(nu, x)
    env = np.where(x >= 1.0, np.sqrt(2.0 / (np.pi * np.maximum(x, 1.0))), 1.0)
    err = CERT_FACTOR * UNIT_ROUNDOFF * (1.0 + x) * np.maximum(np.abs(v), env)
    return v, err


def _mp_eval(nu: float, x: float) -> tuple[float, float]:
    with mpmath.workdps(MP_DPS):
        v = mpmath.besselj(nu, x)
    fv = float(v)
    return fv, 1e-25 * max(1.0, abs(fv)) + (abs(fv) * UNIT_ROUNDOFF if fv else 0.0)


def _certified_sign(value: float, err: float) -> int:
    if abs(value) > err:
        return 1 if value > 0 else -1
    return 0


# ---------------------------------------------------------------------------
# first zero


def _bisect_scalar(lo: float, hi: float, sign_lo: int, tol: float, evaluate) -> tuple[float, float, bool]:
    """Shrink [lo, hi] while midpoint signs are certified; returns (lo, hi, reached)."""
    while hi - lo > 2.0 * tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            return lo, hi, True
        s = _certified_sign(*evaluate(mid))
        if s == 0:
            return lo, hi, False
        if s == sign_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi, True


def first_zero(order: Order, tol: float = 1e-12) -> CertifiedZero:
    """Enclose ``j_{nu,1}`` to width ``<= 2 tol`` (or to float resolution)."""
    if not (tol > 0 and math.isfinite(tol)):
        raise InvalidTolerance(f"tolerance must be positive and finite (got {tol!r})")
    nu = order.nu
    a, b = euler_rayleigh_bracket(order)
    # J > 0 on [0, j1); j1 < b but b may exceed j2, so locate the first sign change
    cells = 64
    step = (b - a) / cells
    prev = a
    found = None
    for k in range(1, cells + 1):
        x = a + k * step if k < cells else b
        s = _certified_sign(*_series_sign(nu, x, False))
        if s == 0:
            s = _certified_sign(*_series_sign(nu, x, True))
        if s < 0:
            found = (prev, x)
            break
        if s > 0:
            prev = x
    if found is None:
        raise SignCertificationFailure(f"no certified sign change inside the Euler-Rayleigh bracket for nu={nu}")
    lo, hi = found
    lo, hi, reached = _bisect_scalar(lo, hi, 1, tol, lambda x: _series_sign(nu, x, False))
    if not reached:
        # tighten: extended-precision evaluation, once
        lo, hi, reached = _bisect_scalar(lo, hi, 1, tol, lambda x: _series_sign(nu, x, True))
        if not reached:
            raise SignCertificationFailure(f"cannot separate signs near j_{{{nu},1}} at width {hi - lo:.3e}")
    return CertifiedZero(1, lo, hi)


def tight_first_zero(order: Order) -> CertifiedZero:
    """``j_{nu,1}`` enclosed to a few units in the last place (cached per order)."""
    from .core_series import _tight_first_zero

    lo, hi = _tight_first_zero(order.nu)
    return CertifiedZero(1, lo, hi)


# ---------------------------------------------------------------------------
# tables


def mcmahon(nu: float, n: np.ndarray | int) -> np.ndarray:
    """McMahon's large-n expansion of ``j_{nu,n}`` (four terms)."""
    mu = 4.0 * nu * nu
    beta = (np.asarray(n, dtype=float) + 0.5 * nu - 0.25) * np.pi
    e = 8.0 * beta
    return (
        beta
        - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e**3)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e**5)
    )


def _mcmahon_next(nu: float, beta: float) -> float:
    """Size of the first McMahon term left out of :func:`mcmahon`."""
    mu = 4.0 * nu * nu
    coeff = 64.0 * abs(mu - 1.0) * (6949.0 * mu**3 + 153855.0 * mu**2 + 1585743.0 * mu + 6277237.0) / 105.0
    return coeff / (8.0 * beta) ** 7


def mcmahon_power_tail(nu: float, last: CertifiedZero, m: int) -> tuple[float, float]:
    """Asymptotic ``sum_{n>N} j_{nu,n}^-2m`` from McMahon's expansion, with an error estimate.

    Writing ``j = b - a/b - c/b^3 + ...`` with ``b = (n + nu/2 - 1/4) pi``,
    ``j^-2m = b^-2m (1 + 2m a b^-2 + (2m c + m(2m+1) a^2) b^-4 + O(b^-6))``
    and each power of b sums to a Hurwitz zeta value.  The estimate is
    returned with an infinite error when the last tabulated zero disagrees
    with McMahon's prediction beyond the expected truncation size.
    """
    n = last.n
    mu = 4.0 * nu * nu
    a = (mu - 1.0) / 8.0
    c = (mu - 1.0) * (7.0 * mu - 31.0) / 384.0
    e = (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / 15360.0
    q = n + 1 + 0.5 * nu - 0.25
    beta_last = (n + 0.5 * nu - 0.25) * math.pi
    drift = abs(last.mid - float(mcmahon(nu, n)))
    expected = _mcmahon_next(nu, beta_last) + last.halfwidth + 8.0 * UNIT_ROUNDOFF * last.hi
    if beta_last < 2.0 * math.sqrt(abs(mu) + 1.0) or drift > 100.0 * expected:
        return math.nan, math.inf
    s = 2 * m

    def z(k: int) -> float:
        return float(special.zeta(s + k, q)) * math.pi ** (-(s + k))

    c1 = s * a
    c2 = s * c + m * (s + 1) * a * a
    c3 = s * abs(e) + s * (s + 1) * abs(a * c) + s * (s + 1) * (s + 2) / 6.0 * abs(a) ** 3
    value = z(0) + c1 * z(2) + c2 * z(4)
    err = 4.0 * c3 * z(6) + 16.0 * UNIT_ROUNDOFF * (abs(z(0)) + abs(c1 * z(2)) + abs(c2 * z(4)))
    # residual drift of the table against McMahon shifts every term by at most this much
    err += s * drift / last.lo * z(0)
    return value, err


def _resolution(x: np.ndarray | float, tol: float) -> np.ndarray | float:
    """Half-width the scipy evaluator can certify near x."""
    return np.maximum(tol, 4.0 * CERT_FACTOR * UNIT_ROUNDOFF * (1.0 + np.asarray(x)))


def _bisect_vector(nu: float, lo: np.ndarray, hi: np.ndarray, sign_lo: np.ndarray, half: np.ndarray):
    lo = lo.copy()
    hi = hi.copy()
    active = (hi - lo) > 2.0 * half
    for _ in range(200):
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        mid = 0.5 * (lo[idx] + hi[idx])
        v, err = _scipy_eval(nu, mid)
        certain = np.abs(v) > err
        same = np.sign(v) == sign_lo[idx]
        upd_lo = idx[certain & same]
        upd_hi = idx[certain & ~same]
        lo[upd_lo] = mid[certain & same]
        hi[upd_hi] = mid[certain & ~same]
        stuck = idx[~certain]
        if stuck.size:
            # the midpoint sits inside the noise band; straddle it instead
            m = mid[~certain]
            delta = 0.98 * half[stuck]
            vl, el = _scipy_eval(nu, m - delta)
            vr, er = _scipy_eval(nu, m + delta)
            ok = (np.abs(vl) > el) & (np.abs(vr) > er) & (np.sign(vl) == sign_lo[stuck]) & (np.sign(vr) == -sign_lo[stuck])
            lo[stuck[ok]] = (m - delta)[ok]
            hi[stuck[ok]] = (m + delta)[ok]
        active[stuck] = False
        active &= (hi - lo) > 2.0 * half
        degenerate = (0.5 * (lo + hi) <= lo) | (0.5 * (lo + hi) >= hi)
        active &= ~degenerate
    return lo, hi


def _window_signs(nu: float, a: np.ndarray, b: np.ndarray):
    va, ea = _scipy_eval(nu, a)
    vb, eb = _scipy_eval(nu, b)
    sa = np.where(np.abs(va) > ea, np.sign(va), 0)
    sb = np.where(np.abs(vb) > eb, np.sign(vb), 0)
    return sa, sb


def _bracket_next(nu: float, n: int, prev: CertifiedZero, predicted: float) -> tuple[float, float]:
    """Window around the predicted zero with certified end signs (-1)^(n-1), (-1)^n."""
    want_lo = 1 if n % 2 == 1 else -1
    halfwin = WINDOW
    for _ in range(MAX_REFINEMENTS + 1):
        a = max(predicted - halfwin, prev.hi + 1e-9 * prev.hi)
        b = predicted + halfwin
        sa, sb = _window_signs(nu, np.array([a]), np.array([b]))
        if sa[0] == want_lo and sb[0] == -want_lo:
            return a, b
        halfwin *= 1.5
    raise MeshRefinementExhausted(f"could not bracket j_{{{nu},{n}}} near {predicted:.6g}")


def _finish_mp(nu: float, lo: float, hi: float, n: int, tol: float) -> tuple[float, float]:
    sign_lo = 1 if n % 2 == 1 else -1
    # mpmath evaluations are cheap here, so go down to float resolution
    lo, hi, reached = _bisect_scalar(lo, hi, sign_lo, min(tol, 2.0 * UNIT_ROUNDOFF * hi), lambda x: _mp_eval(nu, x))
    if not reached:
        raise SignCertificationFailure(f"cannot separate signs near j_{{{nu},{n}}}")
    return lo, hi


def _count_sign_changes(nu: float, zeros: list[CertifiedZero], step: float) -> int:
    start, stop = zeros[0].lo, zeros[-1].hi
    mesh = np.arange(start, stop, step)
    ends = np.array([[z.lo, z.hi] for z in zeros]).ravel()
    ends_sign = np.array([[1 if z.n % 2 else -1, -1 if z.n % 2 else 1] for z in zeros]).ravel()
    # uniform points that fall inside an enclosure carry no information
    k = np.searchsorted(ends, mesh, side="right")
    mesh = mesh[(k % 2 == 0) & ~np.isin(mesh, ends)]
    v, err = _scipy_eval(nu, mesh)
    keep = np.abs(v) > err
    xs = np.concatenate([mesh[keep], ends])
    ss = np.concatenate([np.sign(v[keep]), ends_sign])
    order = np.argsort(xs, kind="stable")
    ss = ss[order]
    return int(np.count_nonzero(ss[1:] != ss[:-1]))


def zero_table(order: Order, count: int, tol: float = 1e-12) -> ZeroTable:
    """First ``count`` positive zeros, each certified, with a completeness check.

    Enclosure half-widths are ``<= tol`` for zeros below ``MP_LIMIT``; beyond
    it they are ``<= max(tol, 4 * CERT_FACTOR * u * (1 + x))``, the resolution
    of the binary64 evaluator there.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    nu = order.nu
    z1 = first_zero(order, tol)
    zeros = [z1]
    seq = min(count, SEQUENTIAL_ZEROS)
    for n in range(2, seq + 1):
        prev = zeros[-1]
        predicted = prev.mid + float(mcmahon(nu, n) - mcmahon(nu, n - 1))
        a, b = _bracket_next(nu, n, prev, predicted)
        sign_lo = np.array([1.0 if n % 2 == 1 else -1.0])
        half = np.array([_resolution(b, tol)], dtype=float).ravel()
        lo, hi = _bisect_vector(nu, np.array([a]), np.array([b]), sign_lo, half)
        lo_f, hi_f = float(lo[0]), float(hi[0])
        if hi_f <= MP_LIMIT:
            lo_f, hi_f = _finish_mp(nu, lo_f, hi_f, n, tol)
        zeros.append(CertifiedZero(n, lo_f, hi_f))
    if count > seq:
        ns = np.arange(seq + 1, count + 1)
        offset = zeros[-1].mid - float(mcmahon(nu, seq))
        predicted = mcmahon(nu, ns) + offset
        a = predicted - WINDOW
        b = predicted + WINDOW
        sa, sb = _window_signs(nu, a, b)
        want = np.where(ns % 2 == 1, 1.0, -1.0)
        bad = np.nonzero((sa != want) | (sb != -want))[0]
        if bad.size:
            raise MeshRefinementExhausted(f"McMahon windows failed for zeros {ns[bad[:5]].tolist()} of J_{nu}")
        half = _resolution(b, tol)
        lo, hi = _bisect_vector(nu, a, b, want, half)
        if np.any(hi - lo > 2.0 * half * (1.0 + 1e-9)):
            worst = int(ns[np.argmax((hi - lo) / half)])
            raise SignCertificationFailure(f"enclosure of j_{{{nu},{worst}}} wider than the certified resolution")
        for n, l, h in zip(ns.tolist(), lo.tolist(), hi.tolist()):
            if h <= MP_LIMIT:
                l, h = _finish_mp(nu, l, h, n, tol)
            zeros.append(CertifiedZero(n, l, h))
    mids = [z.mid for z in zeros]
    spacing = min(np.diff(mids)) if len(mids) > 1 else math.pi
    step = min(math.pi / 8.0, spacing / 4.0)
    for _ in range(MAX_REFINEMENTS):
        if _count_sign_changes(nu, zeros, step) == count:
            break
        step /= 2.0
    else:
        raise MeshRefinementExhausted(f"sign-change count for J_{nu} does not match {count} zeros")
    return ZeroTable(order, tuple(zeros), tol)


def interlacing_residuals(a: ZeroTable, b: ZeroTable) -> list[float]:
    """Certified gaps ``min(j_{nu+1,n} - j_{nu,n})`` and ``min(j_{nu,n+1} - j_{nu+1,n})``."""
    if len(a) != len(b):
        raise OrderMismatch("tables must have the same number of zeros")
    if abs(b.order.nu - (a.order.nu + 1.0)) > 1e-12 * max(1.0, abs(b.order.nu)):
        raise OrderMismatch(f"second table must be for nu+1 (got {a.order.nu} and {b.order.nu})")
    first = min(zb.lo - za.hi for za, zb in zip(a.zeros, b.zeros))
    out = [first]
    if len(a) > 1:
        out.append(min(a.zeros[k + 1].lo - b.zeros[k].hi for k in range(len(a) - 1)))
    return out


def refine_zero(order: Order, zero: CertifiedZero, dps: int) -> mpmath.mpf:
    """Bisect a certified enclosure further with ``dps``-digit arithmetic."""
    nu = order.nu
    with mpmath.workdps(dps + 10):
        lo = mpmath.mpf(zero.lo)
        hi = mpmath.mpf(zero.hi)
        sign_lo = 1 if zero.n % 2 == 1 else -1
        target = mpmath.mpf(10) ** (-dps - 2) * hi
        while hi - lo > target:
            mid = (lo + hi) / 2
            v = mpmath.besselj(nu, mid)
            if v == 0:
                lo = hi = mid
                break
            if (v > 0) == (sign_lo > 0):
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


# ---------------------------------------------------------------------------
# on-disk cache


def cache_key(order: Order, count: int, tol: float) -> str:
    return f"zeros_nu{order.nu:+.12f}_N{count}_tol{tol:.3e}.json"


def default_cache_dir() -> Path:
    env = os.environ.get("REDHEFFER_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "redheffer"


def cached_zero_table(order: Order, count: int, tol: float = 1e-12, cache_dir: Path | None = None) -> ZeroTable:
    """``zero_table`` backed by the JSON cache; the file content is the table itself."""
    directory = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    path = directory / cache_key(order, count, tol)
    if path.exists():
        table = ZeroTable.from_json(path.read_text())
        return ZeroTable(order, table.zeros, table.tol, {"cache": "hit"})
    table = zero_table(order, count, tol)
    directory.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(table.to_json())
    tmp.replace(path)
    return ZeroTable(order, table.zeros, table.tol, {"cache": "miss"})
