"""Command-line front end: point evaluation, zero tables, Rayleigh sums, inequality checks and reports.

Exit codes: 0 when every asserted check passes, 1 when a mathematical check
fails, 2 on usage or configuration errors.  Output is byte-stable for a fixed
configuration: JSON keys are sorted, reals use the shortest round-trip form,
and timing is only written when ``--timing`` is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np
import scipy

from . import __version__
from .core_series import (
    Order,
    eval_inorm,
    eval_inorm_deriv,
    eval_jnorm,
    eval_jnorm_cofactor,
    eval_jnorm_deriv,
    ratio_I,
    ratio_J,
)
from .errors import RedhefferError
from .inequality_engine import (
    DEFAULT_G,
    DEFAULT_NUS,
    DEFAULT_RS,
    DEFAULT_TOL_MARGIN,
    DECREASING,
    GridSpec,
    QuotientKind,
    TheoremId,
    check_inequality,
    monotonicity_scan,
    run_all,
    suite_summary,
)
from .number_theory import build_cache, omega_eta_identity_residual
from .rayleigh import CSV_HEADER, conjecture_sweep, records_to_csv, scaled_sequences, sigma_by_zero_sum, sigma_table_recurrence
from .zeros import cached_zero_table, default_cache_dir, first_zero, zero_table

SUBCOMMANDS = ("eval", "zeros", "rayleigh", "check", "conjecture", "report")
FUNCTIONS = ("jnorm", "inorm", "jnorm_deriv", "inorm_deriv", "cofactor", "ratio_J", "ratio_I")
REPORT_COLUMNS = (
    "theorem",
    "nu",
    "r",
    "min_lower_margin",
    "min_upper_margin",
    "argmin_lower",
    "argmin_upper",
    "sharpness_residual_0",
    "sharpness_residual_end",
    "comparison_margin",
    "status",
)
ETA_TOL = 1e-12
ZERO_ORACLE_TOL = 1e-12
DEFAULT_CONJ_NUS = "-0.9:5:0.1"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    nus: tuple[float, ...] = DEFAULT_NUS
    rs: tuple[float, ...] = DEFAULT_RS
    grid: int = DEFAULT_G
    m_max: int = 20
    count: int = 200
    tol: float = 1e-12
    tol_margin: float = DEFAULT_TOL_MARGIN
    fmt: str = "json"
    output: Path | None = None
    cache_dir: Path | None = None
    use_cache: bool = True
    theorem: str | None = None
    function: str = "jnorm"
    x: float | None = None
    dps: int = 60
    exact: bool = False
    timing: bool = False

    def echo(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "nu": list(self.nus),
            "r": list(self.rs),
            "grid": self.grid,
            "m_max": self.m_max,
            "count": self.count,
            "tol": self.tol,
            "tol_margin": self.tol_margin,
            "theorem": self.theorem,
            "function": self.function,
            "x": self.x,
            "dps": self.dps,
            "exact": self.exact,
        }


@dataclass
class ReportBundle:
    config: dict = field(default_factory=dict)
    reports: list = field(default_factory=list)
    records: list = field(default_factory=list)
    sections: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    status: str = "passed"
    exit_code: int = 0

    def to_document(self, with_timing: bool = False) -> dict:
        doc = {
            "config": self.config,
            "reports": self.reports,
            "status": self.status,
            "versions": versions(),
        }
        if self.records:
            doc["conjecture"] = [dict(zip(CSV_HEADER, _record_values(r))) for r in self.records]
        doc.update(self.sections)
        if with_timing:
            doc["timing"] = self.timing
        return doc


def versions() -> dict:
    return {"redheffer": __version__, "numpy": np.__version__, "scipy": scipy.__version__, "mpmath": mpmath.__version__}


def _record_values(rec) -> list:
    return [rec.nu, rec.m, rec.ratio, rec.jsq, rec.margin, rec.status]


def _clean(obj):
    """JSON-safe copy: non-finite reals become null, Fractions become strings."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return _clean(obj.item())
    return obj


# ---------------------------------------------------------------------------
# parsing


def parse_nu_range(text: str) -> tuple[float, ...]:
    """``start:stop:step`` inclusive of ``stop``, with values rounded to 12 decimals."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"nu range must read start:stop:step (got {text!r})")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"bad nu range {text!r}") from exc
    if not step > 0.0 or stop < start:
        raise UsageError("nu range needs step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(round(start + i * step, 12) for i in range(count))


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="redheffer", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"redheffer {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, fmt_default="json"):
        sp.add_argument("--format", choices=("json", "csv"), default=fmt_default, dest="fmt")
        sp.add_argument("--output", type=Path, default=None, help="write here instead of stdout")
        sp.add_argument("--cache-dir", type=Path, default=None, help="zero-table cache (default $REDHEFFER_CACHE_DIR)")
        sp.add_argument("--no-cache", action="store_true")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timing in the output")

    sp = sub.add_parser("eval", help="evaluate one function at one point")
    sp.add_argument("--function", choices=FUNCTIONS, default="jnorm")
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--count", type=int, default=10000, help="zeros used by ratio_J / ratio_I")
    common(sp)

    sp = sub.add_parser("zeros", help="certified zero table")
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--tol", type=float, default=1e-12)
    common(sp)

    sp = sub.add_parser("rayleigh", help="Rayleigh sums by recurrence, optionally cross-checked on zeros")
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--m-max", type=int, default=10)
    sp.add_argument("--exact", action="store_true", help="exact rational recurrence")
    sp.add_argument("--dps", type=int, default=None)
    sp.add_argument("--count", type=int, default=0, help="cross-check against this many zeros (0 = skip)")
    common(sp)

    sp = sub.add_parser("check", help="grid check of one inequality")
    sp.add_argument("--theorem", choices=[t.value for t in TheoremId], required=True)
    sp.add_argument("--nu", type=float, action="append", default=None)
    sp.add_argument("--r", type=float, action="append", default=None)
    sp.add_argument("--grid", type=int, default=DEFAULT_G)
    sp.add_argument("--tol-margin", type=float, default=DEFAULT_TOL_MARGIN)
    common(sp)

    sp = sub.add_parser("conjecture", help="sweep the Rayleigh-ratio conjecture")
    sp.add_argument("--nu-range", default=None, help="start:stop:step")
    sp.add_argument("--nu", type=float, action="append", default=None)
    sp.add_argument("--m-max", type=int, default=20)
    sp.add_argument("--dps", type=int, default=60)
    common(sp, "csv")

    sp = sub.add_parser("report", help="every check in one document")
    sp.add_argument("--nu", type=float, action="append", default=None)
    sp.add_argument("--r", type=float, action="append", default=None)
    sp.add_argument("--grid", type=int, default=DEFAULT_G)
    sp.add_argument("--m-max", type=int, default=20)
    sp.add_argument("--eta-m-max", type=int, default=50)
    sp.add_argument("--tol-margin", type=float, default=DEFAULT_TOL_MARGIN)
    common(sp)
    return p


def _glue_values(argv: list[str]) -> list[str]:
    # a range such as -0.9:5:0.1 looks like an option to argparse
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--nu-range":
            out.append(f"--nu-range={next(it, '')}")
        else:
            out.append(tok)
    return out


def config_from_args(argv=None) -> RunConfig:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = _parser().parse_args(_glue_values(argv))
    cfg = RunConfig(args.subcommand, fmt=args.fmt, output=args.output, timing=args.timing)
    cfg.cache_dir = args.cache_dir
    cfg.use_cache = not args.no_cache
    nu = getattr(args, "nu", None)
    if isinstance(nu, list):
        cfg.nus = tuple(nu)
    elif nu is not None:
        cfg.nus = (nu,)
    if getattr(args, "nu_range", None):
        cfg.nus = parse_nu_range(args.nu_range)
    elif args.subcommand == "conjecture" and nu is None:
        cfg.nus = parse_nu_range(DEFAULT_CONJ_NUS)
    if getattr(args, "r", None):
        cfg.rs = tuple(args.r)
    for name in ("grid", "m_max", "count", "tol", "tol_margin", "theorem", "function", "x", "exact"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "dps", None) is not None:
        cfg.dps = args.dps
    elif args.subcommand == "rayleigh":
        cfg.dps = None
    if args.subcommand == "report":
        cfg.count = args.eta_m_max  # reused as the eta-identity depth
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    for nu in cfg.nus:
        Order(nu)  # raises InvalidOrder with "nu must exceed -1"
    if any(not (r > 0.0 and math.isfinite(r)) for r in cfg.rs):
        raise UsageError("r must be positive")
    if cfg.grid < 1:
        raise UsageError("grid must be positive")
    if cfg.m_max < 1:
        raise UsageError("m-max must be positive")
    if cfg.count < 0 or (cfg.subcommand in ("zeros", "eval") and cfg.count < 1):
        raise UsageError("count must be positive")
    if not (cfg.tol > 0.0 and math.isfinite(cfg.tol)):
        raise UsageError("tol must be positive")
    if cfg.dps is not None and cfg.dps < 15:
        raise UsageError("dps must be at least 15")
    if cfg.subcommand == "eval" and not math.isfinite(cfg.x):
        raise UsageError("x must be finite")


# ---------------------------------------------------------------------------
# running


def _zeros(cfg: RunConfig, order: Order, count: int):
    if cfg.use_cache:
        return cached_zero_table(order, count, cfg.tol, cfg.cache_dir or default_cache_dir())
    return zero_table(order, count, cfg.tol)


def _run_eval(cfg: RunConfig, bundle: ReportBundle) -> None:
    order = Order(cfg.nus[0])
    f = cfg.function
    if f in ("ratio_J", "ratio_I"):
        table = _zeros(cfg, order, cfg.count)
        sv = (ratio_J if f == "ratio_J" else ratio_I)(order, cfg.x, table, cfg.tol)
    else:
        fn = {
            "jnorm": eval_jnorm,
            "inorm": eval_inorm,
            "jnorm_deriv": eval_jnorm_deriv,
            "inorm_deriv": eval_inorm_deriv,
            "cofactor": eval_jnorm_cofactor,
        }[f]
        sv = fn(order, cfg.x, cfg.tol)
    bundle.reports.append(
        {"function": f, "nu": order.nu, "x": cfg.x, "value": sv.value, "abs_error": sv.abs_error,
         "terms_used": sv.terms_used, "method": sv.method}
    )


def _run_zeros(cfg: RunConfig, bundle: ReportBundle) -> None:
    order = Order(cfg.nus[0])
    table = _zeros(cfg, order, cfg.count)
    bundle.reports.extend({"nu": order.nu, "n": z.n, "lo": z.lo, "hi": z.hi, "mid": z.mid} for z in table.zeros)


def _run_rayleigh(cfg: RunConfig, bundle: ReportBundle) -> None:
    order = Order(cfg.nus[0])
    table = sigma_table_recurrence(order, cfg.m_max, exact=cfg.exact, dps=cfg.dps)
    zeros = _zeros(cfg, order, cfg.count) if cfg.count else None
    failed = False
    for m in range(1, cfg.m_max + 1):
        s = table[m]
        row = {"nu": order.nu, "m": m, "sigma": s if isinstance(s, Fraction) else float(s),
               "rel_error": table.rel_error[m - 1], "mode": table.mode}
        if zeros is not None:
            zs = sigma_by_zero_sum(order, m, zeros)
            bound = zs.abs_error + abs(float(s)) * table.rel_error[m - 1]
            row.update(zero_sum=zs.value, zero_sum_error=zs.abs_error, agrees=abs(zs.value - float(s)) <= bound)
            failed |= not row["agrees"]
        bundle.reports.append(row)
    if failed:
        bundle.status, bundle.exit_code = "failed", 1


def _spec(cfg: RunConfig) -> GridSpec:
    return GridSpec(cfg.nus, cfg.grid, cfg.rs, cfg.tol_margin)


def _run_check(cfg: RunConfig, bundle: ReportBundle) -> None:
    reports = check_inequality(cfg.theorem, _spec(cfg))
    bundle.reports.extend(r.to_dict() for r in reports)
    bundle.sections["summary"] = suite_summary(reports, cfg.theorem)
    if any(r.status == "failed" for r in reports):
        bundle.status, bundle.exit_code = "failed", 1


def _conjecture_section(records) -> dict:
    margins = [r.margin for r in records if r.status == "ok"]
    positive = all(m > 0.0 for m in margins)
    inconclusive = sum(r.status != "ok" for r in records)
    status = "exploratory" if positive else "exploratory anomaly"
    return {"count": len(records), "inconclusive": inconclusive, "min_margin": min(margins, default=None),
            "all_positive": positive, "status": status}


def _run_conjecture(cfg: RunConfig, bundle: ReportBundle) -> None:
    bundle.records = conjecture_sweep(cfg.nus, cfg.m_max, cfg.dps)
    section = _conjecture_section(bundle.records)
    bundle.sections["conjecture_summary"] = section
    bundle.status = section["status"]


def _run_report(cfg: RunConfig, bundle: ReportBundle) -> None:
    spec = _spec(cfg)
    reports = run_all(spec)
    bundle.reports.extend(r.to_dict() for r in reports)
    summary = suite_summary(reports)
    failed = summary["failed"] > 0

    mono = []
    for nu in spec.nu_values:
        for kind in QuotientKind:
            ok, direction, worst = monotonicity_scan(kind, Order(nu), spec)
            asserted = kind in DECREASING
            mono.append({"kind": kind.value, "nu": nu, "monotone": ok, "direction": direction,
                         "worst_violation": worst, "asserted": asserted})
            failed |= asserted and not ok
    # psi at nu = -1/2 is proved increasing
    for m in mono:
        if m["kind"] == "psi" and m["nu"] == -0.5:
            m["asserted"] = True
            failed |= not (m["monotone"] and m["direction"] == "increasing")

    records = conjecture_sweep(spec.nu_values, cfg.m_max, cfg.dps)
    conj = _conjecture_section(records)
    proved = [r for r in records if r.nu == -0.5 and r.status == "ok"]
    failed |= any(r.margin <= 0.0 for r in proved)

    eta_m = cfg.count
    nt = build_cache(eta_m + 1)
    order = Order(-0.5)
    seq = scaled_sequences(order, eta_m + 1, first_zero(order), cfg.dps)
    residuals = [omega_eta_identity_residual(m, nt, seq) for m in range(1, eta_m + 1)]
    eta = {"m_max": eta_m, "max_residual": max(residuals), "passed": max(residuals) <= ETA_TOL}
    failed |= not eta["passed"]

    zero_checks = []
    for nu, shift in ((0.5, 0.0), (-0.5, 0.5)):
        table = _zeros(replace(cfg, tol=ZERO_ORACLE_TOL), Order(nu), 20)
        worst = max(abs(z.mid - (z.n - shift) * math.pi) for z in table.zeros)
        zero_checks.append({"nu": nu, "count": 20, "max_abs_error": worst, "passed": worst <= ZERO_ORACLE_TOL})
        failed |= worst > ZERO_ORACLE_TOL

    bundle.sections.update(
        summary=summary, monotonicity=mono, conjecture_summary=conj, eta_identity=eta, zero_oracles=zero_checks
    )
    bundle.records = records
    if failed:
        bundle.status, bundle.exit_code = "failed", 1


RUNNERS = {
    "eval": _run_eval,
    "zeros": _run_zeros,
    "rayleigh": _run_rayleigh,
    "check": _run_check,
    "conjecture": _run_conjecture,
    "report": _run_report,
}


def run_suite(cfg: RunConfig) -> ReportBundle:
    validate(cfg)
    bundle = ReportBundle(config=cfg.echo())
    start = time.perf_counter()
    try:
        RUNNERS[cfg.subcommand](cfg, bundle)
    except RedhefferError as exc:
        if isinstance(exc, ValueError):
            raise
        bundle.status, bundle.exit_code = "failed", 1
        bundle.sections["error"] = f"{type(exc).__name__}: {exc}"
    bundle.timing = {"elapsed_s": time.perf_counter() - start}
    return bundle


# ---------------------------------------------------------------------------
# output


def _csv_text(bundle: ReportBundle, subcommand: str) -> str:
    if subcommand == "conjecture" or (subcommand == "report" and not bundle.reports):
        return records_to_csv(bundle.records)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if subcommand in ("check", "report"):
        writer.writerow(REPORT_COLUMNS)
        for rep in bundle.reports:
            writer.writerow(["" if rep.get(c) is None else _cell(rep.get(c)) for c in REPORT_COLUMNS])
        return buf.getvalue()
    columns = sorted({k for rep in bundle.reports for k in rep})
    writer.writerow(columns)
    for rep in bundle.reports:
        writer.writerow([_cell(rep.get(c, "")) for c in columns])
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(bundle: ReportBundle, fmt: str = "json", subcommand: str | None = None, with_timing: bool = False) -> str:
    subcommand = subcommand or bundle.config.get("subcommand", "")
    if fmt == "csv":
        return _csv_text(bundle, subcommand)
    doc = _clean(bundle.to_document(with_timing))
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def emit(bundle: ReportBundle, fmt: str = "json", path: Path | None = None, with_timing: bool = False) -> None:
    text = render(bundle, fmt, with_timing=with_timing)
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except (UsageError, RedhefferError, ValueError) as exc:
        print(f"redheffer: error: {exc}", file=sys.stderr)
        return 2
    try:
        bundle = run_suite(cfg)
    except (UsageError, ValueError) as exc:
        print(f"redheffer: error: {exc}", file=sys.stderr)
        return 2
    try:
        emit(bundle, cfg.fmt, cfg.output, cfg.timing)
    except OSError as exc:
        print(f"redheffer: error: {exc}", file=sys.stderr)
        return 2
    if bundle.exit_code:
        print(f"redheffer: {bundle.status}", file=sys.stderr)
    return bundle.exit_code


if __name__ == "__main__":
    sys.exit(main())
