"""Normalized Bessel functions, their zeros and Rayleigh sums, and grid checks of sharp power bounds in the style of Redheffer's inequality."""

__version__ = "0.1.0"

from .core_series import (
    ClosedFormKind,
    Order,
    SeriesValue,
    closed_form,
    eval_inorm,
    eval_inorm_deriv,
    eval_inorm_minus_one,
    eval_jnorm,
    eval_jnorm_cofactor,
    eval_jnorm_deriv,
    eval_jnorm_minus_one,
    ratio_I,
    ratio_J,
    turanian_residual,
)
from .inequality_engine import (
    GridSpec,
    InequalityReport,
    QuotientKind,
    SharpConstants,
    TheoremId,
    bw1_margin,
    check_inequality,
    check_power_chain,
    inequality_bounds,
    monotonicity_scan,
    quotient_eval,
    sharp_constants,
    sharpness_probe,
    suite_summary,
)
from .number_theory import NumberTheoryCache, build_cache, eta_alternating, omega_eta_identity_residual, sigma_half_closed
from .rayleigh import (
    ConjectureRecord,
    RayleighTable,
    SequenceTable,
    conjecture_ratio,
    conjecture_sweep,
    omega_x,
    scaled_sequences,
    sigma_by_zero_sum,
    sigma_table_recurrence,
)
from .zeros import (
    CertifiedZero,
    ZeroTable,
    cached_zero_table,
    euler_rayleigh_bracket,
    first_zero,
    interlacing_residuals,
    tight_first_zero,
    zero_table,
)
