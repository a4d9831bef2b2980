"""Numerical laboratory for Dirichlet series and double-array summation.

The package splits into five layers:

* arithmetic: sieve-built tables of prime-factor counts, the Liouville
  function, and its signed divisor transform.
* dirichlet_eval: accelerated evaluation of the alternating zeta series,
  the bridge to zeta, and the partial Dirichlet sums used as references.
* double_array: the divisor-supported array, the classical row/column
  counterexample, synthetic calibration arrays, and the three summation
  modes with convergence verdicts.
* summation_diagnostics: limit probes, uniformity scans, and the
  hypothesis-by-hypothesis interchange-theorem classifier.
* zero_finder: critical-line and exceptional zeros of the alternating
  series, the experimental regime for the array diagnostics.
"""

from .arithmetic import (
    ArithmeticTable,
    beta_by_definition,
    beta_closed_form,
    beta_definition_table,
    build_table,
    divisors,
    liouville,
    omega,
)
from .dirichlet_eval import (
    EXCEPTIONAL_SPACING,
    EvalResult,
    beta_series_partial,
    bridge_factor,
    default_order,
    eta,
    eta_line,
    euler_product_partial,
    lambda_series_partial,
    truncation_bound,
    zeta,
    zeta_at_exceptional,
)
from .double_array import (
    CesaroArray,
    LeeArray,
    PartialSumGrid,
    SummationReport,
    SyntheticArray,
    Verdict,
    build_grid,
    classify_trace,
    column_sum,
    iterated_sum,
    pringsheim_trace,
    row_sum,
    term,
)
from .errors import (
    DomainError,
    ExceptionalPointError,
    InsufficientWindowError,
    InvalidBoundError,
    NotAZeroError,
    PoleError,
    ScanStepError,
    TableRangeError,
    ZdlError,
)
from .summation_diagnostics import (
    LimitProbe,
    TheoremCheck,
    UniformityScan,
    classify,
    diagnostics_report,
    lee_verified_scan,
    needed_uniformity_scan,
    probe_limits,
)
from .zero_finder import (
    ZeroCandidate,
    exceptional_zero,
    off_line_sweep,
    refine,
    scan_critical_line,
    zeros_between,
)

__version__ = "0.1.0"

__all__ = [
    "ArithmeticTable",
    "CesaroArray",
    "DomainError",
    "EXCEPTIONAL_SPACING",
    "EvalResult",
    "ExceptionalPointError",
    "InsufficientWindowError",
    "InvalidBoundError",
    "LeeArray",
    "LimitProbe",
    "NotAZeroError",
    "PartialSumGrid",
    "PoleError",
    "ScanStepError",
    "SummationReport",
    "SyntheticArray",
    "TableRangeError",
    "TheoremCheck",
    "UniformityScan",
    "Verdict",
    "ZdlError",
    "ZeroCandidate",
    "beta_by_definition",
    "beta_closed_form",
    "beta_definition_table",
    "beta_series_partial",
    "bridge_factor",
    "build_grid",
    "build_table",
    "classify",
    "classify_trace",
    "column_sum",
    "default_order",
    "diagnostics_report",
    "divisors",
    "eta",
    "eta_line",
    "euler_product_partial",
    "exceptional_zero",
    "iterated_sum",
    "lambda_series_partial",
    "lee_verified_scan",
    "liouville",
    "needed_uniformity_scan",
    "off_line_sweep",
    "omega",
    "pringsheim_trace",
    "probe_limits",
    "refine",
    "row_sum",
    "scan_critical_line",
    "term",
    "zeros_between",
    "zeta",
    "zeta_at_exceptional",
    "truncation_bound",
]
