"""Empirical probes for limit interchange on finite windows.

Everything here works on the partial-sum surface f(M, N) = S(M, N) of a
double array, over a declared finite window.  Vocabulary used throughout
(and in the JSON reports):

* first partial limit: lim over m of S(m, n), one value per column n;
* second partial limit: lim over n of S(m, n), one value per row m;
* first iterated limit: outer limit over n of the first partials;
* second iterated limit: outer limit over m of the second partials;
* double limit: the rectangle limit, min(m, n) large jointly.

A limit "settles" on the window when the second half of its trace fits
in a box of diameter at most the tolerance.  "Settles uniformly" adds
that every settle index stays clear of the window edge.  None of this
decides convergence in the mathematical sense; every verdict is a
statement about the window, and the window is always reported alongside.

The two uniformity scans measure the competing Cauchy-block quantities
for the divisor-supported array: the block-tail criterion the limit
interchange actually needs, and the row-tail criterion that is easy to
verify but insufficient.  At arguments on the critical line the first
stalls while the second decays, which is the whole story told by this
package in one pair of curves.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ._parallel import ordered_map
from .arithmetic import divisors
from .double_array import (
    DoubleArray,
    LeeArray,
    PartialSumGrid,
    build_grid,
    _box_diameter,
)
from .errors import InsufficientWindowError, InvalidBoundError, TableRangeError

PROBE_KINDS = (
    "first_partial",
    "second_partial",
    "double",
    "first_iterated",
    "second_iterated",
)

NEEDED_CRITERION = "needed_criterion"
VERIFIED_CRITERION = "lee_verified_criterion"

# A settle index in the last quarter of a trace counts as drifting into
# the window edge, so it never supports a uniformity claim.
_UNIFORM_EDGE_FRACTION = 0.75

_SLAB_ROWS = 256


@dataclass
class LimitProbe:
    """One of the five limit kinds measured on the window.

    verdict is "exists" (trace tail diameter <= tolerance, value and
    residual filled in), "fails_to_settle" (tail diameter beyond 10x
    tolerance), or "inconclusive".
    """

    kind: str
    trace: np.ndarray
    verdict: str
    value: complex | None = None
    residual: float | None = None
    detail: dict = field(default_factory=dict)


@dataclass
class UniformityScan:
    """Sup of a Cauchy-block quantity per outer index, with a verdict.

    verdict "decays_below" means the sup trace is below the threshold
    from at_index onward; "stalls_above" means it never stays below, and
    floor records the smallest sup seen.
    """

    quantity: str
    outer_label: str
    outer_values: np.ndarray
    sup_trace: np.ndarray
    threshold: float
    verdict: str
    at_index: int | None
    floor: float | None
    window: dict


@dataclass
class TheoremCheck:
    """One interchange theorem checked hypothesis by hypothesis.

    asserted is True only when every hypothesis holds on the window;
    consistent compares the predicted equality against the measured
    probe values when both sides settled, else stays None.
    """

    theorem: str
    hypotheses: list
    conclusion: str
    asserted: bool
    observed: dict
    consistent: bool | None


@dataclass
class _SettleProfile:
    """Per-trace settling data for one sweep direction of the grid."""

    settled: np.ndarray
    settle_index: np.ndarray
    half_diameter: np.ndarray
    estimate: np.ndarray
    length: int


def _settle_profile(traces: np.ndarray, tolerance: float) -> _SettleProfile:
    """Settling analysis of many traces at once (rows of `traces`).

    The diameter of the suffix starting at index i is non-increasing in
    i, so the set of admissible start points is a suffix and the settle
    index is length minus the count of admissible starts.
    """
    k, length = traces.shape
    settled = np.zeros(k, dtype=bool)
    settle_index = np.zeros(k, dtype=np.int64)
    half_diam = np.zeros(k, dtype=np.float64)
    estimate = np.array(traces[:, -1], dtype=np.complex128)
    half = length // 2
    for lo in range(0, k, _SLAB_ROWS):
        hi = min(lo + _SLAB_ROWS, k)
        slab = np.ascontiguousarray(traces[lo:hi])
        re = slab.real[:, ::-1]
        im = slab.imag[:, ::-1]
        re_span = np.maximum.accumulate(re, axis=1) - np.minimum.accumulate(re, axis=1)
        im_span = np.maximum.accumulate(im, axis=1) - np.minimum.accumulate(im, axis=1)
        diam = np.hypot(re_span, im_span)[:, ::-1]
        ok = diam <= tolerance
        settled[lo:hi] = ok[:, half]
        settle_index[lo:hi] = length - np.count_nonzero(ok, axis=1)
        half_diam[lo:hi] = diam[:, half]
    return _SettleProfile(settled, settle_index, half_diam, estimate, length)


def _profile_detail(profile: _SettleProfile) -> dict:
    return {
        "settled": int(np.count_nonzero(profile.settled)),
        "total": int(len(profile.settled)),
        "max_settle_index": int(profile.settle_index.max()),
        "trace_length": int(profile.length),
    }


def _probe_from_trace(kind, trace, tolerance, detail=None) -> LimitProbe:
    trace = np.asarray(trace, dtype=np.complex128)
    tail = trace[len(trace) // 2 :]
    diam = _box_diameter(tail)
    detail = dict(detail or {})
    detail["tail_diameter"] = diam
    if diam <= tolerance:
        return LimitProbe(kind, trace, "exists", complex(trace[-1]), diam, detail)
    if diam > 10.0 * tolerance:
        return LimitProbe(kind, trace, "fails_to_settle", None, diam, detail)
    return LimitProbe(kind, trace, "inconclusive", None, diam, detail)


def _iterated_probe(kind, profile, tolerance) -> LimitProbe:
    est = profile.estimate[profile.settled]
    detail = _profile_detail(profile)
    if len(est) < 2:
        return LimitProbe(
            kind,
            est,
            "inconclusive",
            detail={**detail, "reason": "fewer than two settled partial limits"},
        )
    return _probe_from_trace(kind, est, tolerance, detail)


def _double_probe(grid: PartialSumGrid, tolerance: float) -> LimitProbe:
    m_max, n_max = grid.m_max, grid.n_max
    steps = min(m_max, n_max)
    ks = np.arange(1, steps + 1)
    ms = -((-ks * m_max) // steps)
    ns = -((-ks * n_max) // steps)
    trace = grid.sums[ms, ns]

    m_half = max(1, m_max // 2)
    n_half = max(1, n_max // 2)
    corners = [
        (m_max, n_max),
        (m_max, n_half),
        (m_half, n_max),
        (m_half, n_half),
    ]
    corner_vals = np.array([grid.sums[m, n] for m, n in corners])
    spread = _box_diameter(corner_vals)
    tail_diam = _box_diameter(trace[len(trace) // 2 :])
    detail = {
        "corner_samples": [
            {"m": m, "n": n, "re": float(v.real), "im": float(v.imag)}
            for (m, n), v in zip(corners, corner_vals)
        ],
        "corner_spread": spread,
        "tail_diameter": tail_diam,
    }
    worst = max(spread, tail_diam)
    if worst <= tolerance:
        return LimitProbe("double", trace, "exists", complex(trace[-1]), worst, detail)
    if worst > 10.0 * tolerance:
        return LimitProbe("double", trace, "fails_to_settle", None, worst, detail)
    return LimitProbe("double", trace, "inconclusive", None, worst, detail)


def _analyze(grid: PartialSumGrid, tolerance: float):
    if grid.m_max < 16 or grid.n_max < 16:
        raise InsufficientWindowError(
            f"probe window {grid.m_max} x {grid.n_max} is below the 16 x 16 minimum"
        )
    body = grid.sums[1:, 1:]
    col_profile = _settle_profile(body.T, tolerance)
    row_profile = _settle_profile(body, tolerance)
    probes = {
        "first_partial": _probe_from_trace(
            "first_partial", body[:, -1], tolerance, _profile_detail(col_profile)
        ),
        "second_partial": _probe_from_trace(
            "second_partial", body[-1, :], tolerance, _profile_detail(row_profile)
        ),
        "first_iterated": _iterated_probe("first_iterated", col_profile, tolerance),
        "second_iterated": _iterated_probe("second_iterated", row_profile, tolerance),
        "double": _double_probe(grid, tolerance),
    }
    return probes, row_profile, col_profile


def probe_limits(grid: PartialSumGrid, tolerance: float = 1e-6) -> dict:
    """All five limit probes on the grid window, keyed by kind.

    Iterated probes are built from the settled partial limits only; the
    count of settled indices rides along in the probe detail so a thin
    settled subset is visible in the report.
    """
    probes, _, _ = _analyze(grid, tolerance)
    return probes


def _scan_verdict(quantity, outer_label, outer_values, sups, threshold, window):
    sups = np.asarray(sups, dtype=np.float64)
    outer_values = np.asarray(outer_values, dtype=np.int64)
    below = sups < threshold
    if below[-1]:
        above = np.flatnonzero(~below)
        at = int(above[-1]) + 1 if len(above) else 0
        return UniformityScan(
            quantity, outer_label, outer_values, sups, threshold,
            "decays_below", at, None, window,
        )
    return UniformityScan(
        quantity, outer_label, outer_values, sups, threshold,
        "stalls_above", None, float(sups.min()), window,
    )


def _check_outer_list(values, name):
    if not values:
        raise InvalidBoundError(f"{name} must not be empty")
    arr = [int(v) for v in values]
    if any(v < 1 for v in arr):
        raise InvalidBoundError(f"{name} entries must be >= 1, got {arr}")
    if sorted(arr) != arr:
        raise InvalidBoundError(f"{name} must be sorted ascending, got {arr}")
    return arr


def _needed_sup_lee(array: LeeArray, m_start: int, block: int, n_reach: int) -> float:
    m_col, _, n_col, vals = array.pairs(m_start, m_start + block, n_reach)
    if len(n_col) == 0:
        return 0.0
    order = np.argsort(n_col, kind="stable")
    m_s = m_col[order]
    n_s = n_col[order]
    v_s = vals[order]
    best = 0.0
    for q in range(block + 1):
        take = m_s <= m_start + q
        if not np.any(take):
            continue
        nq = n_s[take]
        csum = np.cumsum(v_s[take])
        # Partial sums are only observable at a completed n, so evaluate
        # the cumulative sum at the last event of each tied-n group.
        group_end = np.flatnonzero(np.diff(nq) > 0)
        idx = np.concatenate([group_end, [len(nq) - 1]])
        best = max(best, float(np.max(np.abs(csum[idx]))))
    return best


def _needed_sup_dense(array: DoubleArray, m_start: int, block: int, n_reach: int) -> float:
    rows = np.zeros((block + 1, n_reach + 1), dtype=np.complex128)
    for r in range(block + 1):
        m = m_start + r
        row = array.row_values(m, n_reach)
        row[:m] = 0.0
        rows[r] = row
    np.cumsum(rows, axis=1, out=rows)
    np.cumsum(rows, axis=0, out=rows)
    return float(np.max(np.abs(rows)))


def needed_uniformity_scan(
    array: DoubleArray,
    m_list,
    block: int = 8,
    n_reach: int | None = None,
    threshold: float = 1e-2,
) -> UniformityScan:
    """Block-tail criterion: the uniformity the interchange really needs.

    For each M in m_list, the supremum over block heights q <= block and
    over N <= n_reach of |sum_{m=M}^{M+q} sum_{n=m}^{N} a(m, n)|.  Rows
    enter the inner sum at n = m, matching the triangular tail whose
    uniform smallness in M is the missing step this scan makes visible.
    """
    m_list = _check_outer_list(m_list, "m_list")
    if block < 0:
        raise InvalidBoundError(f"block length must be >= 0, got {block}")
    if n_reach is None:
        n_reach = min(array.table.n_max, 10**6) if isinstance(array, LeeArray) else 4096
    if isinstance(array, LeeArray):
        if n_reach > array.table.n_max:
            raise TableRangeError(
                f"scan reach {n_reach} beyond sieve bound {array.table.n_max}"
            )
        sups = ordered_map(
            lambda m: _needed_sup_lee(array, m, block, n_reach), m_list
        )
    else:
        if (block + 1) * (n_reach + 1) > (1 << 26):
            raise InvalidBoundError(
                f"dense scan of {block + 1} x {n_reach} terms is too large"
            )
        sups = ordered_map(
            lambda m: _needed_sup_dense(array, m, block, n_reach), m_list
        )
    window = {"block": block, "n_reach": int(n_reach)}
    return _scan_verdict(NEEDED_CRITERION, "M", m_list, sups, threshold, window)


def _verified_sup_lee(array: LeeArray, n_start: int, block: int, m_reach: int) -> float:
    table = array.table
    per_row: dict[int, list] = {}
    for n in range(n_start, n_start + block + 1):
        scale = cmath.exp(-array.s * math.log(n))
        for d in divisors(table, n):
            if d > m_reach:
                continue
            j = n // d
            sign = 1.0 if j % 2 == 1 else -1.0
            val = float(table.liouville[d]) * sign * scale
            per_row.setdefault(d, []).append(val)
    best = 0.0
    for vals in per_row.values():
        csum = np.cumsum(np.asarray(vals))
        best = max(best, float(np.max(np.abs(csum))))
    return best


def _verified_sup_dense(array: DoubleArray, n_start: int, block: int, m_reach: int) -> float:
    ns = np.arange(n_start, n_start + block + 1, dtype=np.int64)
    if hasattr(array, "block_matrix"):
        terms = array.block_matrix(np.arange(1, m_reach + 1), ns)
    else:
        terms = np.array(
            [[array.term(m, int(n)) for n in ns] for m in range(1, m_reach + 1)]
        )
    csum = np.cumsum(terms, axis=1)
    return float(np.max(np.abs(csum)))


def lee_verified_scan(
    array: DoubleArray,
    n_list,
    block: int = 8,
    m_reach: int = 4096,
    threshold: float = 1e-2,
) -> UniformityScan:
    """Row-tail criterion: the uniformity that was actually checked.

    For each N in n_list, the supremum over rows m <= m_reach and block
    widths q <= block of |sum_{n=N}^{N+q} a(m, n)|.  For the divisor-
    supported array this decays like the alternating-series remainder
    N**(-re(s)) regardless of where s sits, which is why passing this
    scan certifies nothing about the block-tail criterion above.
    """
    n_list = _check_outer_list(n_list, "n_list")
    if block < 0:
        raise InvalidBoundError(f"block length must be >= 0, got {block}")
    if m_reach < 1:
        raise InvalidBoundError(f"m_reach must be >= 1, got {m_reach}")
    if isinstance(array, LeeArray):
        if n_list[-1] + block > array.table.n_max:
            raise TableRangeError(
                f"scan block past {n_list[-1] + block} exceeds sieve bound "
                f"{array.table.n_max}"
            )
        sups = ordered_map(
            lambda n: _verified_sup_lee(array, n, block, m_reach), n_list
        )
    else:
        sups = ordered_map(
            lambda n: _verified_sup_dense(array, n, block, m_reach), n_list
        )
    window = {"block": block, "m_reach": int(m_reach)}
    return _scan_verdict(VERIFIED_CRITERION, "N", n_list, sups, threshold, window)


def _uniform_status(profile: _SettleProfile):
    """Empirical exists-uniformly: settled everywhere, away from the edge."""
    evidence = _profile_detail(profile)
    if bool(np.all(profile.settled)):
        cap = int(_UNIFORM_EDGE_FRACTION * profile.length)
        if evidence["max_settle_index"] <= cap:
            return "holds", evidence
        evidence["reason"] = "settle indices drift into the window edge"
        return "inconclusive", evidence
    evidence["reason"] = "unsettled indices remain on the window"
    return "fails", evidence


def _pointwise_status(profile: _SettleProfile, tolerance: float):
    evidence = _profile_detail(profile)
    if bool(np.all(profile.settled)):
        return "holds", evidence
    worst = float(profile.half_diameter[~profile.settled].max())
    evidence["worst_unsettled_diameter"] = worst
    if worst > 10.0 * tolerance:
        return "fails", evidence
    return "inconclusive", evidence


def _probe_status(probe: LimitProbe):
    status = {
        "exists": "holds",
        "fails_to_settle": "fails",
        "inconclusive": "inconclusive",
    }[probe.verdict]
    evidence = {"verdict": probe.verdict, "residual": probe.residual}
    if probe.value is not None:
        evidence["value"] = probe.value
    return status, evidence


def _hyp(name, status_evidence):
    status, evidence = status_evidence
    return {"name": name, "status": status, "evidence": evidence}


def _gap(a: LimitProbe, b: LimitProbe) -> float | None:
    if a.value is None or b.value is None:
        return None
    return abs(a.value - b.value)


def _consistency(asserted: bool, gaps, tolerance: float) -> bool | None:
    gaps = [g for g in gaps if g is not None]
    if not asserted or not gaps:
        return None
    return max(gaps) <= 10.0 * tolerance


def classify(grid: PartialSumGrid, tolerance: float = 1e-6) -> list:
    """Check the interchange theorems hypothesis by hypothesis.

    Four checks, named by what they claim:

    * uniform_rows_give_double: row limits settling uniformly plus a
      settled second iterated limit would force the double limit.
    * uniform_rows_transfer_double_to_iterated: the converse transfer
      from a settled double limit to the second iterated limit.
    * two_sided_uniform_limits_equate_iterated: both partial-limit
      families settling uniformly lets the two iterated limits agree.
    * moore_symmetric_limits: pointwise row limits plus uniformly
      settling column limits force all three limits to exist and agree.

    A conclusion is asserted only when every hypothesis holds on the
    window.  Everything is window-relative: a hypothesis can hold here
    and fail in the large, which is precisely the failure mode these
    reports are built to expose, so the window always travels with the
    verdicts.  Iterated probes built from a thin settled subset carry
    their subset size in the probe detail for the same reason.
    """
    probes, row_profile, col_profile = _analyze(grid, tolerance)
    return _classify_from(probes, row_profile, col_profile, tolerance)


def _classify_from(probes, row_profile, col_profile, tolerance):
    rows_uniform = _uniform_status(row_profile)
    cols_uniform = _uniform_status(col_profile)
    rows_pointwise = _pointwise_status(row_profile, tolerance)
    second_iter = probes["second_iterated"]
    first_iter = probes["first_iterated"]
    double = probes["double"]

    checks = []

    hyps = [
        _hyp("row_limits_settle_uniformly", rows_uniform),
        _hyp("second_iterated_limit_settles", _probe_status(second_iter)),
    ]
    asserted = all(h["status"] == "holds" for h in hyps)
    checks.append(
        TheoremCheck(
            theorem="uniform_rows_give_double",
            hypotheses=hyps,
            conclusion="double limit exists and equals the second iterated limit",
            asserted=asserted,
            observed={"double": double.value, "second_iterated": second_iter.value},
            consistent=_consistency(asserted, [_gap(double, second_iter)], tolerance),
        )
    )

    hyps = [
        _hyp("row_limits_settle_uniformly", rows_uniform),
        _hyp("double_limit_settles", _probe_status(double)),
    ]
    asserted = all(h["status"] == "holds" for h in hyps)
    checks.append(
        TheoremCheck(
            theorem="uniform_rows_transfer_double_to_iterated",
            hypotheses=hyps,
            conclusion="second iterated limit exists and equals the double limit",
            asserted=asserted,
            observed={"double": double.value, "second_iterated": second_iter.value},
            consistent=_consistency(asserted, [_gap(double, second_iter)], tolerance),
        )
    )

    hyps = [
        _hyp("second_iterated_limit_settles", _probe_status(second_iter)),
        _hyp("row_limits_settle_uniformly", rows_uniform),
        _hyp("column_limits_settle_uniformly", cols_uniform),
    ]
    asserted = all(h["status"] == "holds" for h in hyps)
    checks.append(
        TheoremCheck(
            theorem="two_sided_uniform_limits_equate_iterated",
            hypotheses=hyps,
            conclusion="first iterated limit exists and equals the second",
            asserted=asserted,
            observed={
                "first_iterated": first_iter.value,
                "second_iterated": second_iter.value,
            },
            consistent=_consistency(
                asserted, [_gap(first_iter, second_iter)], tolerance
            ),
        )
    )

    hyps = [
        _hyp("row_limits_settle_pointwise", rows_pointwise),
        _hyp("column_limits_settle_uniformly", cols_uniform),
    ]
    asserted = all(h["status"] == "holds" for h in hyps)
    checks.append(
        TheoremCheck(
            theorem="moore_symmetric_limits",
            hypotheses=hyps,
            conclusion="double and both iterated limits exist and coincide",
            asserted=asserted,
            observed={
                "double": double.value,
                "first_iterated": first_iter.value,
                "second_iterated": second_iter.value,
            },
            consistent=_consistency(
                asserted,
                [
                    _gap(double, first_iter),
                    _gap(double, second_iter),
                    _gap(first_iter, second_iter),
                ],
                tolerance,
            ),
        )
    )
    return checks


def _json_complex(v):
    if v is None:
        return None
    return {"re": float(v.real), "im": float(v.imag)}


def _json_detail(detail):
    out = {}
    for key, val in detail.items():
        if isinstance(val, (np.floating, float)):
            out[key] = float(val)
        elif isinstance(val, (np.integer, int)):
            out[key] = int(val)
        else:
            out[key] = val
    return out


def _probe_json(probe: LimitProbe) -> dict:
    return {
        "kind": probe.kind,
        "verdict": probe.verdict,
        "value": _json_complex(probe.value),
        "residual": None if probe.residual is None else float(probe.residual),
        "trace_length": int(len(probe.trace)),
        "detail": _json_detail(probe.detail),
    }


def _scan_json(scan: UniformityScan) -> dict:
    return {
        "quantity": scan.quantity,
        "outer_label": scan.outer_label,
        "outer_values": [int(v) for v in scan.outer_values],
        "sup_trace": [float(v) for v in scan.sup_trace],
        "threshold": float(scan.threshold),
        "verdict": scan.verdict,
        "at_index": scan.at_index,
        "floor": scan.floor,
        "window": scan.window,
    }


def _check_json(check: TheoremCheck) -> dict:
    return {
        "theorem": check.theorem,
        "hypotheses": [
            {
                "name": h["name"],
                "status": h["status"],
                "evidence": _json_detail(
                    {
                        k: (_json_complex(v) if isinstance(v, complex) else v)
                        for k, v in h["evidence"].items()
                    }
                ),
            }
            for h in check.hypotheses
        ],
        "conclusion": check.conclusion,
        "asserted": check.asserted,
        "observed": {k: _json_complex(v) for k, v in check.observed.items()},
        "consistent": check.consistent,
    }


def _default_outer(limit: int, block: int):
    values = [v for v in (16, 64, 256, 1024, 4096, 16384, 65536, 262144, 10**6)
              if v + block <= limit]
    return values or [max(1, limit - block)]


def diagnostics_report(
    array: DoubleArray,
    m_max: int,
    n_max: int,
    tolerance: float = 1e-6,
    block: int = 8,
    scan_reach: int | None = None,
    threshold: float = 1e-2,
) -> dict:
    """Probes, both scans, and the classification as one JSON-ready dict."""
    grid = build_grid(array, m_max, n_max)
    probes, row_profile, col_profile = _analyze(grid, tolerance)
    checks = _classify_from(probes, row_profile, col_profile, tolerance)

    if scan_reach is None:
        if isinstance(array, LeeArray):
            scan_reach = min(array.table.n_max, 10**6)
        else:
            scan_reach = 4096
    outer = _default_outer(scan_reach, block)
    needed_outer = outer
    if isinstance(array, LeeArray):
        # Rows of the divisor-supported array only carry reach // m terms, so
        # the block-tail sup at large m measures truncation, not the tail.
        # Keep at least 128 terms per row or the sup decays vacuously.
        trimmed = [m for m in outer if scan_reach // m >= 128]
        if trimmed:
            needed_outer = trimmed
    needed = needed_uniformity_scan(array, needed_outer, block, scan_reach, threshold)
    verified = lee_verified_scan(
        array, outer, block, min(m_max, 4096), threshold
    )

    s = getattr(array, "s", None)
    return {
        "schema": 1,
        "array": array.label,
        "s": _json_complex(s),
        "window": {"m_max": int(m_max), "n_max": int(n_max), "tolerance": float(tolerance)},
        "probes": [_probe_json(probes[kind]) for kind in PROBE_KINDS],
        "scans": [_scan_json(needed), _scan_json(verified)],
        "classification": [_check_json(c) for c in checks],
    }
