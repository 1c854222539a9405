"""Empirical likelihood for a univariate mean at zero, with chi-square calibration.

Given data x_1..x_n, the empirical likelihood ratio at mean zero is

    R_n = max { prod n*w_i : w_i >= 0, sum w_i = 1, sum w_i x_i = 0 }.

When zero lies inside the open hull (min x, max x) the maximizer has the
dual form w_i = 1 / (n * (1 + t*x_i)) where the multiplier t is the unique
root of g(t) = sum x_i / (1 + t*x_i) on (-1/max x, -1/min x); the test
statistic is -2 log R_n = 2 * sum log(1 + t*x_i), compared against a
chi-square with one degree of freedom. When zero is outside the hull the
constraint set is empty, R_n = 0 and the statistic is +infinity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaincc

from .statistics import weighted_degree_difference
from .validation import as_layers, check_probability

MAX_ITERATIONS = 200


class ELStatus(enum.Enum):
    SOLVED = "solved"
    HULL_VIOLATION = "hull_violation"
    DEGENERATE = "degenerate"


class ELSolverError(RuntimeError):
    """The dual solver failed to converge within the iteration cap."""


@dataclass(frozen=True)
class ELResult:
    """Outcome of one empirical-likelihood evaluation.

    statistic is -2 log R_n (+inf on hull violation); multiplier is the
    dual root t (nan on hull violation, 0 when all data are zero); weights
    are the maximizing w_i (None on hull violation).
    """

    statistic: float
    multiplier: float
    weights: np.ndarray | None
    status: ELStatus
    p_value: float
    df: int = 1


@dataclass(frozen=True)
class TestReport:
    """Decision record for one multilayer test run."""

    el: ELResult
    alpha: float
    critical_value: float
    reject: bool
    layer_order: tuple[int, ...]


def _dual_g(x: np.ndarray, t: float) -> float:
    # +/-inf signals that t has drifted onto the wrong side of a pole;
    # the sign steers the bracket update just like a finite residual.
    den = 1.0 + t * x
    m = den.min()
    if m <= 0.0:
        return math.inf if x[int(np.argmin(den))] > 0 else -math.inf
    return float(np.sum(x / den))


def solve_dual(x) -> tuple[float, ELStatus]:
    """Solve g(t) = sum x_i/(1 + t*x_i) = 0 for the dual multiplier.

    Returns (t, status). Safeguarded Newton: every iterate stays inside
    the bracket (-1/max x + delta, -1/min x - delta) and falls back to
    bisection when a Newton step leaves it, so termination is guaranteed
    on this smooth, strictly decreasing residual.
    """
    x = np.asarray(x, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("empty input")
    if not np.isfinite(x).all():
        raise ValueError("input must be finite")
    if not x.any():
        return 0.0, ELStatus.DEGENERATE
    xmin, xmax = float(x.min()), float(x.max())
    if not (xmin < 0.0 < xmax):
        return math.nan, ELStatus.HULL_VIOLATION

    lo_edge = -1.0 / xmax
    hi_edge = -1.0 / xmin
    delta = 1e-12 * (hi_edge - lo_edge)
    lo = lo_edge + delta
    hi = hi_edge - delta
    tol = 1e-10 * x.size * float(np.abs(x).max())

    t = 0.0
    for _ in range(MAX_ITERATIONS):
        val = _dual_g(x, t)
        if abs(val) <= tol:
            return t, ELStatus.SOLVED
        if val > 0.0:
            lo = t
        else:
            hi = t
        den = 1.0 + t * x
        slope = -float(np.sum((x / den) ** 2)) if np.isfinite(val) else 0.0
        step = t - val / slope if slope < 0.0 and np.isfinite(val) else math.nan
        t = step if lo < step < hi else 0.5 * (lo + hi)
    raise ELSolverError(f"dual solver did not reach tolerance {tol} in {MAX_ITERATIONS} iterations")


def el_statistic(x) -> ELResult:
    """Evaluate -2 log R_n for the mean-zero constraint, with its p-value."""
    x = np.asarray(x, dtype=float).ravel()
    t, status = solve_dual(x)
    n = x.size
    if status is ELStatus.DEGENERATE:
        return ELResult(
            statistic=0.0,
            multiplier=0.0,
            weights=np.full(n, 1.0 / n),
            status=status,
            p_value=1.0,
        )
    if status is ELStatus.HULL_VIOLATION:
        return ELResult(
            statistic=math.inf,
            multiplier=math.nan,
            weights=None,
            status=status,
            p_value=0.0,
        )
    tx = t * x
    stat = max(2.0 * float(np.sum(np.log1p(tx))), 0.0)
    weights = 1.0 / (n * (1.0 + tx))
    return ELResult(
        statistic=stat,
        multiplier=t,
        weights=weights,
        status=status,
        p_value=chisq_sf(stat, 1),
    )


def chisq_sf(x: float, q: int = 1) -> float:
    """Chi-square survival function P(X > x) with q degrees of freedom.

    q=1 reduces to erfc(sqrt(x/2)); general q uses the regularized upper
    incomplete gamma Q(q/2, x/2).
    """
    x = float(x)
    q = int(q)
    if q < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {q}")
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    if q == 1:
        return math.erfc(math.sqrt(x / 2.0))
    return float(gammaincc(q / 2.0, x / 2.0))


def chisq_quantile(p: float, q: int = 1) -> float:
    """Inverse of the chi-square CDF, by bracketed root-finding on chisq_sf."""
    p = check_probability(p, "p")
    q = int(q)
    if q < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {q}")
    hi = float(max(q, 1))
    while 1.0 - chisq_sf(hi, q) < p:
        hi *= 2.0
    return float(brentq(lambda x: (1.0 - chisq_sf(x, q)) - p, 0.0, hi, xtol=1e-12))


def el_test(net, reference_layer: int = 0, alpha: float = 0.05) -> TestReport:
    """Test whether all layers share one degree-correction direction.

    Composes the weighted degree-difference data with the EL statistic and
    thresholds at the upper-alpha chi-square(1) quantile. `net` is a
    MultilayerNetwork or a sequence of adjacency matrices; to test a layer
    subset or a specific ordering, select/permute the layers first and pass
    reference_layer=0.
    """
    alpha = check_probability(alpha, "alpha")
    mats = as_layers(net, min_layers=2)
    dd = weighted_degree_difference(mats, reference_layer)
    result = el_statistic(dd.values)
    critical = chisq_quantile(1.0 - alpha, result.df)
    order = (dd.reference_layer, *(l for l in range(len(mats)) if l != dd.reference_layer))
    return TestReport(
        el=result,
        alpha=alpha,
        critical_value=critical,
        reject=bool(result.statistic > critical),
        layer_order=order,
    )
