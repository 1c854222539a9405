"""Monte Carlo calibration: rejection rates, null samples, permutation studies.

Replication r of scenario s under layer ordering o draws its layers from
the keyed streams (master_seed, s, r, o, layer); results are placed by
replication index, so estimates are identical for any worker count or
chunking. Draws that produce a layer with no two-paths cannot be scored;
they are skipped and reported, and rates use the completed count as the
denominator.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .empirical_likelihood import ELStatus, chisq_quantile, chisq_sf, el_statistic
from .graph_model import ScenarioSpec, sample_multilayer, scenario_difference
from .seeding import DEFAULT_SEED
from .statistics import (
    TwoPathsZeroError,
    cyclic_layer_orders,
    format_order,
    weighted_degree_difference,
)

KS_REFERENCES = ("chisq1", "normal_fit")


@dataclass(frozen=True)
class RejectionEstimate:
    """Monte Carlo rejection-rate estimate for one scenario cell."""

    scenario: ScenarioSpec
    label: str
    scenario_id: int
    replications: int  # completed (requested minus skipped)
    alpha: float
    rejections: int
    rate: float
    master_seed: int
    difference: float
    hull_violations: int = 0
    skipped: int = 0
    ordering: tuple[int, ...] | None = None  # 0-based layer order used


@dataclass(frozen=True)
class NullSample:
    """Statistics sampled under one scenario (finite values, replication order)."""

    scenario: ScenarioSpec
    label: str
    scenario_id: int
    statistics: tuple[float, ...]
    hull_violations: int
    skipped: int
    replications: int  # requested
    master_seed: int


def describe_scenario(spec: ScenarioSpec) -> str:
    """Compact one-line label for a scenario cell."""
    fam = spec.layers[0].family
    taus = ",".join(format(l.tau, "g") for l in spec.layers)
    params = ",".join(format(l.param, "g") for l in spec.layers)
    key = "lambda" if spec.layers[0].lam is not None else "beta"
    parts = [fam, f"n={spec.n}", f"tau=({taus})", f"{key}=({params})"]
    if fam == "two_block":
        parts.insert(1, f"r={spec.r:g}")
    if spec.rank != "rank1":
        parts.append(f"{spec.rank}(a={spec.rank2_a:g},b={spec.rank2_b:g})")
    return " ".join(parts)


def _one_statistic(
    spec: ScenarioSpec,
    reference_layer: int,
    ordering: tuple[int, ...] | None,
    keys: tuple[int, ...],
) -> float:
    """One replication: NaN = skipped (no two-paths), +inf = hull violation."""
    net = sample_multilayer(spec, keys)
    if ordering is not None:
        net = net.select_layers(ordering)
    try:
        data = weighted_degree_difference(net.layers, reference_layer)
    except TwoPathsZeroError:
        return math.nan
    res = el_statistic(data.values)
    if res.status is ELStatus.HULL_VIOLATION:
        return math.inf
    return res.statistic


def _stat_chunk(args) -> tuple[int, list[float]]:
    spec, reference_layer, ordering, master_seed, scenario_id, ordering_index, start, stop = args
    vals = [
        _one_statistic(spec, reference_layer, ordering,
                       (master_seed, scenario_id, rep, ordering_index))
        for rep in range(start, stop)
    ]
    return start, vals


def _compute_statistics(
    spec: ScenarioSpec,
    reference_layer: int,
    ordering: tuple[int, ...] | None,
    replications: int,
    master_seed: int,
    scenario_id: int,
    ordering_index: int,
    workers: int = 1,
    progress=None,
) -> np.ndarray:
    if replications < 1:
        raise ValueError(f"replications must be >= 1, got {replications}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    out = np.empty(replications, dtype=float)
    if workers == 1:
        for rep in range(replications):
            out[rep] = _one_statistic(
                spec, reference_layer, ordering, (master_seed, scenario_id, rep, ordering_index)
            )
            if progress is not None:
                progress(rep + 1, replications)
        return out
    chunk = max(1, math.ceil(replications / (workers * 4)))
    jobs = [
        (spec, reference_layer, ordering, master_seed, scenario_id, ordering_index,
         start, min(start + chunk, replications))
        for start in range(0, replications, chunk)
    ]
    done = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for start, vals in pool.map(_stat_chunk, jobs):
            out[start:start + len(vals)] = vals
            done += len(vals)
            if progress is not None:
                progress(done, replications)
    return out


def estimate_rejection_rate(
    spec: ScenarioSpec,
    reference_layer: int = 0,
    replications: int = 1000,
    alpha: float = 0.05,
    master_seed: int = DEFAULT_SEED,
    scenario_id: int = 0,
    ordering: tuple[int, ...] | None = None,
    ordering_index: int = 0,
    workers: int = 1,
    progress=None,
    scenario_label: str | None = None,
) -> RejectionEstimate:
    """Estimate the rejection rate of the level-alpha test for one scenario."""
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    stats = _compute_statistics(
        spec, reference_layer, ordering, replications, master_seed,
        scenario_id, ordering_index, workers, progress,
    )
    skipped = int(np.isnan(stats).sum())
    completed = replications - skipped
    if completed == 0:
        raise ValueError(
            "every replication was skipped (layers too sparse for the statistic)"
        )
    # alpha = 1 means "always reject": the critical value degenerates to 0
    # and every positive statistic (all of them, almost surely) exceeds it.
    critical = chisq_quantile(1.0 - alpha, 1) if alpha < 1.0 else 0.0
    with np.errstate(invalid="ignore"):
        rejections = int(np.count_nonzero(stats > critical))
    hull = int(np.isinf(stats).sum())
    effective = spec if ordering is None else spec.permuted(ordering)
    return RejectionEstimate(
        scenario=spec,
        label=scenario_label if scenario_label is not None else describe_scenario(spec),
        scenario_id=scenario_id,
        replications=completed,
        alpha=alpha,
        rejections=rejections,
        rate=rejections / completed,
        master_seed=master_seed,
        difference=scenario_difference(effective),
        hull_violations=hull,
        skipped=skipped,
        ordering=tuple(ordering) if ordering is not None else None,
    )


def sample_null_statistics(
    spec: ScenarioSpec,
    reference_layer: int = 0,
    replications: int = 10000,
    master_seed: int = DEFAULT_SEED,
    scenario_id: int = 0,
    ordering: tuple[int, ...] | None = None,
    ordering_index: int = 0,
    workers: int = 1,
    progress=None,
    scenario_label: str | None = None,
) -> NullSample:
    """Draw the statistic repeatedly under a scenario and keep finite values."""
    stats = _compute_statistics(
        spec, reference_layer, ordering, replications, master_seed,
        scenario_id, ordering_index, workers, progress,
    )
    skipped = int(np.isnan(stats).sum())
    hull = int(np.isinf(stats).sum())
    finite = stats[np.isfinite(stats)]
    if finite.size == 0:
        warnings.warn("no finite statistics were produced", UserWarning, stacklevel=2)
    return NullSample(
        scenario=spec,
        label=scenario_label if scenario_label is not None else describe_scenario(spec),
        scenario_id=scenario_id,
        statistics=tuple(float(v) for v in finite),
        hull_violations=hull,
        skipped=skipped,
        replications=replications,
        master_seed=master_seed,
    )


def ks_distance(samples, reference: str = "chisq1") -> float:
    """Kolmogorov-Smirnov sup distance between a sample and a reference CDF.

    reference "chisq1" compares against the chi-squared law with one degree
    of freedom; "normal_fit" first fits a normal by sample mean and
    standard deviation (ddof=1).
    """
    x = np.sort(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise ValueError("empty sample")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample contains non-finite values")
    if reference == "chisq1":
        cdf = 1.0 - np.array([chisq_sf(v, 1) for v in np.maximum(x, 0.0)])
    elif reference == "normal_fit":
        m = float(x.mean())
        s = float(x.std(ddof=1)) if x.size > 1 else 0.0
        if s == 0.0:
            raise ValueError("degenerate sample: zero variance")
        z = (x - m) / s
        cdf = 0.5 * np.array([math.erfc(-v / math.sqrt(2.0)) for v in z])
    else:
        raise ValueError(f"reference must be one of {KS_REFERENCES}, got {reference!r}")
    n = x.size
    grid = np.arange(n, dtype=float)
    upper = np.max((grid + 1.0) / n - cdf)
    lower = np.max(cdf - grid / n)
    return float(max(upper, lower))


def run_permutation_study(
    spec: ScenarioSpec,
    replications: int = 1000,
    alpha: float = 0.05,
    master_seed: int = DEFAULT_SEED,
    scenario_id: int = 0,
    workers: int = 1,
    progress=None,
    labels=None,
) -> tuple[RejectionEstimate, ...]:
    """Rejection rates across all cyclic layer orders of one scenario.

    Order o reorders each sampled network so its first entry acts as the
    reference layer; replications are independent across orders.
    """
    estimates = []
    orders = cyclic_layer_orders(spec.L)
    for oi, order in enumerate(orders):
        est = estimate_rejection_rate(
            spec,
            reference_layer=0,
            replications=replications,
            alpha=alpha,
            master_seed=master_seed,
            scenario_id=scenario_id,
            ordering=order,
            ordering_index=oi,
            workers=workers,
            progress=(lambda done, total, _oi=oi, _k=len(orders):
                      progress(_oi * total + done, _k * total)) if progress else None,
            scenario_label=format_order(order, labels),
        )
        estimates.append(est)
    return tuple(estimates)


def run_scenario_grid(
    grid,
    replications: int | None = None,
    alpha: float | None = None,
    master_seed: int | None = None,
    reference_layer: int | None = None,
    workers: int = 1,
    progress=None,
) -> tuple[RejectionEstimate, ...]:
    """Estimate rejection rates for every cell of a scenario grid.

    `grid` is a ScenarioGrid or a sequence of GridCell; explicit arguments
    override the grid's stored defaults.
    """
    cells = getattr(grid, "cells", grid)
    cells = tuple(cells)
    if not cells:
        raise ValueError("scenario grid is empty")
    reps = replications if replications is not None else getattr(grid, "replications", None)
    reps = reps if reps is not None else 1000
    a = alpha if alpha is not None else getattr(grid, "alpha", None)
    a = a if a is not None else 0.05
    seed = master_seed if master_seed is not None else getattr(grid, "seed", DEFAULT_SEED)
    ref = reference_layer if reference_layer is not None else getattr(grid, "reference_layer", 0)
    out = []
    total = len(cells) * reps
    for idx, cell in enumerate(cells):
        out.append(
            estimate_rejection_rate(
                cell.spec,
                reference_layer=ref,
                replications=reps,
                alpha=a,
                master_seed=seed,
                scenario_id=cell.scenario_id,
                workers=workers,
                progress=(lambda done, tot, _i=idx: progress(_i * tot + done, total))
                if progress else None,
            )
        )
    _flag_nonmonotone(out)
    return tuple(out)


def _two_se(e1: RejectionEstimate, e2: RejectionEstimate) -> float:
    v1 = e1.rate * (1.0 - e1.rate) / e1.replications
    v2 = e2.rate * (1.0 - e2.rate) / e2.replications
    return 2.0 * math.sqrt(v1 + v2)


def _flag_nonmonotone(estimates) -> None:
    """Warn when estimated power decreases in n or in difference beyond 2 SE.

    Statistical expectation, not a hard contract: over a grid the power
    should be nondecreasing in the node count (same parameter row) and in
    the difference value (same n); violations get flagged, never raised.
    """
    def params_key(spec: ScenarioSpec):
        return (spec.rank, spec.r, tuple((l.family, l.tau, l.param) for l in spec.layers))

    by_row: dict = {}
    by_n: dict = {}
    for e in estimates:
        by_row.setdefault(params_key(e.scenario), []).append(e)
        by_n.setdefault(e.scenario.n, []).append(e)
    for axis, groups, keyf in (
        ("n", by_row, lambda e: e.scenario.n),
        ("difference", by_n, lambda e: e.difference),
    ):
        for group in groups.values():
            ordered = sorted(group, key=keyf)
            for prev, cur in zip(ordered, ordered[1:]):
                if keyf(cur) > keyf(prev) and cur.rate < prev.rate - _two_se(prev, cur):
                    warnings.warn(
                        f"power not monotone in {axis}: scenario {prev.scenario_id} "
                        f"rate {prev.rate:.3f} vs scenario {cur.scenario_id} "
                        f"rate {cur.rate:.3f}",
                        UserWarning,
                        stacklevel=3,
                    )
