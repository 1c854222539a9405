"""Descriptive network characteristics for single layers.

All quantities follow the conventions used throughout this package:
density and average degree are computed from the total degree (sum over
ordered pairs, i.e. twice the edge count); average clustering is the mean
of local clustering coefficients over all n nodes, with nodes of degree
below 2 contributing 0; isolated nodes count as singleton components; the
diameter is the largest finite shortest-path distance, i.e. the maximum
over components (0 for an edgeless graph).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .validation import as_adjacency


@dataclass(frozen=True)
class MetricsReport:
    n: int
    density: float
    total_degree: int
    average_degree: float
    average_clustering: float
    connected_components: int
    diameter: int
    degree_histogram: np.ndarray  # counts indexed by degree, 0..max


def metrics_report(adjacency) -> MetricsReport:
    """Compute the seven descriptive characteristics of one layer."""
    a = as_adjacency(adjacency)
    n = a.shape[0]
    if n == 0:
        raise ValueError("empty graph: n = 0")
    d = a.sum(axis=1, dtype=np.int64)
    total = int(d.sum())

    am = a.astype(np.int64)
    # edges among the neighbors of i = ((A @ A) * A) row-sum / 2
    tri = (am @ am * am).sum(axis=1) // 2
    with np.errstate(divide="ignore", invalid="ignore"):
        local = np.where(d >= 2, 2.0 * tri / (d * (d - 1.0)), 0.0)

    components, diameter = _traverse(a, d)

    return MetricsReport(
        n=n,
        density=total / (n * (n - 1)) if n > 1 else 0.0,
        total_degree=total,
        average_degree=total / n,
        average_clustering=float(local.mean()),
        connected_components=components,
        diameter=diameter,
        degree_histogram=np.bincount(d, minlength=int(d.max()) + 1),
    )


def degree_histogram_csv(adjacency) -> list[tuple[int, int]]:
    """(degree, count) rows covering every degree from 0 to the maximum."""
    report = metrics_report(adjacency)
    return list(enumerate(int(c) for c in report.degree_histogram))


def _traverse(a: np.ndarray, degrees: np.ndarray) -> tuple[int, int]:
    """Component count and max finite shortest-path length, by BFS from every node."""
    n = a.shape[0]
    neighbors = [np.flatnonzero(a[i]) for i in range(n)]
    seen = np.zeros(n, dtype=bool)
    components = 0
    for i in range(n):
        if seen[i]:
            continue
        components += 1
        queue = deque([i])
        seen[i] = True
        while queue:
            u = queue.popleft()
            for v in neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)

    diameter = 0
    dist = np.empty(n, dtype=np.int64)
    for i in range(n):
        if degrees[i] == 0:
            continue
        dist.fill(-1)
        dist[i] = 0
        queue = deque([i])
        while queue:
            u = queue.popleft()
            du = dist[u]
            for v in neighbors[u]:
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue.append(v)
        ecc = int(dist.max())
        if ecc > diameter:
            diameter = ecc
    return components, diameter
