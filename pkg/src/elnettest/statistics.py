"""Layer degree statistics and the weighted degree-difference data.

For layer l write d_{l,i} for the degree of node i, d_l = sum_{i,j} A_{l,ij}
(twice the edge count, summed over ordered pairs) and P_l for the number of
ordered two-paths, P_l = sum over distinct (i, j, k) of A_{l,ij} A_{l,jk} =
sum_j d_j (d_j - 1). The ratio d_{l,i}/sqrt(P_l) estimates the degree
weight of node i in layer l. Writing db_l = d_l/n for the average degree,
layer 1 as the reference, each node contributes

    X_i = sum_{l >= 2} [ (d_{1,i}/sqrt(P_1) - d_{l,i}/sqrt(P_l))**2
                         - db_1/P_1 - db_l/P_l ],

which has mean near zero when all layers share one degree-correction
direction; the empirical-likelihood test downstream tests exactly that.
Summed over nodes, the subtracted terms total d_1/P_1 + d_l/P_l per
contrasted layer, the constant that centers
sum_i (d_{1,i}/sqrt(P_1) - d_{l,i}/sqrt(P_l))**2 as a whole.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import as_layers, check_index


class TwoPathsZeroError(ValueError):
    """A layer has no two-paths (P_l = 0); X is undefined for it."""

    def __init__(self, layer: int):
        self.layer = layer
        super().__init__(
            f"layer {layer + 1} has no two-paths; it is too sparse for the statistic"
        )


@dataclass(frozen=True)
class LayerStats:
    degrees: np.ndarray
    total_degree: int
    two_paths: int


@dataclass(frozen=True)
class DifferenceData:
    """Weighted degree-difference values X_i and the reference layer used."""

    values: np.ndarray
    reference_layer: int

    @property
    def n(self) -> int:
        return self.values.size


def layer_stats(adjacency) -> LayerStats:
    """Degrees, total degree, and ordered two-path count of one layer."""
    a = as_layers([adjacency])[0]
    d = a.sum(axis=1, dtype=np.int64)
    return LayerStats(
        degrees=d,
        total_degree=int(d.sum()),
        two_paths=int((d * (d - 1)).sum()),
    )


def weighted_degree_difference(layers, reference_layer: int = 0) -> DifferenceData:
    """Per-node weighted degree-difference data X_i.

    `layers` is a MultilayerNetwork or a sequence of adjacency matrices;
    the chosen reference layer plays the role of layer 1 in the formula
    and the remaining layers keep their relative order (the sum over them
    is order-insensitive anyway). Raises TwoPathsZeroError when any layer
    has no two-paths.
    """
    mats = as_layers(layers, min_layers=2)
    ref = check_index(reference_layer, len(mats), "reference_layer")
    stats = [layer_stats(a) for a in mats]
    for l, s in enumerate(stats):
        if s.two_paths == 0:
            raise TwoPathsZeroError(l)
    s0 = stats[ref]
    n = mats[0].shape[0]
    base = s0.degrees / np.sqrt(s0.two_paths)
    c0 = s0.total_degree / (n * s0.two_paths)
    x = np.zeros(n, dtype=float)
    for l, s in enumerate(stats):
        if l == ref:
            continue
        diff = base - s.degrees / np.sqrt(s.two_paths)
        x += diff * diff - c0 - s.total_degree / (n * s.two_paths)
    return DifferenceData(values=x, reference_layer=ref)


def cyclic_layer_orders(L: int) -> list[tuple[int, ...]]:
    """The L cyclic rotations of (0, ..., L-1), identity first.

    For L=3: [(0, 1, 2), (1, 2, 0), (2, 0, 1)] — rendered 1-based in
    reports as (A_1, A_2, A_3), (A_2, A_3, A_1), (A_3, A_1, A_2).
    """
    L = int(L)
    if L < 2:
        raise ValueError(f"need at least 2 layers, got L={L}")
    base = list(range(L))
    return [tuple(base[s:] + base[:s]) for s in range(L)]


def format_order(order, labels=None) -> str:
    """Render a 0-based layer order as '(A_1, A_3)'-style 1-based text."""
    if labels is None:
        labels = [f"A_{i + 1}" for i in range(max(order) + 1)]
    return "(" + ", ".join(labels[i] for i in order) + ")"
