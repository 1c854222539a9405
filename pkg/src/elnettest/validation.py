"""Shared input checks for adjacency matrices and layer collections."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def as_adjacency(a, name: str = "adjacency") -> np.ndarray:
    """Validate and return a symmetric binary adjacency matrix.

    Accepts anything array-like. Requires a square 2-d matrix with entries
    in {0, 1}, zero diagonal, and symmetry. Returns an ndarray (uint8 when
    conversion is needed, otherwise the input array unchanged).
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {a.shape}")
    if a.dtype == bool:
        a = a.astype(np.uint8)
    if not np.issubdtype(a.dtype, np.number):
        raise ValueError(f"{name} must be numeric, got dtype {a.dtype}")
    vals = np.unique(a)
    if not np.isin(vals, (0, 1)).all():
        raise ValueError(f"{name} entries must be 0 or 1")
    if np.trace(np.abs(a)) != 0:
        raise ValueError(f"{name} must have a zero diagonal (no self-loops)")
    if not np.array_equal(a, a.T):
        raise ValueError(f"{name} must be symmetric")
    return a


def as_layers(layers, min_layers: int = 1) -> list[np.ndarray]:
    """Validate a sequence of adjacency matrices sharing one node set."""
    if hasattr(layers, "layers"):  # MultilayerNetwork or similar
        layers = layers.layers
    checked = [as_adjacency(a, name=f"layer {i + 1}") for i, a in enumerate(layers)]
    if len(checked) < min_layers:
        raise ValueError(f"need at least {min_layers} layers, got {len(checked)}")
    sizes = {a.shape[0] for a in checked}
    if len(sizes) > 1:
        raise ValueError(f"layers disagree on node count: {sorted(sizes)}")
    return checked


def check_index(i: int, n: int, name: str = "index") -> int:
    i = int(i)
    if not 0 <= i < n:
        raise ValueError(f"{name} {i} out of range [0, {n})")
    return i


def check_probability(p: float, name: str = "probability") -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"{name} must lie strictly between 0 and 1, got {p}")
    return p


def as_seed_keys(seed) -> tuple[int, ...]:
    """Normalize a seed (one int or a tuple of ints) to a key tuple."""
    if seed is None:
        raise ValueError("seed must not be None")
    if np.isscalar(seed) and not isinstance(seed, (str, bytes)):
        keys: Sequence = (seed,)
    else:
        keys = tuple(seed)
    out = []
    for k in keys:
        ik = int(k)
        if ik != k or ik < 0:
            raise ValueError(f"seed keys must be nonnegative integers, got {k!r}")
        out.append(ik)
    if not out:
        raise ValueError("seed key tuple must not be empty")
    return tuple(out)
