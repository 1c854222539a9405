"""Random multilayer graph models with degree-corrected rank-1/rank-2 layers.

Each layer l of a multilayer network on n shared nodes is an undirected
simple graph whose upper-triangular entries are independent Bernoulli draws

    P(A_{l,ij} = 1) = rho_l * W_{l,i} * W_{l,j},    i < j,

where W_l is a unit-norm, entrywise-nonnegative degree-correction vector
and rho_l = n**tau_l scales the layer's overall density. Two parametric
weight families are provided: a two-block profile (a fraction 1/r of nodes
share a high weight governed by lambda) and a power-law profile (node i
gets weight proportional to i**beta). A rank-2 variant modulates the edge
probabilities by a factor `a` inside two equal node blocks and `b` across
them, which breaks the rank-1 structure while keeping the same W.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .seeding import stream
from .validation import as_adjacency, as_seed_keys

TWO_BLOCK = "two_block"
POWER_LAW = "power_law"
FAMILIES = (TWO_BLOCK, POWER_LAW)

RANK1 = "rank1"
RANK2 = "rank2"
RANKS = (RANK1, RANK2)

RANK2_A = 1.1
RANK2_B = 0.9


def faulhaber_sum(n: int, m: float) -> float:
    """Power sum S(n, m) = 1**m + 2**m + ... + n**m by direct summation.

    Exact (to float precision) rather than the asymptotic n**(m+1)/(m+1);
    m may be any nonnegative real.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    return float(np.sum(np.arange(1, n + 1, dtype=float) ** m))


def make_weights_two_block(n: int, r: float, lam: float) -> np.ndarray:
    """Two-block degree-correction vector.

    The first floor(n/r) nodes get weight lam*sqrt(r)/sqrt(n), the rest
    sqrt((r/(r-1))*(1-lam**2))/sqrt(n). When r does not divide n the raw
    vector is slightly off unit norm, so it is renormalized; the returned
    vector always has Euclidean norm 1.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    r = float(r)
    if r <= 1.0:
        raise ValueError(f"r must be > 1, got {r}")
    lam = float(lam)
    if not 0.0 < lam <= 1.0:
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    k = int(math.floor(n / r))
    if k < 1:
        raise ValueError(f"first block is empty: floor({n}/{r}) < 1")
    w = np.empty(n, dtype=float)
    w[:k] = lam * math.sqrt(r) / math.sqrt(n)
    w[k:] = math.sqrt((r / (r - 1.0)) * (1.0 - lam * lam)) / math.sqrt(n)
    w /= np.linalg.norm(w)
    return w


def make_weights_power_law(n: int, beta: float) -> np.ndarray:
    """Power-law degree-correction vector: W_i = i**beta / sqrt(S(n, 2*beta))."""
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    beta = float(beta)
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    i = np.arange(1, n + 1, dtype=float)
    return i**beta / math.sqrt(faulhaber_sum(n, 2.0 * beta))


def weight_inner_product(w1, w2) -> float:
    """Inner product of two degree-correction vectors.

    Equals 1 exactly when the vectors coincide (both are unit norm); values
    below 1 quantify how far apart the layers' subspaces are. Diagnostic
    only, the test itself never uses it.
    """
    w1 = np.asarray(w1, dtype=float)
    w2 = np.asarray(w2, dtype=float)
    if w1.shape != w2.shape:
        raise ValueError(f"length mismatch: {w1.shape} vs {w2.shape}")
    return float(np.dot(w1, w2))


def rho_from_tau(n: int, tau: float) -> float:
    """Layer density scale rho = n**tau. Warns when tau is outside (0, 0.5)."""
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    tau = float(tau)
    if not 0.0 < tau < 0.5:
        warnings.warn(
            f"tau={tau} outside (0, 0.5); the sparse-layer regime is not guaranteed",
            UserWarning,
            stacklevel=2,
        )
    return float(n) ** tau


def edge_probabilities(w, rho: float) -> tuple[np.ndarray, int]:
    """Rank-1 edge probability matrix rho*W_i*W_j, clipped into [0, 1].

    Returns (matrix, clipped) where `clipped` counts the i<j pairs whose raw
    probability fell outside [0, 1]. The diagonal is zero.
    """
    w = np.asarray(w, dtype=float)
    if w.ndim != 1:
        raise ValueError("w must be a vector")
    rho = float(rho)
    if rho < 0:
        raise ValueError(f"rho must be >= 0, got {rho}")
    p = rho * np.outer(w, w)
    clipped = _clip_count(p)
    np.clip(p, 0.0, 1.0, out=p)
    np.fill_diagonal(p, 0.0)
    return p, clipped


def rank2_edge_probabilities(
    w, rho: float, a: float = RANK2_A, b: float = RANK2_B
) -> tuple[np.ndarray, int]:
    """Rank-2 edge probabilities: a*rho*W_i*W_j within each half, b*rho*W_i*W_j across.

    Nodes 1..n/2 form the first block, the rest the second; n must be even.
    """
    w = np.asarray(w, dtype=float)
    n = w.size
    if n % 2 != 0:
        raise ValueError(f"rank-2 model needs an even node count, got n={n}")
    if a <= 0 or b <= 0:
        raise ValueError(f"block factors must be positive, got a={a}, b={b}")
    second = np.arange(n) >= n // 2
    within = second[:, None] == second[None, :]
    p = float(rho) * np.outer(w, w) * np.where(within, float(a), float(b))
    clipped = _clip_count(p)
    np.clip(p, 0.0, 1.0, out=p)
    np.fill_diagonal(p, 0.0)
    return p, clipped


def _clip_count(p: np.ndarray) -> int:
    iu = np.triu_indices(p.shape[0], 1)
    vals = p[iu]
    return int(np.count_nonzero((vals < 0.0) | (vals > 1.0)))


def sample_from_probabilities(p: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Draw a symmetric zero-diagonal binary adjacency from pairwise probabilities.

    Consumes exactly one uniform per i<j pair, in row-major upper-triangular
    order, so identical (p, stream) always reproduce the same graph.
    """
    n = p.shape[0]
    iu = np.triu_indices(n, 1)
    u = rng.random(iu[0].size)
    a = np.zeros((n, n), dtype=np.uint8)
    a[iu] = u < p[iu]
    a += a.T
    return a


def sample_rank1_layer(w, rho: float, rng: np.random.Generator) -> np.ndarray:
    """Sample one rank-1 layer: P(A_ij = 1) = rho*W_i*W_j."""
    p, _ = edge_probabilities(w, rho)
    return sample_from_probabilities(p, rng)


def sample_rank2_layer(
    w, rho: float, a: float = RANK2_A, b: float = RANK2_B, rng: np.random.Generator = None
) -> np.ndarray:
    """Sample one rank-2 layer; a=b=1 reproduces sample_rank1_layer draw-for-draw."""
    if rng is None:
        raise ValueError("rng is required")
    p, _ = rank2_edge_probabilities(w, rho, a, b)
    return sample_from_probabilities(p, rng)


@dataclass(frozen=True)
class LayerSpec:
    """Generative parameters for one layer.

    family: "two_block" or "power_law"; tau: density exponent (rho = n**tau);
    exactly one of lam (two_block) / beta (power_law) must be set.
    """

    family: str
    tau: float
    lam: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.family == TWO_BLOCK:
            if self.lam is None or self.beta is not None:
                raise ValueError("two_block layers take lam and not beta")
            if not 0.0 < self.lam <= 1.0:
                raise ValueError(f"lambda must lie in (0, 1], got {self.lam}")
        else:
            if self.beta is None or self.lam is not None:
                raise ValueError("power_law layers take beta and not lam")
            if self.beta < 0:
                raise ValueError(f"beta must be >= 0, got {self.beta}")
        if not 0.0 < self.tau < 0.5:
            warnings.warn(
                f"tau={self.tau} outside (0, 0.5); the sparse-layer regime is not guaranteed",
                UserWarning,
                stacklevel=2,
            )

    @property
    def param(self) -> float:
        """The family parameter (lambda or beta)."""
        return self.lam if self.family == TWO_BLOCK else self.beta


@dataclass(frozen=True)
class ScenarioSpec:
    """One experiment cell: node count, layer parameters, and model rank.

    r is the two-block ratio shared by every two_block layer; rank2_a/rank2_b
    are the within/cross-block probability factors of the rank-2 variant.
    """

    n: int
    layers: tuple[LayerSpec, ...]
    rank: str = RANK1
    r: float = 2.0
    rank2_a: float = RANK2_A
    rank2_b: float = RANK2_B

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if len(self.layers) < 2:
            raise ValueError(f"need at least 2 layers, got {len(self.layers)}")
        if self.n < 4:
            raise ValueError(f"n must be >= 4, got {self.n}")
        if self.rank not in RANKS:
            raise ValueError(f"rank must be one of {RANKS}, got {self.rank!r}")
        if self.rank == RANK2 and self.n % 2 != 0:
            raise ValueError(f"rank-2 scenarios need even n, got {self.n}")
        if self.r <= 1.0:
            raise ValueError(f"r must be > 1, got {self.r}")
        if self.rank2_a <= 0 or self.rank2_b <= 0:
            raise ValueError("rank2_a and rank2_b must be positive")

    @property
    def L(self) -> int:
        return len(self.layers)

    def permuted(self, order) -> "ScenarioSpec":
        """The same scenario with layers re-ordered (0-based index tuple)."""
        order = tuple(int(i) for i in order)
        if sorted(order) != list(range(self.L)):
            raise ValueError(f"order must permute 0..{self.L - 1}, got {order}")
        return ScenarioSpec(
            n=self.n,
            layers=tuple(self.layers[i] for i in order),
            rank=self.rank,
            r=self.r,
            rank2_a=self.rank2_a,
            rank2_b=self.rank2_b,
        )


def layer_weights(layer: LayerSpec, n: int, r: float) -> np.ndarray:
    """Materialize the degree-correction vector of one layer."""
    if layer.family == TWO_BLOCK:
        return make_weights_two_block(n, r, layer.lam)
    return make_weights_power_law(n, layer.beta)


@dataclass
class MultilayerNetwork:
    """L symmetric binary adjacency matrices on one shared node set.

    clipped_pairs records, per layer, how many i<j pairs had their edge
    probability clipped into [0, 1] during sampling (always 0 for loaded
    data).
    """

    layers: list[np.ndarray]
    clipped_pairs: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.layers = [as_adjacency(a, name=f"layer {i + 1}") for i, a in enumerate(self.layers)]
        if not self.layers:
            raise ValueError("a multilayer network needs at least one layer")
        sizes = {a.shape[0] for a in self.layers}
        if len(sizes) > 1:
            raise ValueError(f"layers disagree on node count: {sorted(sizes)}")
        if not self.clipped_pairs:
            self.clipped_pairs = [0] * len(self.layers)
        if len(self.clipped_pairs) != len(self.layers):
            raise ValueError("clipped_pairs must have one entry per layer")

    @property
    def n(self) -> int:
        return self.layers[0].shape[0]

    @property
    def L(self) -> int:
        return len(self.layers)

    def select_layers(self, order) -> "MultilayerNetwork":
        """Subset/reorder layers by 0-based indices (no copies of matrices)."""
        order = [int(i) for i in order]
        for i in order:
            if not 0 <= i < self.L:
                raise ValueError(f"layer index {i} out of range [0, {self.L})")
        return MultilayerNetwork(
            layers=[self.layers[i] for i in order],
            clipped_pairs=[self.clipped_pairs[i] for i in order],
        )

    def edge_list(self) -> list[tuple[int, int, int]]:
        """All edges as 1-based (i, j, layer) triples with i < j, layer-major."""
        out: list[tuple[int, int, int]] = []
        for l, a in enumerate(self.layers, start=1):
            iu, ju = np.nonzero(np.triu(a, 1))
            out.extend((int(i) + 1, int(j) + 1, l) for i, j in zip(iu, ju))
        return out


def sample_multilayer(spec: ScenarioSpec, seed) -> MultilayerNetwork:
    """Sample all layers of a scenario.

    `seed` is an integer or tuple of integers; layer l uses the stream
    keyed by (*seed, l), so a fixed seed reproduces the network bit for bit
    and layers are mutually independent.
    """
    keys = as_seed_keys(seed)
    layers: list[np.ndarray] = []
    clipped: list[int] = []
    for l, ls in enumerate(spec.layers):
        w = layer_weights(ls, spec.n, spec.r)
        rho = rho_from_tau(spec.n, ls.tau)
        if spec.rank == RANK2:
            p, c = rank2_edge_probabilities(w, rho, spec.rank2_a, spec.rank2_b)
        else:
            p, c = edge_probabilities(w, rho)
        layers.append(sample_from_probabilities(p, stream(*keys, l)))
        clipped.append(c)
    return MultilayerNetwork(layers=layers, clipped_pairs=clipped)


def scenario_difference(spec: ScenarioSpec) -> float:
    """Sum over layers of |param_1 - param_l| (lambda or beta per family)."""
    families = {ls.family for ls in spec.layers}
    if len(families) > 1:
        raise ValueError(f"difference is undefined across mixed families: {sorted(families)}")
    params = [ls.param for ls in spec.layers]
    return float(sum(abs(params[0] - p) for p in params))
