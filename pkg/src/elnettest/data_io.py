"""Edge-list ingestion, experiment configuration files, and CSV output.

Configuration files are JSON objects. A scenario config describes a
generative experiment cell or grid:

    {
      "family": "two_block",            # or "power_law"
      "rank": "rank1",                  # optional; or "rank2"
      "r": 2.0,                         # two_block ratio, optional
      "rank2_a": 1.1, "rank2_b": 0.9,   # optional rank-2 factors
      "n": 400,                         # int or list of ints
      "tau": [0.3, 0.2],                # one entry per layer
      "lambda": [0.8, 0.5],             # one row or list of rows
                                        # ("beta" instead for power_law)
      "seed": 12345,                    # optional master seed
      "replications": 1000,             # optional
      "alpha": 0.05,                    # optional
      "reference_layer": 1              # optional, 1-based
    }

The grid is the cross product of parameter rows (outer) and n values
(inner); scenario ids enumerate the cells in that row-major order. A data
config points the test/metrics commands at a real multiplex edge list:

    {
      "path": "data/cs_aarhus/cs_aarhus.edges",
      "n": 61, "L": 5,
      "column_order": "uvl",            # "uvl" = "u v layer", "luv" = "layer u v"
      "layers": [1, 3],                 # optional 1-based selection/ordering
      "reference_layer": 1,             # optional, 1-based position in the selection
      "names": "data/cs_aarhus/actors.txt",   # optional "id name" dictionary
      "alpha": 0.05                     # optional
    }

Edge-list lines are whitespace-separated node/layer ids per the declared
column order; lines starting with '#' are comments; a trailing fourth
column (a weight in some distributions) is ignored. Ids are 1-based and
the declared n governs the matrix size even when high-index nodes never
appear. Loading then re-exporting yields a set-equal edge list.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph_model import (
    FAMILIES,
    POWER_LAW,
    RANK1,
    RANK2,
    RANKS,
    TWO_BLOCK,
    LayerSpec,
    MultilayerNetwork,
    ScenarioSpec,
)
from .seeding import DEFAULT_SEED

COLUMN_ORDERS = ("uvl", "luv")


class ConfigError(ValueError):
    """A configuration file failed validation; the message names the key."""

    def __init__(self, key: str, problem: str):
        self.key = key
        super().__init__(f"config key '{key}': {problem}")


@dataclass(frozen=True)
class MultiplexEdgeList:
    """Validated multiplex edges: 1-based (u, v, layer) with u < v, deduplicated."""

    n: int
    L: int
    edges: tuple[tuple[int, int, int], ...]
    duplicates_dropped: int = 0

    def to_network(self) -> MultilayerNetwork:
        mats = [np.zeros((self.n, self.n), dtype=np.uint8) for _ in range(self.L)]
        for u, v, layer in self.edges:
            mats[layer - 1][u - 1, v - 1] = 1
            mats[layer - 1][v - 1, u - 1] = 1
        return MultilayerNetwork(layers=mats)


def read_multiplex_edgelist(path, n: int, L: int, column_order: str = "uvl") -> MultiplexEdgeList:
    """Parse and validate a multiplex edge-list file."""
    n = int(n)
    L = int(L)
    if n < 1 or L < 1:
        raise ValueError(f"declared sizes must be positive, got n={n}, L={L}")
    if column_order not in COLUMN_ORDERS:
        raise ValueError(f"column_order must be one of {COLUMN_ORDERS}, got {column_order!r}")
    path = Path(path)
    seen: set[tuple[int, int, int]] = set()
    edges: list[tuple[int, int, int]] = []
    duplicates = 0
    any_line = False
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            any_line = True
            fields = line.split()
            if len(fields) not in (3, 4):
                raise ValueError(f"{path}:{lineno}: expected 3 columns, got {len(fields)}")
            try:
                nums = [int(f) for f in fields[:3]]
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-integer id in {line!r}") from exc
            if column_order == "uvl":
                u, v, layer = nums
            else:
                layer, u, v = nums
            if u == v:
                raise ValueError(f"{path}:{lineno}: self-loop on node {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"{path}:{lineno}: node id out of range 1..{n}")
            if not 1 <= layer <= L:
                raise ValueError(f"{path}:{lineno}: layer id {layer} out of range 1..{L}")
            if u > v:
                u, v = v, u
            key = (u, v, layer)
            if key in seen:
                duplicates += 1
                continue
            seen.add(key)
            edges.append(key)
    if not any_line:
        raise ValueError(f"{path}: empty edge-list file")
    if duplicates:
        warnings.warn(
            f"{path}: dropped {duplicates} duplicate edge line(s)", UserWarning, stacklevel=2
        )
    return MultiplexEdgeList(n=n, L=L, edges=tuple(edges), duplicates_dropped=duplicates)


def load_multiplex_edgelist(
    path, n: int, L: int, column_order: str = "uvl", layers=None
) -> MultilayerNetwork:
    """Load a multiplex edge list into adjacency matrices.

    `layers` optionally selects/reorders layers by their 1-based file ids,
    e.g. layers=(1, 3) keeps the first and third layers in that order.
    """
    net = read_multiplex_edgelist(path, n, L, column_order).to_network()
    if layers is not None:
        net = net.select_layers([int(l) - 1 for l in layers])
    return net


def load_actor_names(path) -> dict[int, str]:
    """Read an 'id name' dictionary file (1-based ids; names may contain spaces)."""
    out: dict[int, str] = {}
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(maxsplit=1)
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'id name'")
            try:
                out[int(parts[0])] = parts[1]
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-integer id {parts[0]!r}") from exc
    return out


def write_edge_list(path, net: MultilayerNetwork) -> None:
    """Write 'i j layer' lines (1-based, i < j), layer-major order."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, j, layer in net.edge_list():
            fh.write(f"{i} {j} {layer}\n")


def fullprec(x) -> str:
    """Full-precision text for a CSV cell (floats use shortest round-trip repr)."""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return str(x)


def write_csv(path, header, rows) -> None:
    """Write an RFC-4180-style CSV with a header row.

    Cells pass through fullprec, so floats keep full precision; callers add
    display-rounded companion columns (4 decimals for p-values, 3 for
    rates) where a table is meant to be read side by side with rounded
    reference values.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fullprec(c) for c in row])


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    """Read back a CSV written by write_csv (header, string rows)."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        rows = list(reader)
    if not rows:
        raise ValueError(f"{path}: empty CSV")
    return rows[0], rows[1:]


@dataclass(frozen=True)
class GridCell:
    scenario_id: int
    spec: ScenarioSpec


@dataclass(frozen=True)
class ScenarioGrid:
    """Expanded scenario config: one GridCell per (parameter row, n) pair."""

    cells: tuple[GridCell, ...]
    seed: int = DEFAULT_SEED
    replications: int | None = None
    alpha: float | None = None
    reference_layer: int = 0  # 0-based


@dataclass(frozen=True)
class DataConfig:
    """Parsed data config for the test/metrics commands (indices 0-based)."""

    path: str
    n: int
    L: int
    column_order: str = "uvl"
    layers: tuple[int, ...] | None = None  # 0-based selection/ordering
    reference_layer: int = 0  # 0-based, within the selection
    names: str | None = None
    alpha: float = 0.05


def _load_json(source) -> dict:
    if isinstance(source, dict):
        return source
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("path", f"cannot read config file {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("json", f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ConfigError("json", f"{path} must contain a JSON object")
    return obj


def _expect(obj: dict, key: str, kinds, problem: str):
    if key not in obj:
        raise ConfigError(key, "missing required key")
    val = obj[key]
    if not isinstance(val, kinds) or isinstance(val, bool):
        raise ConfigError(key, problem)
    return val


def _number_row(obj: dict, key: str, length: int | None = None) -> list[float]:
    val = obj[key]
    if not isinstance(val, list) or not val or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in val
    ):
        raise ConfigError(key, "must be a nonempty list of numbers")
    if length is not None and len(val) != length:
        raise ConfigError(key, f"must have {length} entries (one per layer), got {len(val)}")
    return [float(v) for v in val]


_SCENARIO_KEYS = {
    "family", "rank", "r", "rank2_a", "rank2_b", "n", "tau", "lambda", "beta",
    "seed", "replications", "alpha", "reference_layer",
}


def parse_scenario_config(source) -> ScenarioGrid:
    """Parse a scenario config file (or dict) into an expanded grid."""
    obj = _load_json(source)
    unknown = set(obj) - _SCENARIO_KEYS
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")

    family = _expect(obj, "family", str, f"must be one of {FAMILIES}")
    if family not in FAMILIES:
        raise ConfigError("family", f"must be one of {FAMILIES}, got {family!r}")
    rank = obj.get("rank", RANK1)
    if rank not in RANKS:
        raise ConfigError("rank", f"must be one of {RANKS}, got {rank!r}")

    n_val = _expect(obj, "n", (int, list), "must be an int or a list of ints")
    ns = n_val if isinstance(n_val, list) else [n_val]
    if not ns or not all(isinstance(v, int) and not isinstance(v, bool) for v in ns):
        raise ConfigError("n", "must be an int or a nonempty list of ints")

    _expect(obj, "tau", list, "must be a list of numbers")
    tau = _number_row(obj, "tau")
    L = len(tau)
    if L < 2:
        raise ConfigError("tau", f"needs at least 2 layers, got {L}")

    param_key = "lambda" if family == TWO_BLOCK else "beta"
    other_key = "beta" if family == TWO_BLOCK else "lambda"
    if other_key in obj:
        raise ConfigError(other_key, f"not valid for family {family!r} (use '{param_key}')")
    raw_rows = _expect(obj, param_key, list, "must be a row of numbers or a list of rows")
    if raw_rows and all(isinstance(v, list) for v in raw_rows):
        rows = [
            _number_row({param_key: row}, param_key, L)
            for row in raw_rows
        ]
    else:
        rows = [_number_row(obj, param_key, L)]

    r = obj.get("r", 2.0)
    if isinstance(r, bool) or not isinstance(r, (int, float)):
        raise ConfigError("r", "must be a number")
    for fk in ("rank2_a", "rank2_b"):
        fv = obj.get(fk)
        if fv is not None and (isinstance(fv, bool) or not isinstance(fv, (int, float))):
            raise ConfigError(fk, "must be a number")

    seed = obj.get("seed", DEFAULT_SEED)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError("seed", "must be a nonnegative integer")
    reps = obj.get("replications")
    if reps is not None and (isinstance(reps, bool) or not isinstance(reps, int) or reps < 1):
        raise ConfigError("replications", "must be a positive integer")
    alpha = obj.get("alpha")
    if alpha is not None and (
        isinstance(alpha, bool) or not isinstance(alpha, (int, float)) or not 0 < alpha < 1
    ):
        raise ConfigError("alpha", "must lie strictly between 0 and 1")
    ref = obj.get("reference_layer", 1)
    if isinstance(ref, bool) or not isinstance(ref, int) or not 1 <= ref <= L:
        raise ConfigError("reference_layer", f"must be a 1-based layer index in 1..{L}")

    def build_spec(n: int, params: list[float]) -> ScenarioSpec:
        try:
            layer_specs = tuple(
                LayerSpec(family=family, tau=t, lam=p if family == TWO_BLOCK else None,
                          beta=p if family == POWER_LAW else None)
                for t, p in zip(tau, params)
            )
            return ScenarioSpec(
                n=n,
                layers=layer_specs,
                rank=rank,
                r=float(r),
                rank2_a=float(obj.get("rank2_a", 1.1)),
                rank2_b=float(obj.get("rank2_b", 0.9)),
            )
        except ValueError as exc:
            msg = str(exc)
            if "lambda" in msg or "beta" in msg:
                key = param_key
            elif msg.startswith("r must"):
                key = "r"
            elif "rank2_a" in msg:
                key = "rank2_a"
            else:
                key = "n"
            raise ConfigError(key, msg) from exc

    cells = []
    sid = 0
    for params in rows:
        for n in ns:
            cells.append(GridCell(scenario_id=sid, spec=build_spec(n, params)))
            sid += 1
    return ScenarioGrid(
        cells=tuple(cells),
        seed=seed,
        replications=reps,
        alpha=float(alpha) if alpha is not None else None,
        reference_layer=ref - 1,
    )


_DATA_KEYS = {"path", "n", "L", "column_order", "layers", "reference_layer", "names", "alpha"}


def parse_data_config(source) -> DataConfig:
    """Parse a data config file (or dict) for the test/metrics commands."""
    obj = _load_json(source)
    unknown = set(obj) - _DATA_KEYS
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")
    path = _expect(obj, "path", str, "must be a string path")
    n = _expect(obj, "n", int, "must be an integer")
    L = _expect(obj, "L", int, "must be an integer")
    if n < 1:
        raise ConfigError("n", f"must be >= 1, got {n}")
    if L < 1:
        raise ConfigError("L", f"must be >= 1, got {L}")
    order = obj.get("column_order", "uvl")
    if order not in COLUMN_ORDERS:
        raise ConfigError("column_order", f"must be one of {COLUMN_ORDERS}, got {order!r}")
    layers = obj.get("layers")
    if layers is not None:
        if not isinstance(layers, list) or not layers or not all(
            isinstance(v, int) and not isinstance(v, bool) and 1 <= v <= L for v in layers
        ):
            raise ConfigError("layers", f"must be a nonempty list of 1-based layer ids in 1..{L}")
        layers = tuple(v - 1 for v in layers)
    k = len(layers) if layers is not None else L
    ref = obj.get("reference_layer", 1)
    if isinstance(ref, bool) or not isinstance(ref, int) or not 1 <= ref <= k:
        raise ConfigError("reference_layer", f"must be a 1-based index in 1..{k}")
    names = obj.get("names")
    if names is not None and not isinstance(names, str):
        raise ConfigError("names", "must be a string path")
    alpha = obj.get("alpha", 0.05)
    if isinstance(alpha, bool) or not isinstance(alpha, (int, float)) or not 0 < alpha < 1:
        raise ConfigError("alpha", "must lie strictly between 0 and 1")
    return DataConfig(
        path=path,
        n=n,
        L=L,
        column_order=order,
        layers=layers,
        reference_layer=ref - 1,
        names=names,
        alpha=float(alpha),
    )
