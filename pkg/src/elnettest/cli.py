"""Command-line interface.

Subcommands
    generate   sample one multilayer network from a scenario config
    test       run the shared-subspace test on a real edge list
    mc-power   Monte Carlo rejection rates over a scenario grid
    mc-null    sample the null distribution of the statistic
    permute    rejection rates across cyclic layer orders
    metrics    per-layer summary metrics of a real edge list

Every run that writes files also writes manifest.json describing the
resolved inputs (tool, version, subcommand, config, seed, replications,
alpha, outputs). Manifests and outputs are deterministic: re-running a
command with the same config and seed reproduces them byte for byte,
regardless of --workers.

Exit codes: 0 success, 2 configuration error, 3 validation error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .data_io import (
    COLUMN_ORDERS,
    ConfigError,
    load_actor_names,
    load_multiplex_edgelist,
    parse_data_config,
    parse_scenario_config,
    write_csv,
    write_edge_list,
)
from .empirical_likelihood import chisq_quantile, el_test
from .graph_model import sample_multilayer
from .montecarlo import (
    ks_distance,
    run_permutation_study,
    run_scenario_grid,
    sample_null_statistics,
)
from .network_metrics import degree_histogram_csv, metrics_report
from .statistics import TwoPathsZeroError, format_order

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elnettest",
        description="Shared invariant-subspace testing for multilayer networks.",
    )
    parser.add_argument("--version", action="version", version=f"elnettest {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, *, out_required=True):
        p.add_argument("--config", required=True, help="path to a JSON config file")
        p.add_argument("--out", required=out_required, default=None,
                       help="output directory")

    def mc_flags(p):
        p.add_argument("--seed", type=int, default=None, help="master seed override")
        p.add_argument("--reps", type=int, default=None, help="replication count override")
        p.add_argument("--alpha", type=float, default=None, help="test level override")
        p.add_argument("--workers", type=int, default=None,
                       help="parallel worker processes (default: all cores)")

    p = sub.add_parser("generate", help="sample one multilayer network")
    common(p, out_required=True)
    p.add_argument("--seed", type=int, default=None, help="master seed override")

    p = sub.add_parser("test", help="test a real multiplex edge list")
    common(p, out_required=True)
    p.add_argument("--layers", default=None,
                   help="comma-separated 1-based layer ids, e.g. 1,3")
    p.add_argument("--reference-layer", type=int, default=None,
                   help="1-based reference position within the selected layers")
    p.add_argument("--column-order", choices=COLUMN_ORDERS, default=None,
                   help="edge-list column order override")
    p.add_argument("--alpha", type=float, default=None, help="test level override")

    p = sub.add_parser("mc-power", help="rejection rates over a scenario grid")
    common(p, out_required=True)
    mc_flags(p)
    p.add_argument("--reference-layer", type=int, default=None,
                   help="1-based reference layer override")

    p = sub.add_parser("mc-null", help="sample the null distribution")
    common(p, out_required=True)
    mc_flags(p)

    p = sub.add_parser("permute", help="rejection rates across cyclic layer orders")
    common(p, out_required=True)
    mc_flags(p)

    p = sub.add_parser("metrics", help="per-layer summary metrics")
    common(p, out_required=True)
    p.add_argument("--layers", default=None,
                   help="comma-separated 1-based layer ids, e.g. 1,3")
    p.add_argument("--column-order", choices=COLUMN_ORDERS, default=None,
                   help="edge-list column order override")

    return parser


def _workers(args) -> int:
    if args.workers is not None:
        if args.workers < 1:
            raise ConfigError("workers", f"must be >= 1, got {args.workers}")
        return args.workers
    return os.cpu_count() or 1


def _progress(stream):
    state = {"last": -1}

    def cb(done: int, total: int) -> None:
        step = max(1, total // 20)
        if done == total or done // step > state["last"]:
            state["last"] = done // step
            print(f"progress: {done}/{total}", file=stream)

    return cb


def _outdir(args) -> Path | None:
    if args.out is None:
        return None
    path = Path(args.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_manifest(outdir: Path, subcommand: str, config: dict, seed, replications,
                    alpha, outputs: list[str]) -> None:
    manifest = {
        "tool": "elnettest",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
        "seed": seed,
        "replications": replications,
        "alpha": alpha,
        "outputs": sorted(outputs),
    }
    text = json.dumps(manifest, sort_keys=True, indent=2) + "\n"
    (outdir / "manifest.json").write_text(text, encoding="utf-8")


def _single_cell(grid, subcommand: str):
    if len(grid.cells) != 1:
        raise ConfigError(
            "n", f"{subcommand} needs a single-cell config, got {len(grid.cells)} cells"
        )
    return grid.cells[0]


def _load_data(args):
    """Parse a data config and apply CLI overrides; returns (config dict, DataConfig)."""
    cfg = parse_data_config(args.config)
    resolved = {
        "path": cfg.path, "n": cfg.n, "L": cfg.L, "column_order": cfg.column_order,
        "layers": [i + 1 for i in cfg.layers] if cfg.layers is not None else None,
        "reference_layer": cfg.reference_layer + 1, "names": cfg.names, "alpha": cfg.alpha,
    }
    if getattr(args, "column_order", None) is not None:
        resolved["column_order"] = args.column_order
    if getattr(args, "layers", None) is not None:
        try:
            ids = [int(s) for s in args.layers.split(",") if s.strip()]
        except ValueError as exc:
            raise ConfigError("layers", f"--layers must be comma-separated ints: {exc}") from exc
        if not ids or not all(1 <= i <= cfg.L for i in ids):
            raise ConfigError("layers", f"--layers ids must lie in 1..{cfg.L}")
        resolved["layers"] = ids
    if getattr(args, "reference_layer", None) is not None:
        resolved["reference_layer"] = args.reference_layer
    if getattr(args, "alpha", None) is not None:
        resolved["alpha"] = args.alpha
    k = len(resolved["layers"]) if resolved["layers"] is not None else cfg.L
    if not 1 <= resolved["reference_layer"] <= k:
        raise ConfigError("reference_layer", f"must be a 1-based index in 1..{k}")
    if not 0 < resolved["alpha"] < 1:
        raise ConfigError("alpha", "must lie strictly between 0 and 1")
    return resolved


def _layer_labels(resolved) -> list[str]:
    ids = resolved["layers"] or list(range(1, resolved["L"] + 1))
    return [f"A_{i}" for i in ids]


def _cmd_generate(args) -> int:
    grid = parse_scenario_config(args.config)
    cell = _single_cell(grid, "generate")
    seed = args.seed if args.seed is not None else grid.seed
    net = sample_multilayer(cell.spec, (seed, cell.scenario_id, 0, 0))
    outdir = _outdir(args)
    write_edge_list(outdir / "network.edges", net)
    _write_manifest(outdir, "generate", _load_config_dict(args.config), seed,
                    None, None, ["network.edges"])
    print(f"wrote {outdir / 'network.edges'} "
          f"({sum(int(l.sum()) // 2 for l in net.layers)} edges, "
          f"n={net.n}, L={net.L})")
    return EXIT_OK


def _load_config_dict(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_test(args) -> int:
    resolved = _load_data(args)
    net = load_multiplex_edgelist(
        resolved["path"], resolved["n"], resolved["L"],
        column_order=resolved["column_order"], layers=resolved["layers"],
    )
    if resolved["names"]:
        load_actor_names(resolved["names"])
    ref = resolved["reference_layer"] - 1
    report = el_test(net, reference_layer=ref, alpha=resolved["alpha"])
    ids = resolved["layers"] or list(range(1, resolved["L"] + 1))
    shown = [ids[i] - 1 for i in report.layer_order]
    order_label = format_order(tuple(shown))
    stat = report.el.statistic
    p = report.el.p_value
    lines = [
        f"layers       {order_label}",
        f"reference    A_{ids[ref]}",
        f"n            {net.n}",
        f"statistic    {stat!r} ({stat:.3f})",
        f"p_value      {p!r} ({p:.4f})",
        f"alpha        {resolved['alpha']:g}",
        f"critical     {report.critical_value!r} ({report.critical_value:.3f})",
        f"reject       {'yes' if report.reject else 'no'}",
    ]
    print("\n".join(lines))
    outdir = _outdir(args)
    header = ["layers", "reference", "n", "statistic", "statistic_3dp",
              "p_value", "p_value_4dp", "alpha", "reject"]
    row = [order_label, f"A_{ids[ref]}", net.n, stat, f"{stat:.3f}",
           p, f"{p:.4f}", resolved["alpha"], report.reject]
    write_csv(outdir / "test_result.csv", header, [row])
    _write_manifest(outdir, "test", resolved, None, None, resolved["alpha"],
                    ["test_result.csv"])
    return EXIT_OK


def _cmd_mc_power(args) -> int:
    grid = parse_scenario_config(args.config)
    seed = args.seed if args.seed is not None else grid.seed
    reps = args.reps if args.reps is not None else (grid.replications or 1000)
    alpha = args.alpha if args.alpha is not None else (grid.alpha or 0.05)
    ref = (args.reference_layer - 1) if args.reference_layer is not None \
        else grid.reference_layer
    estimates = run_scenario_grid(
        grid, replications=reps, alpha=alpha, master_seed=seed,
        reference_layer=ref, workers=_workers(args), progress=_progress(sys.stderr),
    )
    outdir = _outdir(args)
    header = ["scenario_id", "scenario", "n", "difference", "replications",
              "skipped", "hull_violations", "rejections", "rate", "rate_3dp",
              "alpha", "master_seed"]
    rows = [
        [e.scenario_id, e.label, e.scenario.n, e.difference,
         e.replications, e.skipped, e.hull_violations, e.rejections, e.rate,
         f"{e.rate:.3f}", e.alpha, e.master_seed]
        for e in estimates
    ]
    write_csv(outdir / "power.csv", header, rows)
    _write_manifest(outdir, "mc-power", _load_config_dict(args.config), seed,
                    reps, alpha, ["power.csv"])
    for e in estimates:
        print(f"scenario {e.scenario_id}: rate={e.rate:.3f} "
              f"({e.rejections}/{e.replications}, skipped {e.skipped})")
    return EXIT_OK


def _chisq1_pdf(x: float) -> float:
    return math.exp(-x / 2.0) / math.sqrt(2.0 * math.pi * x)


def _cmd_mc_null(args) -> int:
    grid = parse_scenario_config(args.config)
    cell = _single_cell(grid, "mc-null")
    seed = args.seed if args.seed is not None else grid.seed
    reps = args.reps if args.reps is not None else (grid.replications or 10000)
    sample = sample_null_statistics(
        cell.spec, reference_layer=grid.reference_layer, replications=reps,
        master_seed=seed, scenario_id=cell.scenario_id, workers=_workers(args),
        progress=_progress(sys.stderr),
    )
    outdir = _outdir(args)
    stats = np.asarray(sample.statistics)
    write_csv(outdir / "null_statistics.csv", ["index", "statistic"],
              [[i, v] for i, v in enumerate(stats)])
    outputs = ["null_statistics.csv", "summary.csv"]
    if stats.size:
        nbins = 40
        hi = float(stats.max()) or 1.0
        counts, edges = np.histogram(stats, bins=nbins, range=(0.0, hi))
        width = edges[1] - edges[0]
        hrows = []
        for b in range(nbins):
            mid = 0.5 * (edges[b] + edges[b + 1])
            hrows.append([edges[b], edges[b + 1], int(counts[b]),
                          counts[b] / (stats.size * width), _chisq1_pdf(mid)])
        write_csv(outdir / "histogram_summary.csv",
                  ["bin_left", "bin_right", "count", "density", "chisq1_density"],
                  hrows)
        outputs.append("histogram_summary.csv")
        ks = ks_distance(stats, "chisq1")
        pct = {q: float(np.percentile(stats, q)) for q in (50, 90, 95, 99)}
        refq = {q: chisq_quantile(q / 100.0, 1) for q in (50, 90, 95, 99)}
    else:
        ks = math.nan
        pct = {q: math.nan for q in (50, 90, 95, 99)}
        refq = {q: chisq_quantile(q / 100.0, 1) for q in (50, 90, 95, 99)}
    header = ["scenario", "requested", "finite", "hull_violations", "skipped",
              "ks_chisq1", "ks_chisq1_3dp",
              "p50", "p90", "p95", "p99", "chisq1_p50", "chisq1_p90",
              "chisq1_p95", "chisq1_p99", "master_seed"]
    row = [sample.label, sample.replications, stats.size,
           sample.hull_violations, sample.skipped, ks, f"{ks:.3f}",
           pct[50], pct[90], pct[95], pct[99],
           refq[50], refq[90], refq[95], refq[99], sample.master_seed]
    write_csv(outdir / "summary.csv", header, [row])
    _write_manifest(outdir, "mc-null", _load_config_dict(args.config), seed,
                    reps, None, outputs)
    print(f"finite statistics: {stats.size}/{sample.replications} "
          f"(hull violations {sample.hull_violations}, skipped {sample.skipped})")
    if stats.size:
        print(f"ks distance to chisq(1): {ks:.3f}; 95th percentile {pct[95]:.3f}")
    return EXIT_OK


def _cmd_permute(args) -> int:
    grid = parse_scenario_config(args.config)
    cell = _single_cell(grid, "permute")
    seed = args.seed if args.seed is not None else grid.seed
    reps = args.reps if args.reps is not None else (grid.replications or 1000)
    alpha = args.alpha if args.alpha is not None else (grid.alpha or 0.05)
    estimates = run_permutation_study(
        cell.spec, replications=reps, alpha=alpha, master_seed=seed,
        scenario_id=cell.scenario_id, workers=_workers(args),
        progress=_progress(sys.stderr),
    )
    outdir = _outdir(args)
    header = ["ordering_index", "ordering", "reference", "difference",
              "replications", "skipped", "hull_violations", "rejections",
              "rate", "rate_3dp", "alpha", "master_seed"]
    rows = []
    for oi, e in enumerate(estimates):
        rows.append([oi, e.label, f"A_{e.ordering[0] + 1}", e.difference,
                     e.replications, e.skipped, e.hull_violations,
                     e.rejections, e.rate, f"{e.rate:.3f}", e.alpha,
                     e.master_seed])
    write_csv(outdir / "permutation.csv", header, rows)
    _write_manifest(outdir, "permute", _load_config_dict(args.config), seed,
                    reps, alpha, ["permutation.csv"])
    for e in estimates:
        print(f"{e.label}: rate={e.rate:.3f} "
              f"({e.rejections}/{e.replications}, skipped {e.skipped})")
    return EXIT_OK


def _cmd_metrics(args) -> int:
    resolved = _load_data(args)
    net = load_multiplex_edgelist(
        resolved["path"], resolved["n"], resolved["L"],
        column_order=resolved["column_order"], layers=resolved["layers"],
    )
    names = load_actor_names(resolved["names"]) if resolved["names"] else None
    labels = _layer_labels(resolved)
    outdir = _outdir(args)
    header = ["layer", "n", "density", "density_4dp", "total_degree",
              "average_degree", "average_degree_3dp", "average_clustering",
              "average_clustering_4dp", "connected_components", "diameter"]
    rows = []
    reports = []
    for label, adj in zip(labels, net.layers):
        rep = metrics_report(adj)
        reports.append(rep)
        rows.append([label, rep.n, rep.density, f"{rep.density:.4f}",
                     rep.total_degree, rep.average_degree,
                     f"{rep.average_degree:.3f}", rep.average_clustering,
                     f"{rep.average_clustering:.4f}", rep.connected_components,
                     rep.diameter])
        print(f"{label}: n={rep.n} density={rep.density:.4f} "
              f"total_degree={rep.total_degree} avg_degree={rep.average_degree:.3f} "
              f"clustering={rep.average_clustering:.4f} "
              f"components={rep.connected_components} diameter={rep.diameter}")
    write_csv(outdir / "metrics.csv", header, rows)
    outputs = ["metrics.csv"]
    for label, adj in zip(labels, net.layers):
        fname = f"degree_histogram_{label}.csv"
        write_csv(outdir / fname, ["degree", "count"], degree_histogram_csv(adj))
        outputs.append(fname)
    if names is not None:
        nrows = []
        for node in range(1, net.n + 1):
            degs = [int(adj[node - 1].sum()) for adj in net.layers]
            nrows.append([node, names.get(node, ""), *degs])
        write_csv(outdir / "nodes.csv",
                  ["node", "name", *[f"degree_{label}" for label in labels]], nrows)
        outputs.append("nodes.csv")
    _write_manifest(outdir, "metrics", resolved, None, None, None, outputs)
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "test": _cmd_test,
    "mc-power": _cmd_mc_power,
    "mc-null": _cmd_mc_null,
    "permute": _cmd_permute,
    "metrics": _cmd_metrics,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.subcommand](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (TwoPathsZeroError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
