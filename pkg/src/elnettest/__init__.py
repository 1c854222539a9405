"""Empirical-likelihood testing for a shared invariant subspace across
the layers of a multilayer network, with rank-one random graph samplers,
Monte Carlo calibration tools, and summary metrics.
"""

from .data_io import (
    ConfigError,
    DataConfig,
    GridCell,
    MultiplexEdgeList,
    ScenarioGrid,
    load_actor_names,
    load_multiplex_edgelist,
    parse_data_config,
    parse_scenario_config,
    read_csv,
    read_multiplex_edgelist,
    write_csv,
    write_edge_list,
)
from .empirical_likelihood import (
    ELResult,
    ELSolverError,
    ELStatus,
    TestReport,
    chisq_quantile,
    chisq_sf,
    el_statistic,
    el_test,
    solve_dual,
)
from .graph_model import (
    LayerSpec,
    MultilayerNetwork,
    ScenarioSpec,
    edge_probabilities,
    make_weights_power_law,
    make_weights_two_block,
    rank2_edge_probabilities,
    rho_from_tau,
    sample_from_probabilities,
    sample_multilayer,
    sample_rank1_layer,
    sample_rank2_layer,
    scenario_difference,
)
from .montecarlo import (
    NullSample,
    RejectionEstimate,
    describe_scenario,
    estimate_rejection_rate,
    ks_distance,
    run_permutation_study,
    run_scenario_grid,
    sample_null_statistics,
)
from .network_metrics import MetricsReport, degree_histogram_csv, metrics_report
from .seeding import DEFAULT_SEED, stream, stream_fingerprint
from .statistics import (
    DifferenceData,
    TwoPathsZeroError,
    cyclic_layer_orders,
    format_order,
    layer_stats,
    weighted_degree_difference,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DataConfig",
    "DEFAULT_SEED",
    "DifferenceData",
    "ELResult",
    "ELSolverError",
    "ELStatus",
    "GridCell",
    "LayerSpec",
    "MetricsReport",
    "MultilayerNetwork",
    "MultiplexEdgeList",
    "NullSample",
    "RejectionEstimate",
    "ScenarioGrid",
    "ScenarioSpec",
    "TestReport",
    "TwoPathsZeroError",
    "chisq_quantile",
    "chisq_sf",
    "cyclic_layer_orders",
    "describe_scenario",
    "degree_histogram_csv",
    "edge_probabilities",
    "el_statistic",
    "el_test",
    "estimate_rejection_rate",
    "format_order",
    "ks_distance",
    "layer_stats",
    "load_actor_names",
    "load_multiplex_edgelist",
    "make_weights_power_law",
    "make_weights_two_block",
    "metrics_report",
    "parse_data_config",
    "parse_scenario_config",
    "rank2_edge_probabilities",
    "read_csv",
    "read_multiplex_edgelist",
    "rho_from_tau",
    "run_permutation_study",
    "run_scenario_grid",
    "sample_from_probabilities",
    "sample_multilayer",
    "sample_null_statistics",
    "sample_rank1_layer",
    "sample_rank2_layer",
    "scenario_difference",
    "solve_dual",
    "stream",
    "stream_fingerprint",
    "weighted_degree_difference",
    "write_csv",
    "write_edge_list",
]
