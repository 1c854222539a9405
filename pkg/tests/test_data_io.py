"""Edge-list parsing, config parsing, and CSV round-trips."""

import math
import warnings

import numpy as np
import pytest

from elnettest import (
    ConfigError,
    DEFAULT_SEED,
    load_actor_names,
    load_multiplex_edgelist,
    parse_data_config,
    parse_scenario_config,
    read_csv,
    read_multiplex_edgelist,
    write_csv,
    write_edge_list,
)


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestEdgeListReading:
    def test_single_line(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["1 2 1"])
        el = read_multiplex_edgelist(p, n=3, L=1)
        assert el.edges == ((1, 2, 1),)
        net = el.to_network()
        assert len(net.layers) == 1
        assert net.layers[0].sum(axis=1).tolist() == [1, 1, 0]

    def test_column_order_luv(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["2 1 3", "1 1 2"])
        el = read_multiplex_edgelist(p, n=3, L=2, column_order="luv")
        assert set(el.edges) == {(1, 3, 2), (1, 2, 1)}

    def test_fourth_column_ignored(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["1 2 1 7", "2 3 1 0.5"])
        el = read_multiplex_edgelist(p, n=3, L=1)
        assert set(el.edges) == {(1, 2, 1), (2, 3, 1)}

    def test_comments_and_blank_lines_skipped(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["# header", "", "1 2 1", "   ", "# x", "2 3 1"])
        el = read_multiplex_edgelist(p, n=3, L=1)
        assert len(el.edges) == 2

    def test_unordered_endpoints_normalized(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["3 1 1"])
        el = read_multiplex_edgelist(p, n=3, L=1)
        assert el.edges == ((1, 3, 1),)

    def test_empty_file_rejected(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["# only comments"])
        with pytest.raises(ValueError, match="empty edge-list"):
            read_multiplex_edgelist(p, n=3, L=1)

    def test_self_loop_rejected_with_line_number(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["1 2 1", "", "# c", "3 3 1"])
        with pytest.raises(ValueError, match=r"e\.edges:4: self-loop on node 3"):
            read_multiplex_edgelist(p, n=3, L=1)

    def test_malformed_line_rejected(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["1 2"])
        with pytest.raises(ValueError, match=r":1: expected 3 columns"):
            read_multiplex_edgelist(p, n=3, L=1)
        p2 = write_lines(tmp_path / "f.edges", ["1 two 1"])
        with pytest.raises(ValueError, match=r":1: non-integer id"):
            read_multiplex_edgelist(p2, n=3, L=1)

    def test_out_of_range_ids_rejected(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["1 9 1"])
        with pytest.raises(ValueError, match="node id out of range 1..3"):
            read_multiplex_edgelist(p, n=3, L=1)
        p2 = write_lines(tmp_path / "f.edges", ["1 2 5"])
        with pytest.raises(ValueError, match="layer id 5 out of range 1..2"):
            read_multiplex_edgelist(p2, n=3, L=2)
        p3 = write_lines(tmp_path / "g.edges", ["0 2 1"])
        with pytest.raises(ValueError, match="node id out of range"):
            read_multiplex_edgelist(p3, n=3, L=1)

    def test_duplicates_dropped_with_warning(self, tmp_path):
        # Same edge three ways: verbatim, repeated, and endpoint-swapped.
        p = write_lines(tmp_path / "e.edges", ["1 2 1", "1 2 1", "2 1 1", "2 3 1"])
        with pytest.warns(UserWarning, match="dropped 2 duplicate"):
            el = read_multiplex_edgelist(p, n=3, L=1)
        assert el.duplicates_dropped == 2
        assert set(el.edges) == {(1, 2, 1), (2, 3, 1)}

    def test_declared_n_governs_matrix_size(self, tmp_path):
        # Nodes 4, 5 never appear but are still rows in the matrix.
        p = write_lines(tmp_path / "e.edges", ["1 2 1"])
        net = load_multiplex_edgelist(p, n=5, L=1)
        assert net.layers[0].shape == (5, 5)
        assert net.layers[0][3].sum() == 0

    def test_bad_declared_sizes(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["1 2 1"])
        with pytest.raises(ValueError, match="declared sizes"):
            read_multiplex_edgelist(p, n=0, L=1)
        with pytest.raises(ValueError, match="column_order"):
            read_multiplex_edgelist(p, n=3, L=1, column_order="lvu")

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            read_multiplex_edgelist(tmp_path / "absent.edges", n=3, L=1)

    def test_layer_selection_and_reordering(self, tmp_path):
        p = write_lines(tmp_path / "e.edges", ["1 2 1", "1 3 2", "2 3 3"])
        net = load_multiplex_edgelist(p, n=3, L=3, layers=(3, 1))
        assert len(net.layers) == 2
        assert net.layers[0][1, 2] == 1  # former layer 3
        assert net.layers[1][0, 1] == 1  # former layer 1

    def test_round_trip_is_set_equal(self, tmp_path):
        rng = np.random.default_rng(14)
        lines = []
        seen = set()
        for _ in range(60):
            u, v = sorted(rng.choice(10, size=2, replace=False) + 1)
            layer = int(rng.integers(1, 4))
            if (u, v, layer) in seen:
                continue
            seen.add((u, v, layer))
            lines.append(f"{u} {v} {layer}")
        src = write_lines(tmp_path / "in.edges", lines)
        net = load_multiplex_edgelist(src, n=10, L=3)
        out = tmp_path / "out.edges"
        write_edge_list(out, net)
        back = read_multiplex_edgelist(out, n=10, L=3)
        assert set(back.edges) == seen


class TestActorNames:
    def test_names_with_spaces(self, tmp_path):
        p = write_lines(tmp_path / "a.txt", ["1 Ada Lovelace", "2 Erdos", "# c", ""])
        names = load_actor_names(p)
        assert names == {1: "Ada Lovelace", 2: "Erdos"}

    def test_malformed_rejected(self, tmp_path):
        p = write_lines(tmp_path / "a.txt", ["justonefield"])
        with pytest.raises(ValueError, match="expected 'id name'"):
            load_actor_names(p)
        p2 = write_lines(tmp_path / "b.txt", ["x Name"])
        with pytest.raises(ValueError, match="non-integer id"):
            load_actor_names(p2)


class TestCsv:
    def test_header_only(self, tmp_path):
        p = tmp_path / "t.csv"
        write_csv(p, ["a", "b"], [])
        header, rows = read_csv(p)
        assert header == ["a", "b"]
        assert rows == []

    def test_float_cells_round_trip_exactly(self, tmp_path):
        p = tmp_path / "t.csv"
        values = [0.1, 1 / 3, math.pi, 6.924000000000001, 1e-17]
        write_csv(p, ["x"], [[v] for v in values])
        _, rows = read_csv(p)
        assert [float(r[0]) for r in rows] == values

    def test_quoted_label_with_comma(self, tmp_path):
        p = tmp_path / "t.csv"
        write_csv(p, ["label", "k"], [["(A_1, A_3)", 2]])
        header, rows = read_csv(p)
        assert rows == [["(A_1, A_3)", "2"]]

    def test_crlf_line_endings(self, tmp_path):
        p = tmp_path / "t.csv"
        write_csv(p, ["a"], [[1], [2]])
        assert p.read_bytes().count(b"\r\n") == 3

    def test_bool_and_int_formatting(self, tmp_path):
        p = tmp_path / "t.csv"
        write_csv(p, ["flag", "count"], [[True, np.int64(7)]])
        _, rows = read_csv(p)
        assert rows == [["True", "7"]]

    def test_read_empty_csv_rejected(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("", encoding="utf-8")
        with pytest.raises(ValueError, match="empty CSV"):
            read_csv(p)


class TestScenarioConfig:
    def base(self, **over):
        cfg = {
            "family": "two_block",
            "n": [200, 400],
            "tau": [0.3, 0.2],
            "lambda": [[0.8, 0.8], [0.8, 0.5]],
        }
        cfg.update(over)
        return cfg

    def test_grid_expansion_row_major(self):
        grid = parse_scenario_config(self.base())
        assert len(grid.cells) == 4
        assert [c.scenario_id for c in grid.cells] == [0, 1, 2, 3]
        # Outer loop over parameter rows, inner over n.
        assert [c.spec.n for c in grid.cells] == [200, 400, 200, 400]
        assert grid.cells[0].spec.layers[1].lam == 0.8
        assert grid.cells[2].spec.layers[1].lam == 0.5
        assert grid.seed == DEFAULT_SEED
        assert grid.replications is None
        assert grid.alpha is None
        assert grid.reference_layer == 0

    def test_single_row_single_n(self):
        grid = parse_scenario_config(self.base(n=400, **{"lambda": [0.8, 0.5]}))
        assert len(grid.cells) == 1
        assert grid.cells[0].spec.n == 400
        assert [l.lam for l in grid.cells[0].spec.layers] == [0.8, 0.5]

    def test_power_law_uses_beta(self):
        grid = parse_scenario_config(
            {"family": "power_law", "n": 100, "tau": [0.3, 0.2], "beta": [1, 4]}
        )
        assert [l.beta for l in grid.cells[0].spec.layers] == [1.0, 4.0]
        assert all(l.lam is None for l in grid.cells[0].spec.layers)

    def test_optional_fields_parsed(self):
        grid = parse_scenario_config(
            self.base(seed=777, replications=50, alpha=0.1, reference_layer=2)
        )
        assert grid.seed == 777
        assert grid.replications == 50
        assert grid.alpha == 0.1
        assert grid.reference_layer == 1  # converted to 0-based

    def test_rank2_fields(self):
        grid = parse_scenario_config(
            self.base(rank="rank2", rank2_a=1.2, rank2_b=0.8, n=[200])
        )
        spec = grid.cells[0].spec
        assert spec.rank == "rank2"
        assert spec.rank2_a == 1.2
        assert spec.rank2_b == 0.8

    def test_unknown_key_named(self):
        with pytest.raises(ConfigError, match="config key 'lamda': unknown key"):
            parse_scenario_config(self.base(lamda=[0.8, 0.8]))

    def test_wrong_family_param_named(self):
        with pytest.raises(ConfigError, match="'beta': not valid for family 'two_block'"):
            parse_scenario_config(self.base(beta=[1, 4]))
        with pytest.raises(ConfigError, match="'lambda': not valid for family 'power_law'"):
            parse_scenario_config(
                {"family": "power_law", "n": 100, "tau": [0.3, 0.2], "lambda": [0.8, 0.8]}
            )

    def test_param_row_length_must_match_tau(self):
        with pytest.raises(ConfigError, match="'lambda': must have 2 entries"):
            parse_scenario_config(self.base(**{"lambda": [[0.8, 0.8, 0.8]]}))

    def test_tau_needs_two_layers(self):
        with pytest.raises(ConfigError, match="'tau': needs at least 2 layers"):
            parse_scenario_config(self.base(tau=[0.3]))

    def test_missing_required_keys(self):
        with pytest.raises(ConfigError, match="'family': missing"):
            parse_scenario_config({"n": 100, "tau": [0.3, 0.2], "lambda": [0.8, 0.8]})
        with pytest.raises(ConfigError, match="'n': missing"):
            parse_scenario_config(
                {"family": "two_block", "tau": [0.3, 0.2], "lambda": [0.8, 0.8]}
            )

    def test_value_errors_name_their_key(self):
        with pytest.raises(ConfigError, match="config key 'seed'"):
            parse_scenario_config(self.base(seed=-1))
        with pytest.raises(ConfigError, match="config key 'alpha'"):
            parse_scenario_config(self.base(alpha=1.5))
        with pytest.raises(ConfigError, match="config key 'replications'"):
            parse_scenario_config(self.base(replications=0))
        with pytest.raises(ConfigError, match="config key 'reference_layer'"):
            parse_scenario_config(self.base(reference_layer=3))
        with pytest.raises(ConfigError, match="config key 'r'"):
            parse_scenario_config(self.base(r=1.0))
        with pytest.raises(ConfigError, match="config key 'lambda'"):
            parse_scenario_config(self.base(**{"lambda": [[0.8, 1.5]]}))
        with pytest.raises(ConfigError, match="config key 'n'"):
            parse_scenario_config(self.base(n=2))
        with pytest.raises(ConfigError, match="config key 'n'"):
            # rank-2 requires even n; the spec constructor error maps to n.
            parse_scenario_config(self.base(rank="rank2", n=401))

    def test_tau_at_half_warns(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            parse_scenario_config(self.base(tau=[0.5, 0.2], n=100))
        assert any("tau" in str(w.message) for w in caught)

    def test_reads_json_file(self, tmp_path):
        import json

        p = tmp_path / "cfg.json"
        p.write_text(json.dumps(self.base()), encoding="utf-8")
        grid = parse_scenario_config(p)
        assert len(grid.cells) == 4

    def test_invalid_json_file(self, tmp_path):
        p = tmp_path / "cfg.json"
        p.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError, match="not valid JSON"):
            parse_scenario_config(p)

    def test_missing_config_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read config file"):
            parse_scenario_config(tmp_path / "absent.json")


class TestDataConfig:
    def base(self, **over):
        cfg = {"path": "x.edges", "n": 61, "L": 5}
        cfg.update(over)
        return cfg

    def test_defaults(self):
        dc = parse_data_config(self.base())
        assert dc.path == "x.edges"
        assert (dc.n, dc.L) == (61, 5)
        assert dc.column_order == "uvl"
        assert dc.layers is None
        assert dc.reference_layer == 0
        assert dc.names is None
        assert dc.alpha == 0.05

    def test_layers_converted_to_zero_based(self):
        dc = parse_data_config(self.base(layers=[1, 3], reference_layer=2))
        assert dc.layers == (0, 2)
        assert dc.reference_layer == 1

    def test_errors_name_keys(self):
        with pytest.raises(ConfigError, match="config key 'column_order'"):
            parse_data_config(self.base(column_order="vul"))
        with pytest.raises(ConfigError, match="config key 'layers'"):
            parse_data_config(self.base(layers=[0]))
        with pytest.raises(ConfigError, match="config key 'layers'"):
            parse_data_config(self.base(layers=[6]))
        with pytest.raises(ConfigError, match="config key 'reference_layer'"):
            parse_data_config(self.base(layers=[1, 2], reference_layer=3))
        with pytest.raises(ConfigError, match="config key 'alpha'"):
            parse_data_config(self.base(alpha=0))
        with pytest.raises(ConfigError, match="config key 'n'"):
            parse_data_config(self.base(n=0))
        with pytest.raises(ConfigError, match="unknown key"):
            parse_data_config(self.base(extra=1))

    def test_config_error_is_value_error_with_key(self):
        try:
            parse_data_config(self.base(alpha=2))
        except ConfigError as exc:
            assert isinstance(exc, ValueError)
            assert exc.key == "alpha"
        else:
            pytest.fail("expected ConfigError")
