import json
import math

import pandas as pd
import pytest

from abtk.experiments.cli import _floats, main, parse_args


class TestParseArgs:
    def test_lists(self):
        args = parse_args(["radius", "--orders", "1,2"])
        assert args.orders == [1, 2]
        assert args.delta_q == 0

    def test_one_over_e(self):
        assert _floats("0.5, 1/e") == [0.5, 1 / math.e]

    def test_config_file(self, tmp_path):
        config = tmp_path / "radius.yml"
        config.write_text("orders: [2, 4]\ndelta_q: 1\n")
        args = parse_args(["radius", "--config", str(config)])
        assert args.orders == [2, 4]
        assert args.delta_q == 1

    def test_flags_override_config(self, tmp_path):
        config = tmp_path / "radius.yml"
        config.write_text("orders: [2, 4]\n")
        args = parse_args(["radius", "--config", str(config), "--orders", "6"])
        assert args.orders == [6]

    def test_scalar_list_option(self, tmp_path):
        config = tmp_path / "heat.yml"
        config.write_text("factor: 1.1\nT: 0.5\n")
        args = parse_args(["heat", "--config", str(config)])
        assert args.factors == [1.1]
        assert args.T == 0.5

    def test_unknown_config_key(self, tmp_path):
        config = tmp_path / "radius.yml"
        config.write_text("radii: [0.5]\n")
        with pytest.raises(SystemExit):
            parse_args(["radius", "--config", str(config)])

    def test_command_required(self):
        with pytest.raises(SystemExit):
            parse_args([])


class TestMain:
    def test_radius(self, tmp_path):
        out = tmp_path / "radius.csv"
        assert main(["radius", "--orders", "1,2,4", "--out", str(out)]) == 0
        df = pd.read_csv(tmp_path / "radius_radius.csv")
        assert list(df["n"]) == [1, 2, 4]
        assert (tmp_path / "radius_checks.csv").exists()

    def test_verify_appendix_json(self, tmp_path):
        out = tmp_path / "appendix.json"
        assert main(["verify-appendix", "--n-draws", "3", "--format", "json", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["passed"] is True
        assert len(data["tables"]["witnesses"]) == 18

    def test_max_order(self, tmp_path):
        out = tmp_path / "max_order.csv"
        assert main(["max-order", "--radii", "0.6,0.5", "--out", str(out)]) == 0
        df = pd.read_csv(tmp_path / "max_order_max_order.csv")
        assert list(df["max_order"]) == [2, 3]

    def test_region(self, tmp_path):
        out = tmp_path / "region.csv"
        assert main(["region", "--resolution", "3", "--out", str(out)]) == 0
        assert len(pd.read_csv(tmp_path / "region_region.csv")) == 9

    def test_locus(self, tmp_path):
        out = tmp_path / "locus.yml"
        assert main(["locus", "--q", "2", "--n-theta", "8", "--format", "yaml", "--out", str(out)]) == 0
        assert out.exists()

    def test_failed_check_exit_code(self, tmp_path):
        # an order that never settles with only two step counts
        out = tmp_path / "convergence.csv"
        assert main(["converge-ode", "--q", "1", "--s", "2", "--steps", "16,32", "--out", str(out)]) == 1
