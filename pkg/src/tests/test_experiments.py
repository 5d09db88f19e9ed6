import json
import math

import numpy as np
import pandas as pd
import pytest
import yaml

from abtk.experiments import targets
from abtk.experiments.allen_cahn import allen_cahn_exact, allen_cahn_rhs
from abtk.experiments.drivers import (
    ode_convergence_report,
    run_appendix_witnesses,
    run_heat_blowup,
    run_max_order_table,
    run_ode_convergence,
    run_radius_table,
)
from abtk.experiments.reports import ConvergenceTable, ExperimentReport, TargetCheck
from abtk.util.params import FrozenParams


class TestAllenCahn:
    def test_initial_value(self):
        assert allen_cahn_exact(0.0, 0.01, 0.5) == pytest.approx(0.01)

    def test_attractor(self):
        assert allen_cahn_exact(100.0, 0.01, 0.5) == pytest.approx(1.0)

    def test_solves_the_ode(self):
        t, dt, eps, u0 = 0.4, 1e-6, 0.5, 0.01
        u = allen_cahn_exact(t, u0, eps)
        slope = (allen_cahn_exact(t + dt, u0, eps) - allen_cahn_exact(t - dt, u0, eps)) / (2 * dt)
        assert slope == pytest.approx(allen_cahn_rhs(eps)(t, u), rel=1e-6)

    @pytest.mark.parametrize("u0, eps", [(0.0, 0.5), (1.5, 0.5), (0.1, 0.0)])
    def test_invalid(self, u0, eps):
        with pytest.raises(ValueError):
            allen_cahn_exact(1.0, u0, eps)


class TestTargetCheck:
    @pytest.mark.parametrize(
        "expected, observed, tol, kind, passed",
        [
            (1.0, 1.05, 0.1, "abs", True),
            (1.0, 1.2, 0.1, "abs", False),
            (100.0, 104.0, 0.05, "rel", True),
            (3, 3, 0.0, "exact", True),
            (3, 4, 0.0, "exact", False),
            (31, 40, 0.0, "at_least", True),
            (31, 30, 0.0, "at_least", False),
            (1e-10, 1e-12, 0.0, "at_most", True),
            (True, False, 0.0, "flag", False),
            (1.0, float("nan"), 1.0, "abs", False),
            (1.0, None, 1.0, "rel", False),
        ],
    )
    def test_kinds(self, expected, observed, tol, kind, passed):
        assert TargetCheck.evaluate("x", expected, observed, tol, kind).passed is passed

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            TargetCheck.evaluate("x", 1, 1, kind="close")

    def test_numpy_scalars_unwrapped(self):
        check = TargetCheck.evaluate("x", np.float64(1.0), np.int64(1), kind="exact")
        assert type(check.expected) is float
        assert type(check.observed) is int


class TestExperimentReport:
    def report(self):
        report = ExperimentReport(
            "demo",
            FrozenParams(q=2, radii=[0.5, 0.4]),
            tables={"values": pd.DataFrame({"n": [1, 2], "value": [0.5, float("nan")]})},
        )
        report.check("first", 1.0, 1.0, 1e-12)
        return report

    def test_passed(self):
        report = self.report()
        assert report.passed
        report.check("second", 1.0, 2.0, 0.1)
        assert not report.passed
        assert [c.name for c in report.failures] == ["second"]
        assert "FAILED (1 of 2)" in report.summary()

    def test_write_csv(self, tmp_path):
        written = self.report().write(tmp_path / "demo.csv", "csv")
        assert [p.name for p in written] == ["demo_values.csv", "demo_checks.csv"]
        checks = pd.read_csv(tmp_path / "demo_checks.csv")
        assert list(checks["name"]) == ["first"]

    def test_write_json(self, tmp_path):
        self.report().write(tmp_path / "demo.json", "json")
        data = json.loads((tmp_path / "demo.json").read_text())
        assert data["params"] == {"q": 2, "radii": [0.5, 0.4]}
        assert data["tables"]["values"][1]["value"] is None
        assert data["passed"] is True

    def test_write_yaml(self, tmp_path):
        self.report().write(tmp_path / "demo.yml", "yaml")
        data = yaml.safe_load((tmp_path / "demo.yml").read_text())
        assert data["name"] == "demo"
        assert data["checks"][0]["kind"] == "abs"

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            self.report().write(tmp_path / "demo.xml", "xml")


class TestConvergence:
    def test_settled(self):
        rows = pd.DataFrame({"steps": [1, 2, 4], "error": [1.0, 0.25, 0.0625], "order": [np.nan, 2.0, 2.0]})
        assert ConvergenceTable(rows, FrozenParams()).settled()
        rows["order"] = [np.nan, 1.0, 2.0]
        assert not ConvergenceTable(rows, FrozenParams()).settled()

    @pytest.mark.parametrize("q, s, order", [(1, 2, 1.0), (2, 3, 2.0), (2, 2, 1.0)])
    def test_observed_order(self, q, s, order):
        table = run_ode_convergence(q, s, steps=(128, 256, 512))
        assert list(table.rows["status"]) == ["ok"] * 3
        assert np.isnan(table.orders[0])
        assert table.orders[-1] == pytest.approx(order, abs=0.2)

    def test_steps_must_double(self):
        with pytest.raises(ValueError):
            run_ode_convergence(2, 3, steps=(100, 300))

    def test_report_checks_reference_rows(self):
        report = ode_convergence_report(2, 3, steps=(128, 256))
        names = [c.name for c in report.checks]
        assert "error at 1/tau=128" in names
        assert "order at 1/tau=256" in names
        assert len(report.tables["convergence"]) == 2

    def test_single_node_column_unchecked(self):
        report = ode_convergence_report(1, 1, steps=(128, 256))
        assert not any(c.name.startswith("error at") for c in report.checks)
        deviation = next(c for c in report.checks if c.name.startswith("reference errors not reproduced"))
        assert deviation.passed
        df = report.tables["convergence"]
        assert list(df["reference_error"]) == [2.299e-02, 2.669e-02]
        assert np.all(df["error"] > 10 * df["reference_error"])

    def test_reference_column(self):
        report = ode_convergence_report(2, 3, steps=(64, 128))
        df = report.tables["convergence"]
        assert np.isnan(df["reference_error"].iloc[0])
        assert df["reference_error"].iloc[1] == targets.ALLEN_CAHN[(2, 3)][128][0]


class TestStabilityTables:
    def test_radius_table(self):
        report = run_radius_table()
        assert report.passed, report.summary()
        df = report.tables["radius"]
        assert list(df["n"]) == [1, 2, 4, 6, 8, 10]
        assert df["radius_s_eq_q_delta_term"].iloc[0] == pytest.approx(1.0)

    def test_max_order_table(self):
        report = run_max_order_table(radii=(0.6, 0.5, 0.4), cross_check_orders=3)
        assert report.passed, report.summary()
        assert list(report.tables["max_order"]["max_order"]) == [2, 3, 7]
        assert len(report.tables["cross_check"]) == 9
        assert list(report.tables["decay"]["N"]) == list(range(8, 49))

    def test_lower_bound_radii(self):
        report = run_max_order_table(radii=(1 / math.e,), cross_check_orders=1)
        (check,) = [c for c in report.checks if c.name.startswith("max order")]
        assert check.kind == "at_least"
        assert check.passed


class TestHeatBlowup:
    def test_reference_radii_and_blowup(self):
        report = run_heat_blowup()
        df = report.tables["amplification"]
        assert list(df["factor"]) == [0.9, 1.0, 1.1]
        assert list(df["blew_up"]) == [False, False, True]
        for check in report.checks:
            if check.name.startswith(("rho(G)", "blow-up iff", "L2 violated")):
                assert check.passed, check


class TestAppendixWitnesses:
    def test_report(self):
        report = run_appendix_witnesses(seed=1, n_draws=5)
        assert report.passed, report.summary()
        assert len(report.checks) == 6
        assert len(report.tables["witnesses"]) == 30
