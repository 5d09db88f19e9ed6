"""Result containers shared by the experiment drivers."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from abtk.util.io import FORMATS, write_report, write_table
from abtk.util.params import FrozenParams

CHECK_KINDS = ("abs", "rel", "exact", "at_least", "at_most", "flag")


@dataclass(frozen=True)
class TargetCheck:
    """One observed value against a reference value.

    `kind` decides what passing means: within `tol` absolutely ("abs") or relatively ("rel"), equal ("exact"), not below ("at_least") or not above ("at_most") the expected value, or the same truth value ("flag").
    """

    name: str
    expected: Any
    observed: Any
    tol: float
    kind: str
    passed: bool

    @classmethod
    def evaluate(
        cls, name: str, expected: Any, observed: Any, tol: float = 0.0, kind: str = "abs"
    ) -> "TargetCheck":
        if kind not in CHECK_KINDS:
            raise ValueError(f"Unknown check kind '{kind}'; use one of {CHECK_KINDS}.")
        if kind == "flag":
            passed = bool(observed) == bool(expected)
        elif observed is None or (isinstance(observed, float) and np.isnan(observed)):
            passed = False
        elif kind == "abs":
            passed = abs(observed - expected) <= tol
        elif kind == "rel":
            passed = abs(observed - expected) <= tol * abs(expected)
        elif kind == "exact":
            passed = observed == expected
        elif kind == "at_least":
            passed = observed >= expected - tol
        else:
            passed = observed <= expected + tol
        return cls(name, _scalar(expected), _scalar(observed), tol, kind, bool(passed))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "tol": self.tol,
            "kind": self.kind,
            "passed": self.passed,
        }


def _scalar(value: Any) -> Any:
    return value.item() if isinstance(value, np.generic) else value


@dataclass
class ExperimentReport:
    """Named tables plus target checks, with the parameters that produced them."""

    name: str
    params: FrozenParams
    tables: dict[str, pd.DataFrame] = field(default_factory=dict)
    checks: list[TargetCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[TargetCheck]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str, expected: Any, observed: Any, tol: float = 0.0, kind: str = "abs") -> TargetCheck:
        result = TargetCheck.evaluate(name, expected, observed, tol, kind)
        self.checks.append(result)
        return result

    def checks_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame.from_records([c.to_dict() for c in self.checks], columns=list(TargetCheck.__dataclass_fields__))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params.to_dict(),
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "tables": {
                key: df.astype(object).where(df.notna(), None).to_dict(orient="records")
                for key, df in self.tables.items()
            },
        }

    def write(self, path: str | Path, fmt: str = "json") -> list[Path]:
        """Write the report.

        JSON and YAML put everything in one file. CSV writes one file per table, `<stem>_<table>.csv`, plus `<stem>_checks.csv`.

        Returns:
            the paths written
        """
        if fmt not in FORMATS:
            raise ValueError(f"Unknown output format '{fmt}'; use one of {FORMATS}.")
        path = Path(path)
        if fmt != "csv":
            write_report(self.to_dict(), path, fmt)
            return [path]
        written = []
        for key, df in {**self.tables, "checks": self.checks_dataframe()}.items():
            target = path.with_name(f"{path.stem}_{key}.csv")
            write_table(df, target, "csv")
            written.append(target)
        return written

    def summary(self) -> str:
        status = "passed" if self.passed else f"FAILED ({len(self.failures)} of {len(self.checks)})"
        lines = [f"{self.name}: {status}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}: observed {c.observed}, expected {c.expected} ({c.kind}, tol {c.tol:g})")
        return "\n".join(lines)


@dataclass(frozen=True, eq=False)
class ConvergenceTable:
    """Terminal-time errors for a doubling sequence of step counts.

    `rows` has columns `steps` (1/τ), `tau`, `error`, `order` and `status`; `order` is log(E_prev/E)/log(N/N_prev), NaN in the first row.
    """

    rows: pd.DataFrame
    params: FrozenParams

    @property
    def errors(self) -> np.ndarray:
        return self.rows["error"].to_numpy()

    @property
    def orders(self) -> np.ndarray:
        return self.rows["order"].to_numpy()

    def settled(self, tol: float = 0.1) -> bool:
        """Whether the last two observed orders agree within `tol`."""
        orders = self.orders[~np.isnan(self.orders)]
        return len(orders) >= 2 and abs(orders[-1] - orders[-2]) <= tol

    def to_dataframe(self) -> pd.DataFrame:
        return self.rows.copy()
