import json
from pathlib import Path
from typing import Any

import pandas as pd
from yaml import Dumper, Loader, dump, load

FORMATS = ("csv", "json", "yaml")


def write_table(df: pd.DataFrame, fn: str | Path, fmt: str = "csv") -> None:
    """Write a table as CSV, as JSON records, or as a YAML list of records."""
    fn = Path(fn)
    if fmt == "csv":
        df.to_csv(fn, index=False)
    elif fmt == "json":
        df.to_json(fn, orient="records", indent=2)
    elif fmt == "yaml":
        with open(fn, "w") as f:
            dump(json.loads(df.to_json(orient="records")), f, Dumper=Dumper)
    else:
        raise ValueError(f"Unknown output format '{fmt}'; use one of {FORMATS}.")
    print(f"Wrote a {fmt.upper()} table to {fn}.")


def write_report(data: dict[str, Any], fn: str | Path, fmt: str = "json") -> None:
    """Write a nested report (plain dicts, lists and scalars) as JSON or YAML."""
    fn = Path(fn)
    with open(fn, "w") as f:
        if fmt == "json":
            json.dump(data, f, indent=2, default=str)
        elif fmt == "yaml":
            dump(data, f, Dumper=Dumper, sort_keys=False)
        else:
            raise ValueError(f"Reports are written as json or yaml, not '{fmt}'.")
    print(f"Wrote a {fmt.upper()} report to {fn}.")


def read_config(fn: str | Path) -> dict[str, Any]:
    """Read a YAML mapping of option names to values; an empty file is an empty mapping."""
    with open(fn, "r") as f:
        config = load(f, Loader=Loader)
    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ValueError(f"Config file {fn} must hold a mapping, got {type(config).__name__}.")
    return config
