"""Various utility classes and helper functions for the ABTK package.

Submodules:

* `params`: `FrozenParams`, an immutable, hashable and YAML-serializable parameter mapping echoed by every report.
* `io`: writing tables and reports (CSV, JSON, YAML) and reading YAML config files.
* `parallel`: an order-preserving `parallel_map` over a pathos process pool.
"""
