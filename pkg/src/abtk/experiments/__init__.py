"""Reproduction drivers for the reference tables, and the `abtk` command line.

Submodules:

* `allen_cahn`: exact solution and right-hand side of the Allen-Cahn ODE.
* `targets`: the reference values each driver checks against.
* `reports`: `TargetCheck`, `ExperimentReport` and `ConvergenceTable`.
* `drivers`: one function per table (convergence, radii, max orders, heat blow-up, appendix witnesses).
* `cli`: the argparse front end.
"""

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
