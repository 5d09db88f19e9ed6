"""The one-dimensional heat equation, discretised in space by finite differences and in time by the block integrator.

Submodules:

* `spatial`: grids on [-π, π] and the Dirichlet or periodic second-difference operator.
* `amplification`: the Kronecker amplification operator, its spectral radius and the CFL step bound.
* `heat`: the fully discrete solver, the L² stability inequality and the semi-discrete exact solution.
"""

from abtk.pde.amplification import (
    AmplificationOperator,
    amplification_radius,
    cfl_crossing,
    cfl_max_step,
    kronecker_matrix,
)
from abtk.pde.heat import (
    StabilityCheck,
    Trajectory,
    heat_solve,
    l2_stability_check,
    semi_discrete_exact,
)
from abtk.pde.spatial import SpatialOperator, heat_grid, heat_operator, laplacian_1d
