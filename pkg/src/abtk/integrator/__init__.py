"""The block Adams-Bashforth-type integrator on roots-of-unity contours.

Submodules:

* `config`: `IntegratorConfig`, the (q, s, r, α, τ, δ_q) tuple.
* `matrices`: roots of unity and the constant matrices A, S(α), F, B(α), B(0).
* `scheme`: the iterator (`init_vector`), the propagator, reconstruction, the per-step quadrature and whole-trajectory `integrate`.

    Examples:

        >>> from abtk.integrator import IntegratorConfig, RhsEvaluator, integrate
        >>> cfg = IntegratorConfig(q=2, s=3, tau=0.01)  # alpha = 1, r = tau
        >>> result = integrate(cfg, RhsEvaluator.linear(-1.0), 1.0, n_steps=100)
        >>> abs(result.values[-1].real - 0.36787944) < 1e-4
        True
"""

from abtk.integrator.config import IntegratorConfig
from abtk.integrator.matrices import (
    StepperMatrices,
    build_matrices,
    build_stepper,
    roots_of_unity,
)
from abtk.integrator.scheme import (
    ODEResult,
    RhsEvaluator,
    SolutionVector,
    init_vector,
    integrate,
    propagate,
    reconstruct,
    segment_quadrature,
)
