"""The Allen-Cahn ODE u' = -(u³ - u)/ε², a stiff nonlinear problem with a closed-form solution."""

import numpy as np

from abtk.integrator.scheme import RhsEvaluator


def allen_cahn_exact(t, u0: float, eps: float):
    """u(t) = u0 / sqrt(e^{-2t/ε²} + u0²(1 - e^{-2t/ε²})).

    Written as u0 / sqrt(1 + (u0² - 1)(1 - e^{-2t/ε²})) with `expm1`, so large t/ε² underflows to the attractor instead of overflowing.
    """
    if not 0 < u0 <= 1:
        raise ValueError(f"Initial value must lie in (0, 1], got u0={u0}.")
    if eps <= 0:
        raise ValueError(f"ε must be positive, got eps={eps}.")
    relaxed = -np.expm1(-2 * np.asarray(t, dtype=float) / eps**2)
    value = u0 / np.sqrt(1 + (u0**2 - 1) * relaxed)
    return value if np.ndim(value) else float(value)


def allen_cahn_rhs(eps: float) -> RhsEvaluator:
    """f(t, u) = -(u³ - u)/ε² with its jacobian -(3u² - 1)/ε²."""
    scale = 1.0 / eps**2
    return RhsEvaluator(
        lambda t, u: -scale * (u**3 - u),
        lambda t, u: np.diag(np.atleast_1d(-scale * (3 * u**2 - 1))),
    )
