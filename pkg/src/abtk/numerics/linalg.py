"""Dense eigenvalues, finite-difference jacobians and Newton's method."""

from typing import Callable

import numpy as np
from scipy.linalg import eigvals

from abtk.numerics.errors import ConvergenceError


def dense_eigvals(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a dense square matrix, with multiplicity.

    Args:
        m: 2-D array, real or complex

    Returns:
        complex array of the `m.shape[0]` eigenvalues, unordered
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"Eigenvalues need a square matrix, got shape {m.shape}.")
    return eigvals(m)


def spectral_radius(m: np.ndarray) -> float:
    return float(np.max(np.abs(dense_eigvals(m))))


def finite_difference_jacobian(
    func: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    step_scale: float = 1e-7,
) -> np.ndarray:
    """Forward-difference jacobian of a vector map, with step `step_scale * (1 + |x_i|)` per component.

    For holomorphic maps of complex vectors the real-direction difference quotient is the complex derivative.
    """
    x = np.atleast_1d(np.asarray(x))
    base = np.atleast_1d(func(x)).reshape(-1)
    flat = x.reshape(-1)
    dtype = np.result_type(base, flat, float)
    jac = np.empty((base.size, flat.size), dtype=dtype)
    for i in range(flat.size):
        step = step_scale * (1.0 + abs(flat[i]))
        shifted = flat.astype(dtype, copy=True)
        shifted[i] += step
        jac[:, i] = (np.atleast_1d(func(shifted.reshape(x.shape))).reshape(-1) - base) / step
    return jac


def newton_solve(
    residual: Callable[[np.ndarray], np.ndarray],
    jacobian: Callable[[np.ndarray], np.ndarray] | None,
    x0,
    tol: float = 1e-12,
    max_iter: int = 50,
) -> np.ndarray:
    """Solve `residual(x) = 0` by Newton's method.

    Args:
        residual: map from an array shaped like `x0` to an array of residuals

        jacobian: map from `x` to the (flattened) jacobian matrix of `residual`; None falls back to forward differences

        x0: starting point, scalar or array

        tol: stop once `max |residual(x)| <= tol`

        max_iter: maximum number of Newton corrections

    Returns:
        the solution, shaped like `x0`
    """
    x = np.array(x0, copy=True)
    if not np.iscomplexobj(x):
        x = x.astype(float)
    shape = x.shape
    if jacobian is None:
        jacobian = lambda y: finite_difference_jacobian(residual, y)  # noqa: E731

    for iteration in range(max_iter + 1):
        r = np.atleast_1d(residual(x)).reshape(-1)
        if np.max(np.abs(r)) <= tol:
            return x
        if iteration == max_iter:
            break

        jac = np.atleast_2d(jacobian(x))
        try:
            dx = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError as err:
            raise np.linalg.LinAlgError(
                f"Newton iteration hit a singular jacobian at iteration {iteration}."
            ) from err
        if not np.all(np.isfinite(dx)):
            raise np.linalg.LinAlgError(
                f"Newton iteration hit a singular jacobian at iteration {iteration}."
            )
        x = (x.reshape(-1) + dx).reshape(shape)

    raise ConvergenceError(
        f"Newton iteration exceeded max-iter={max_iter} without reaching tol={tol} "
        f"(last residual {np.max(np.abs(r)):.3e}).",
        last_iterate=x,
    )
