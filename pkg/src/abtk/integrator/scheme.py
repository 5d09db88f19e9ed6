"""Iterator, propagator and reconstruction of the block integrator.

A run keeps a vector of s values attached to the contour nodes `t_n + r ω_j` around the current time level. The *iterator* produces the first vector implicitly, the explicit *propagator* advances it,

    u^[n+1] = A u^[n] + r B(α) f(t_n + r ω, u^[n]),

and the scalar approximation u^n is the arithmetic mean of the vector. Node values may be scalars (state vector of shape `(s,)`) or spatial vectors (shape `(s, n)`).
"""

from collections import namedtuple
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import block_diag
from tqdm import tqdm

from abtk.integrator.config import IntegratorConfig
from abtk.integrator.matrices import StepperMatrices, build_stepper
from abtk.numerics.linalg import finite_difference_jacobian, newton_solve


@dataclass(frozen=True, eq=False)
class SolutionVector:
    """The node values u^[n] at one time level.

    Attributes:
        values: complex array of shape `(s,)` or `(s, n)`

        time_index: the level n

        base_time: t_0, so that t_n = base_time + n τ
    """

    values: np.ndarray
    time_index: int = 0
    base_time: float = 0.0

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=complex)
        if values.ndim == 0:
            raise ValueError("A solution vector needs one value per contour node.")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def s(self) -> int:
        return self.values.shape[0]

    def time(self, cfg: IntegratorConfig) -> float:
        return self.base_time + self.time_index * cfg.tau

    def conjugate_asymmetry(self) -> float:
        """max |u_{s-j} - conj(u_j)|, zero for states of real problems (checked, never enforced).

        Nodes ω_j and ω_{s-j} are complex conjugates and ω_s = 1 is real.
        """
        s = self.s
        mirrored = self.values[np.r_[np.arange(s - 2, -1, -1), s - 1]]
        return float(np.max(np.abs(self.values - np.conj(mirrored))))


class RhsEvaluator:
    """The right-hand side f(t, u) of an ODE system, with an optional analytic jacobian ∂f/∂u.

    Both callables must accept complex times and states; they are only ever evaluated on the disk of radius r around each real time level.
    """

    def __init__(
        self,
        func: Callable,
        jacobian: Callable | None = None,
        step_scale: float = 1e-7,
    ) -> None:
        self.func = func
        self._jacobian = jacobian
        self.step_scale = step_scale

    def __call__(self, t: complex, u):
        return self.func(t, u)

    def jacobian(self, t: complex, u) -> np.ndarray:
        """∂f/∂u at (t, u) as a square matrix; forward differences when no jacobian was given."""
        if self.has_jacobian:
            return np.atleast_2d(self._jacobian(t, u))
        return finite_difference_jacobian(
            lambda v: self.func(t, v.reshape(np.shape(u))),
            np.atleast_1d(u),
            step_scale=self.step_scale,
        )

    @property
    def has_jacobian(self) -> bool:
        return self._jacobian is not None

    @classmethod
    def linear(cls, lam: complex) -> "RhsEvaluator":
        """The Dahlquist problem f(t, u) = λ u."""
        return cls(
            lambda t, u: lam * u,
            lambda t, u: lam * np.eye(np.size(u)),
        )

    @classmethod
    def zero(cls) -> "RhsEvaluator":
        return cls(
            lambda t, u: np.zeros_like(u, dtype=complex),
            lambda t, u: np.zeros((np.size(u), np.size(u))),
        )


def node_times(cfg: IntegratorConfig, stepper: StepperMatrices, t_n: float) -> np.ndarray:
    return t_n + cfg.r * stepper.nodes


def evaluate_nodes(rhs: RhsEvaluator, times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """f at every contour node: exactly one rhs evaluation per node."""
    return np.array([rhs(t, u) for t, u in zip(times, values)], dtype=complex)


def init_vector(
    cfg: IntegratorConfig,
    stepper: StepperMatrices,
    rhs: RhsEvaluator,
    u0,
    tol: float = 1e-12,
    max_iter: int = 50,
    t0: float = 0.0,
    use_alpha: bool = False,
) -> SolutionVector:
    """Solve the iterator equation u^[0] = u0 𝟙 + r B(0) f(t0 + r ω, u^[0]) by Newton's method from u0 𝟙.

    For a linear rhs with exact jacobian this is one linear solve.

    Args:
        cfg: the configuration

        stepper: its matrices

        rhs: the right-hand side

        u0: initial value, scalar or spatial vector

        tol: residual tolerance of the Newton solve

        max_iter: Newton iteration cap; failures propagate as `ConvergenceError`

        t0: initial time

        use_alpha: solve with B(α) instead of B(0). The result then sits on the contour of the *next* level and is returned with `time_index=1`.

    Returns:
        the initial solution vector
    """
    u0 = np.asarray(u0, dtype=complex)
    shape = (cfg.s,) + u0.shape
    start = np.broadcast_to(u0, shape).astype(complex)
    B = stepper.B_alpha if use_alpha else stepper.B_zero
    times = node_times(cfg, stepper, t0)
    n = max(u0.size, 1)

    def residual(x: np.ndarray) -> np.ndarray:
        return x - start - cfg.r * (B @ evaluate_nodes(rhs, times, x))

    def jacobian(x: np.ndarray) -> np.ndarray:
        blocks = [rhs.jacobian(t, u) for t, u in zip(times, x)]
        return np.eye(cfg.s * n) - cfg.r * np.kron(B, np.eye(n)) @ block_diag(*blocks)

    values = newton_solve(residual, jacobian, start, tol=tol, max_iter=max_iter)
    return SolutionVector(values, time_index=int(use_alpha), base_time=t0)


def propagate(
    cfg: IntegratorConfig,
    stepper: StepperMatrices,
    state: SolutionVector,
    rhs: RhsEvaluator,
) -> SolutionVector:
    """One explicit step u^[n+1] = A u^[n] + r B(α) f(t_n + r ω, u^[n])."""
    if state.s != cfg.s:
        raise ValueError(f"State has {state.s} node values but the configuration has s={cfg.s}.")
    f = evaluate_nodes(rhs, node_times(cfg, stepper, state.time(cfg)), state.values)
    values = stepper.A @ state.values + cfg.r * (stepper.B_alpha @ f)
    return SolutionVector(values, state.time_index + 1, state.base_time)


def reconstruct(state: SolutionVector):
    """The arithmetic mean of the node values.

    The complex mean is returned as is; for real problems its imaginary part is a round-off diagnostic.
    """
    mean = state.values.mean(axis=0)
    return complex(mean) if mean.ndim == 0 else mean


def segment_quadrature(
    cfg: IntegratorConfig, stepper: StepperMatrices, samples: np.ndarray
):
    """(r/s) 𝟙ᵀ B(α) f, the quadrature of f over [t_n, t_n + τ] implied by one propagator step.

    Args:
        samples: f at the s nodes t_n + r ω_j, shape `(s,)` or `(s, n)`
    """
    weighted = cfg.r * (stepper.B_alpha @ np.asarray(samples, dtype=complex)).mean(axis=0)
    return complex(weighted) if np.ndim(weighted) == 0 else weighted


##############################################################################
# Whole trajectories
##############################################################################

ODEResult = namedtuple("ODEResult", ["times", "values", "final_state"])


def integrate(
    cfg: IntegratorConfig,
    rhs: RhsEvaluator,
    u0,
    n_steps: int,
    t0: float = 0.0,
    stepper: StepperMatrices | None = None,
    tol: float = 1e-12,
    max_iter: int = 50,
    use_alpha: bool = False,
    verbose: bool = False,
) -> ODEResult:
    """Initialise and propagate to level `n_steps`, recording the reconstruction at every level.

    Returns:
        an `ODEResult` with `times` (levels 0..n_steps, or 1..n_steps with `use_alpha`), the complex reconstructed `values`, and the `final_state`
    """
    stepper = build_stepper(cfg) if stepper is None else stepper
    state = init_vector(
        cfg, stepper, rhs, u0, tol=tol, max_iter=max_iter, t0=t0, use_alpha=use_alpha
    )
    first = state.time_index
    values = [reconstruct(state)]
    for _ in tqdm(range(first, n_steps), disable=not verbose, desc="propagating"):
        state = propagate(cfg, stepper, state, rhs)
        values.append(reconstruct(state))
    times = t0 + cfg.tau * np.arange(first, n_steps + 1)
    return ODEResult(times, np.array(values), state)
