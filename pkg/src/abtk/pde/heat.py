"""Fully discrete solution of the heat equation u_t = u_xx + f by the block integrator."""

from collections import namedtuple
from dataclasses import dataclass
from typing import Callable

import numpy as np
import pandas as pd
from scipy.linalg import expm
from tqdm import tqdm

from abtk.integrator.config import IntegratorConfig
from abtk.integrator.matrices import StepperMatrices, build_stepper
from abtk.integrator.scheme import RhsEvaluator, init_vector, propagate, reconstruct
from abtk.pde.spatial import SpatialOperator
from abtk.util.params import FrozenParams

BLOWUP_FACTOR = 1e3

StabilityCheck = namedtuple("StabilityCheck", ["holds", "margin", "first_violation"])


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Reconstructed spatial solutions at every computed time level.

    Attributes:
        times: shape `(n_levels,)`, strictly increasing

        states: real parts of the reconstructions, shape `(n_levels, n_h)`

        norms: h-weighted L² norms of `states`

        forcing_norms: L² norms of the forcing at each level (zeros when unforced)

        blew_up: whether a norm exceeded the cap; stepping stops at that level

        blowup_index: the level where it did, or None
    """

    times: np.ndarray
    states: np.ndarray
    norms: np.ndarray
    forcing_norms: np.ndarray
    nodes: np.ndarray
    blew_up: bool
    blowup_index: int | None
    params: FrozenParams

    @property
    def tau(self) -> float:
        return self.params["tau"]

    def to_dataframe(self) -> pd.DataFrame:
        """Long format, one row per (t, x)."""
        n_levels, n_h = self.states.shape
        return pd.DataFrame(
            {
                "t": np.repeat(self.times, n_h),
                "x": np.tile(self.nodes, n_levels),
                "u": self.states.ravel(),
            }
        )

    def summary(self) -> dict:
        return {
            "n_levels": len(self.times),
            "final_time": float(self.times[-1]),
            "initial_norm": float(self.norms[0]),
            "final_norm": float(self.norms[-1]),
            "max_norm": float(np.max(self.norms)),
            "blew_up": self.blew_up,
            "blowup_index": self.blowup_index,
            "norms": [float(n) for n in self.norms],
        }


def _on_nodes(value, nodes: np.ndarray) -> np.ndarray:
    if callable(value):
        value = value(nodes)
    return np.broadcast_to(np.asarray(value, dtype=float), nodes.shape).copy()


def heat_rhs(spatial: SpatialOperator, forcing: Callable | None = None) -> RhsEvaluator:
    """f(t, u) = M⁻¹K u + f_h(t) on the grid, with the constant jacobian M⁻¹K."""
    if spatial.has_identity_mass:
        stiffness, apply = spatial.K, spatial.apply
    else:
        stiffness = np.linalg.solve(spatial.M, spatial.K)

        def apply(u: np.ndarray) -> np.ndarray:
            return stiffness @ u

    if forcing is None:
        return RhsEvaluator(lambda t, u: apply(u), lambda t, u: stiffness)
    return RhsEvaluator(
        lambda t, u: apply(u) + forcing(t, spatial.nodes),
        lambda t, u: stiffness,
    )


def heat_solve(
    cfg: IntegratorConfig,
    spatial: SpatialOperator,
    u0,
    T: float | None = None,
    n_steps: int | None = None,
    forcing: Callable | None = None,
    t0: float = 0.0,
    cap_factor: float = BLOWUP_FACTOR,
    stepper: StepperMatrices | None = None,
    verbose: bool = False,
) -> Trajectory:
    """Run the block integrator on the semi-discrete heat equation.

    The iterator is applied to the whole spatial vector at once (one Newton step for this linear problem). Blow-up is data: once the norm exceeds `cap_factor` times the initial norm the run stops and the trajectory is flagged.

    Args:
        cfg: the time-stepping configuration

        spatial: stiffness and mass matrices

        u0: initial data, a function of the nodes or an array

        T: final time; must be a multiple of τ up to round-off

        n_steps: number of steps, instead of `T`

        forcing: f(t, x), complex t allowed; None for the homogeneous problem

        cap_factor: blow-up threshold relative to the initial norm
    """
    if (T is None) == (n_steps is None):
        raise ValueError("Give exactly one of T and n_steps.")
    if n_steps is None:
        n_steps = int(round((T - t0) / cfg.tau))
        if not np.isclose(n_steps * cfg.tau, T - t0, rtol=1e-9, atol=1e-12):
            raise ValueError(f"τ={cfg.tau} does not divide the time span {T - t0}.")
    stepper = build_stepper(cfg) if stepper is None else stepper
    rhs = heat_rhs(spatial, forcing)

    initial = _on_nodes(u0, spatial.nodes)
    state = init_vector(cfg, stepper, rhs, initial, t0=t0)
    cap = cap_factor * max(spatial.norm(initial), np.finfo(float).tiny)

    def forcing_norm(t: float) -> float:
        return 0.0 if forcing is None else spatial.norm(np.real(forcing(t, spatial.nodes)))

    states = [np.real(reconstruct(state))]
    forcing_norms = [forcing_norm(t0)]
    blowup_index = None
    for n in tqdm(range(1, n_steps + 1), disable=not verbose, desc="heat"):
        state = propagate(cfg, stepper, state, rhs)
        states.append(np.real(reconstruct(state)))
        forcing_norms.append(forcing_norm(t0 + n * cfg.tau))
        if not spatial.norm(states[-1]) <= cap:
            blowup_index = n
            break

    states = np.array(states)
    params = FrozenParams(cfg.to_dict(), h=spatial.h, n_h=spatial.n_h, bc=spatial.bc, n_steps=n_steps)
    return Trajectory(
        times=t0 + cfg.tau * np.arange(len(states)),
        states=states,
        norms=np.array([spatial.norm(u) for u in states]),
        forcing_norms=np.array(forcing_norms),
        nodes=spatial.nodes,
        blew_up=blowup_index is not None,
        blowup_index=blowup_index,
        params=params,
    )


def l2_stability_check(traj: Trajectory, forcing_norms: np.ndarray | None = None, rtol: float = 1e-12) -> StabilityCheck:
    """Check ‖u^{n+1}‖ ≤ ‖u^0‖ + τ Σ_{ν≤n} ‖f^ν‖ at every level.

    Returns:
        `holds`, the worst `margin` (right minus left side, negative when violated) and the `first_violation` level or None
    """
    forcing_norms = traj.forcing_norms if forcing_norms is None else np.asarray(forcing_norms)
    budget = traj.norms[0] + traj.tau * np.cumsum(forcing_norms[:-1])
    margins = budget - traj.norms[1:]
    slack = rtol * max(traj.norms[0], 1.0)
    violated = np.flatnonzero(margins < -slack)
    first = int(violated[0]) + 1 if violated.size else None
    margin = float(np.min(margins)) if margins.size else float("inf")
    return StabilityCheck(holds=first is None, margin=margin, first_violation=first)


def semi_discrete_exact(spatial: SpatialOperator, t: float, u0=np.cos) -> np.ndarray:
    """exp(tM⁻¹K) u0, the exact solution of the unforced semi-discrete problem.

    With periodic K and u0 = cos this is e^{μ_h t} cos(x) with μ_h = -(4/h²) sin²(h/2).
    """
    stiffness = spatial.K if spatial.has_identity_mass else np.linalg.solve(spatial.M, spatial.K)
    return expm(t * stiffness) @ _on_nodes(u0, spatial.nodes)
