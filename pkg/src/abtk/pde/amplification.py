"""Amplification operator of the fully discrete heat scheme and its CFL bound.

With M = I the scheme advances the stacked vector by G = A⊗I + r(B(α)⊗K). Diagonalising K decouples G into the s×s blocks R(τμ) = A + (τμ/α)B(α), one per eigenvalue μ of K, so ρ(G) = max_μ ρ(R(τμ)).
"""

from dataclasses import dataclass
from functools import partial

import numpy as np

from abtk.integrator.config import IntegratorConfig
from abtk.integrator.matrices import StepperMatrices, build_stepper
from abtk.numerics.errors import CrossCheckError
from abtk.numerics.linalg import spectral_radius
from abtk.pde.spatial import SpatialOperator
from abtk.stability.radius import parabolic_radius
from abtk.util.parallel import parallel_map

FULL_SIZE_CAP = 512
AGREEMENT_TOL = 1e-6
METHODS = ("reduced", "full", "both")


@dataclass(frozen=True, eq=False)
class AmplificationOperator:
    cfg: IntegratorConfig
    spatial: SpatialOperator
    reduced_radius: float | None
    full_radius: float | None = None

    @property
    def radius(self) -> float:
        return self.reduced_radius if self.reduced_radius is not None else self.full_radius

    @property
    def stable(self) -> bool:
        return self.radius < 1.0


def kronecker_matrix(cfg: IntegratorConfig, spatial: SpatialOperator, stepper: StepperMatrices | None = None) -> np.ndarray:
    """G = A⊗E + r(B(α)⊗K)(I⊗M)⁻¹, shape `(s·n_h, s·n_h)`."""
    stepper = build_stepper(cfg) if stepper is None else stepper
    eye = np.eye(spatial.n_h)
    stiffness = spatial.K if spatial.has_identity_mass else spatial.K @ np.linalg.inv(spatial.M)
    return np.kron(stepper.A, eye) + cfg.r * np.kron(stepper.B_alpha, stiffness)


def _mode_radius(mu: float, stepper: StepperMatrices, tau: float) -> float:
    return spectral_radius(stepper.stability_matrix(tau * mu))


def amplification_radius(
    cfg: IntegratorConfig,
    spatial: SpatialOperator,
    method: str = "reduced",
    n_jobs: int = 1,
    stepper: StepperMatrices | None = None,
) -> AmplificationOperator:
    """ρ(G) per eigenvalue of K ("reduced"), from the assembled Kronecker matrix ("full"), or both.

    "both" raises `CrossCheckError` when the two differ by more than 1e-6. The reduced path needs M = I and the full one is capped at s·n_h ≤ 512.
    """
    if method not in METHODS:
        raise ValueError(f"Unknown method '{method}'; use one of {METHODS}.")
    stepper = build_stepper(cfg) if stepper is None else stepper

    reduced = full = None
    if method in ("reduced", "both"):
        if not spatial.has_identity_mass:
            raise ValueError("The reduced spectral radius needs an identity mass matrix.")
        radii = parallel_map(
            partial(_mode_radius, stepper=stepper, tau=cfg.tau),
            spatial.eigenvalues(),
            n_jobs=n_jobs,
        )
        reduced = float(max(radii))
    if method in ("full", "both"):
        size = cfg.s * spatial.n_h
        if size > FULL_SIZE_CAP:
            raise ValueError(f"Kronecker assembly of size {size} exceeds the cap of {FULL_SIZE_CAP}.")
        full = spectral_radius(kronecker_matrix(cfg, spatial, stepper))
    if method == "both" and abs(reduced - full) > AGREEMENT_TOL:
        raise CrossCheckError(
            f"Reduced ({reduced:.12g}) and Kronecker ({full:.12g}) amplification radii disagree."
        )
    return AmplificationOperator(cfg=cfg, spatial=spatial, reduced_radius=reduced, full_radius=full)


def cfl_max_step(q: int, s: int, h: float, alpha: float = 1.0) -> float:
    """τ_max = r_n h²/4, the step below which ρ(G) < 1 for any K with ρ(K) ≤ 4/h²."""
    radius = parabolic_radius(q, delta_q=int(s == q), alpha=alpha, rule="delta_term").radius
    return radius * h**2 / 4


def cfl_crossing(
    cfg: IntegratorConfig,
    spatial: SpatialOperator,
    lo: float | None = None,
    hi: float | None = None,
    tol: float = 1e-6,
    max_iter: int = 200,
) -> float:
    """Bisect on τ (keeping q, s and α) for the step where ρ(G) first exceeds one.

    Args:
        lo, hi: initial bracket; default to 1/2 and 2 times `cfl_max_step`, and `hi` is doubled until it is unstable

        tol: relative width of the final bracket
    """
    stepper = build_stepper(cfg)
    # α is fixed, so the matrices do not change with τ
    unstable = lambda tau: amplification_radius(cfg.with_tau(tau), spatial, stepper=stepper).radius > 1 + 1e-9  # noqa: E731

    base = cfl_max_step(cfg.q, cfg.s, spatial.h, cfg.alpha)
    lo = 0.5 * base if lo is None else lo
    hi = 2.0 * base if hi is None else hi
    if unstable(lo):
        raise ValueError(f"Lower bracket τ={lo} is already unstable.")
    for _ in range(60):
        if unstable(hi):
            break
        hi *= 2
    else:
        raise ValueError("No unstable step size found above the bracket.")

    for _ in range(max_iter):
        if hi - lo <= tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if unstable(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
