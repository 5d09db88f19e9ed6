"""The constant matrices of one ABTI configuration.

With nodes ω_j = exp(i2πj/s), j = 1..s (so ω_s = 1):

* `A` is the averaging matrix `ones((s, s)) / s`;
* `S(α)` is s×q with `σ_{j,k} = (α + ω_j)^k / k`, the integral of `x^{k-1}` from 0 to `α + ω_j`;
* `F` is q×s with `F[ν, k] = ω_k^{-ν} / s` for ν = 0..q-1, the trapezoidal rule for the first q Fourier (Taylor) coefficients on the circle;
* `B(α) = S(α) F`, and `B(0) = S(0) F` drives the initialisation.
"""

from dataclasses import dataclass

import numpy as np

from abtk.integrator.config import IntegratorConfig


def roots_of_unity(s: int) -> np.ndarray:
    """The s-th roots of unity ω_j = exp(i2πj/s), j = 1..s, with ω_s = 1 exactly."""
    if s < 1:
        raise ValueError(f"Need at least one root of unity, got s={s}.")
    angles = 2 * np.pi * np.arange(1, s + 1) / s
    nodes = np.cos(angles) + 1j * np.sin(angles)
    nodes[-1] = 1.0
    return nodes


def sigma_matrix(nodes: np.ndarray, q: int, alpha: float) -> np.ndarray:
    """S(α): shape `(s, q)`, entries `(α + ω_j)^k / k` for k = 1..q."""
    k = np.arange(1, q + 1)
    return (alpha + nodes[:, None]) ** k[None, :] / k[None, :]


def fourier_matrix(nodes: np.ndarray, q: int) -> np.ndarray:
    """F: shape `(q, s)`, entries `ω_k^{-ν} / s` for ν = 0..q-1."""
    s = len(nodes)
    nu = np.arange(q)
    return nodes[None, :] ** (-nu[:, None]) / s


@dataclass(frozen=True, eq=False)
class StepperMatrices:
    """Dense matrices of one configuration. Arrays are read-only, so a stepper can be shared between workers."""

    A: np.ndarray  # shape `(s, s)`
    S_alpha: np.ndarray  # shape `(s, q)`
    S_zero: np.ndarray  # shape `(s, q)`
    F: np.ndarray  # shape `(q, s)`
    B_alpha: np.ndarray  # shape `(s, s)`
    B_zero: np.ndarray  # shape `(s, s)`
    nodes: np.ndarray  # shape `(s,)`
    alpha: float

    @property
    def s(self) -> int:
        return len(self.nodes)

    @property
    def q(self) -> int:
        return self.F.shape[0]

    def stability_matrix(self, z: complex) -> np.ndarray:
        """R(z) = A + z B(α) / α, the amplification matrix of the Dahlquist problem."""
        return self.A + z * self.B_alpha / self.alpha


def build_stepper(cfg: IntegratorConfig) -> StepperMatrices:
    """Assemble A, S(α), F, B(α) and B(0) for a configuration."""
    return build_matrices(cfg.q, cfg.s, cfg.alpha)


def build_matrices(q: int, s: int, alpha: float) -> StepperMatrices:
    """Same as `build_stepper`, from the three parameters the matrices depend on."""
    if s < q:
        raise ValueError(f"Node count s={s} must be at least the expansion order q={q}.")
    nodes = roots_of_unity(s)
    A = np.full((s, s), 1.0 / s)
    S_alpha = sigma_matrix(nodes, q, alpha)
    S_zero = sigma_matrix(nodes, q, 0.0)
    F = fourier_matrix(nodes, q)
    matrices = dict(
        A=A,
        S_alpha=S_alpha,
        S_zero=S_zero,
        F=F,
        B_alpha=S_alpha @ F,
        B_zero=S_zero @ F,
        nodes=nodes,
    )
    for array in matrices.values():
        array.setflags(write=False)
    return StepperMatrices(alpha=float(alpha), **matrices)
