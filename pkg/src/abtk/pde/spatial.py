"""Finite-difference discretisation of ∂²/∂x² on [-π, π]."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh, toeplitz

BOUNDARY_CONDITIONS = ("dirichlet", "periodic")


@dataclass(frozen=True, eq=False)
class SpatialOperator:
    """Stiffness and mass matrix of a semi-discrete problem M u' = K u + M f.

    Attributes:
        K: stiffness matrix, shape `(n_h, n_h)`, symmetric negative semi-definite

        M: mass matrix (the identity for finite differences)

        h: mesh width

        n_h: degrees of freedom

        bc: "dirichlet" or "periodic"

        nodes: grid point of each degree of freedom
    """

    K: np.ndarray
    M: np.ndarray
    h: float
    n_h: int
    bc: str
    nodes: np.ndarray

    @property
    def has_identity_mass(self) -> bool:
        return np.array_equal(self.M, np.eye(self.n_h))

    def eigenvalues(self) -> np.ndarray:
        """Spectrum of K, ascending (most negative first)."""
        return eigvalsh(self.K)

    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues())))

    def apply(self, u: np.ndarray) -> np.ndarray:
        return self.K @ u

    def norm(self, u: np.ndarray) -> float:
        """The h-weighted discrete L² norm."""
        return float(np.sqrt(self.h) * np.linalg.norm(u))


def heat_grid(h: float, bc: str = "dirichlet") -> tuple[np.ndarray, int]:
    """Grid on [-π, π] with mesh width h, which must divide 2π.

    Dirichlet keeps the interior nodes; periodic keeps the nodes of [-π, π), identifying the two ends.
    """
    if h <= 0:
        raise ValueError(f"Mesh width must be positive, got h={h}.")
    n_cells = int(round(2 * np.pi / h))
    if not np.isclose(n_cells * h, 2 * np.pi, rtol=1e-10, atol=0.0):
        raise ValueError(f"Mesh width h={h} does not divide 2π.")
    if bc == "dirichlet":
        nodes = -np.pi + h * np.arange(1, n_cells)
    elif bc == "periodic":
        nodes = -np.pi + h * np.arange(n_cells)
    else:
        raise ValueError(f"Unknown boundary condition '{bc}'; use one of {BOUNDARY_CONDITIONS}.")
    return nodes, len(nodes)


def laplacian_1d(
    n_h: int, h: float, bc: str = "dirichlet", nodes: np.ndarray | None = None
) -> SpatialOperator:
    """Second-difference stiffness matrix (1, -2, 1)/h², tridiagonal (Dirichlet) or circulant (periodic), with M = I."""
    if n_h < 2:
        raise ValueError(f"Need at least 2 degrees of freedom, got n_h={n_h}.")
    if h <= 0:
        raise ValueError(f"Mesh width must be positive, got h={h}.")
    column = np.zeros(n_h)
    column[0] = -2.0
    column[1] += 1.0
    if bc == "dirichlet":
        K = toeplitz(column)
    elif bc == "periodic":
        K = toeplitz(column)
        K[0, -1] += 1.0
        K[-1, 0] += 1.0
    else:
        raise ValueError(f"Unknown boundary condition '{bc}'; use one of {BOUNDARY_CONDITIONS}.")
    K = K / h**2
    nodes = h * np.arange(n_h) if nodes is None else np.asarray(nodes, dtype=float)
    return SpatialOperator(K=K, M=np.eye(n_h), h=float(h), n_h=n_h, bc=bc, nodes=nodes)


def heat_operator(h: float, bc: str = "dirichlet") -> SpatialOperator:
    """`laplacian_1d` on the `heat_grid` of [-π, π]."""
    nodes, n_h = heat_grid(h, bc)
    return laplacian_1d(n_h, h, bc, nodes=nodes)
