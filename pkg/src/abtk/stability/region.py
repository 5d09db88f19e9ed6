"""Absolute stability regions and root-locus curves.

A point z belongs to the absolute stability region of a configuration when the spectral radius of R(z) = A + z B(α)/α is below one. The fast path takes the largest root modulus of the degree-q characteristic polynomial; the reference path takes the eigenvalues of the s×s matrix.
"""

from dataclasses import dataclass
from functools import partial

import numpy as np
import pandas as pd
from scipy.optimize import linear_sum_assignment

from abtk.integrator.config import IntegratorConfig
from abtk.integrator.matrices import StepperMatrices, build_stepper
from abtk.numerics.errors import CrossCheckError
from abtk.numerics.linalg import dense_eigvals
from abtk.stability.polynomials import char_poly, variant_poly, z_poly
from abtk.util.params import FrozenParams
from abtk.util.parallel import parallel_map

MISMATCH_TOL = 1e-6
REALNESS_TOL = 1e-8


def root_distance(a, b) -> float:
    """Largest distance between two equally sized multisets of complex numbers under the best matching."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.shape != b.shape:
        raise ValueError(f"Cannot match {a.size} values against {b.size}.")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def stability_indicator(
    z: complex,
    cfg: IntegratorConfig,
    check: bool = True,
    stepper: StepperMatrices | None = None,
) -> float:
    """ρ(R(z)), from the roots of `char_poly`.

    Args:
        z: the Dahlquist parameter λτ

        cfg: the configuration; only q, s (through δ_q) and α matter

        check: also compute ρ from the dense s×s eigenvalues and raise `CrossCheckError` ("polynomial/matrix mismatch") when the two differ by more than 1e-6

        stepper: prebuilt matrices for `cfg`, reused by the check
    """
    rho = float(np.max(np.abs(char_poly(cfg.q, z, cfg.alpha, cfg.delta_q).roots())))
    if check:
        stepper = build_stepper(cfg) if stepper is None else stepper
        rho_matrix = float(np.max(np.abs(dense_eigvals(stepper.stability_matrix(z)))))
        if abs(rho - rho_matrix) > MISMATCH_TOL:
            raise CrossCheckError(
                f"polynomial/matrix mismatch at z={z}: ρ={rho:.12g} from the characteristic "
                f"polynomial, {rho_matrix:.12g} from the {cfg.s}x{cfg.s} matrix."
            )
    return rho


##############################################################################
# Regions
##############################################################################


@dataclass(frozen=True, eq=False)
class StabilityGrid:
    """ρ(R(z)) sampled on a rectangle of the complex plane.

    Attributes:
        re: real-axis samples, shape `(n_re,)`

        im: imaginary-axis samples, shape `(n_im,)`

        rho: spectral radii, shape `(n_im, n_re)`; `rho[i, k]` belongs to `re[k] + 1j * im[i]`

        params: the configuration echo
    """

    re: np.ndarray
    im: np.ndarray
    rho: np.ndarray
    params: FrozenParams

    @property
    def stable(self) -> np.ndarray:
        return self.rho < 1.0

    def to_dataframe(self) -> pd.DataFrame:
        re, im = np.meshgrid(self.re, self.im)
        return pd.DataFrame({"re": re.ravel(), "im": im.ravel(), "rho": self.rho.ravel()})


def _region_row(im: float, re: np.ndarray, cfg: IntegratorConfig, check: bool) -> np.ndarray:
    stepper = build_stepper(cfg) if check else None
    return np.array(
        [stability_indicator(x + 1j * im, cfg, check=check, stepper=stepper) for x in re]
    )


def stability_region(
    cfg: IntegratorConfig,
    re_range: tuple[float, float] = (-3.0, 1.0),
    im_range: tuple[float, float] = (-2.0, 2.0),
    resolution: int | tuple[int, int] = 101,
    n_jobs: int = 1,
    check: bool = False,
    verbose: bool = False,
) -> StabilityGrid:
    """Sample ρ(R(z)) on a uniform grid; the region is where `rho < 1`.

    Args:
        resolution: points per axis, or `(n_re, n_im)`; at least 2 each

        n_jobs: rows are distributed over this many processes

        check: run the matrix cross-check at every point
    """
    n_re, n_im = (resolution, resolution) if np.isscalar(resolution) else resolution
    if min(n_re, n_im) < 2:
        raise ValueError(f"Need at least 2 samples per axis, got resolution={resolution}.")
    re = np.linspace(*re_range, int(n_re))
    im = np.linspace(*im_range, int(n_im))
    rows = parallel_map(
        partial(_region_row, re=re, cfg=cfg, check=check),
        im,
        n_jobs=n_jobs,
        verbose=verbose,
        desc="stability region",
    )
    params = FrozenParams(
        cfg.to_dict(), re_range=re_range, im_range=im_range, resolution=(int(n_re), int(n_im))
    )
    return StabilityGrid(re=re, im=im, rho=np.vstack(rows), params=params)


##############################################################################
# Root loci
##############################################################################


@dataclass(frozen=True, eq=False)
class RootLocusCurve:
    """The zeros z(θ) of p_q(e^{iθ}; A + zB) for θ in [-π, π).

    `branches[k, j]` is branch j at `thetas[k]`. Branches are continued in θ by nearest-neighbour matching and start out ordered by modulus; when the polynomial in z has degree below q the missing branches are NaN.
    """

    thetas: np.ndarray
    branches: np.ndarray
    params: FrozenParams

    def to_dataframe(self) -> pd.DataFrame:
        n_theta, n_branch = self.branches.shape
        return pd.DataFrame(
            {
                "theta": np.repeat(self.thetas, n_branch),
                "branch": np.tile(np.arange(n_branch), n_theta),
                "re": self.branches.real.ravel(),
                "im": self.branches.imag.ravel(),
            }
        )


def _locus_roots(theta: float, q: int, alpha: float, delta_q: int) -> np.ndarray:
    p = z_poly(q, theta, alpha, delta_q)
    roots = np.full(q, np.nan + 0j)
    if p.degree >= 1:
        found = p.roots()
        roots[: len(found)] = found[np.argsort(np.abs(found))]
    return roots


def root_locus(
    q: int,
    alpha: float = 1.0,
    delta_q: int = 0,
    n_theta: int = 256,
    n_jobs: int = 1,
    verbose: bool = False,
) -> RootLocusCurve:
    """Trace the q root-locus branches over `n_theta` equally spaced angles starting at -π."""
    if n_theta < 8:
        raise ValueError(f"Need at least 8 angles for a root locus, got n_theta={n_theta}.")
    thetas = -np.pi + 2 * np.pi * np.arange(n_theta) / n_theta
    roots = parallel_map(
        partial(_locus_roots, q=q, alpha=alpha, delta_q=delta_q),
        thetas,
        n_jobs=n_jobs,
        verbose=verbose,
        desc="root locus",
    )

    branches = np.empty((n_theta, q), dtype=complex)
    branches[0] = roots[0]
    for k in range(1, n_theta):
        prev, cur = branches[k - 1], roots[k]
        cost = np.abs(prev[:, None] - cur[None, :])
        # NaN (missing) branches match each other last
        _, cols = linear_sum_assignment(np.where(np.isfinite(cost), cost, 1e300))
        branches[k] = cur[cols]

    params = FrozenParams(q=q, alpha=alpha, delta_q=delta_q, n_theta=n_theta)
    return RootLocusCurve(thetas=thetas, branches=branches, params=params)


def real_axis_crossings(q: int, delta_q: int = 0, alpha: float = 1.0) -> pd.DataFrame:
    """Where the root-locus curves meet the real axis: the zeros of p̃_q(ζ; 0) and p̃_q(ζ; π), as z = -e^{iθ} ζ.

    Without the δ term every zero is real, and a non-real one raises `CrossCheckError` ("realness violated"). With it, realness is only reported in the `real` column and `zeta`, `z` hold real parts.
    """
    records = []
    for theta in (0.0, np.pi):
        zeros = variant_poly(q, theta, delta_q, alpha).roots()
        real = np.abs(zeros.imag) <= REALNESS_TOL * np.maximum(1.0, np.abs(zeros))
        if not delta_q and not real.all():
            raise CrossCheckError(
                f"realness violated: p̃_{q}(ζ; {theta:.4f}) has zeros {zeros}."
            )
        sign = -1.0 if theta == 0.0 else 1.0
        for k in np.argsort(zeros.real):
            zeta = float(zeros[k].real)
            records.append({"theta": theta, "zeta": zeta, "z": sign * zeta, "real": bool(real[k])})
    return pd.DataFrame.from_records(records)
