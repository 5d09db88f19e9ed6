"""Parabolic radii and the largest order a given radius permits.

The parabolic radius r_n is the length of the stable segment (-r_n, 0) of the negative real axis. It is the smallest-modulus zero of p̃_n(ζ; π), whose zeros are real, negative and distinct. Conversely, a method of order N keeps the segment (-r, 0] stable as long as p̃_n stays positive there for every n ≤ N.
"""

from dataclasses import dataclass
from typing import Iterable

import numpy as np
import pandas as pd
from tqdm import tqdm

from abtk.numerics.errors import CrossCheckError
from abtk.stability.polynomials import (
    fourier_discriminant,
    poly_value_direct,
    variant_poly,
)
from abtk.stability.region import REALNESS_TOL

DISTINCT_TOL = 1e-6
N_MAX = 60
RULES = ("next_order", "delta_term")


@dataclass(frozen=True)
class ParabolicRadiusResult:
    n: int
    radius: float
    all_real_zeros: tuple[float, ...]  # sorted by modulus
    delta_q: int
    all_real: bool = True
    rule: str = "next_order"


def parabolic_radius(
    n: int,
    delta_q: int = 0,
    alpha: float = 1.0,
    strict: bool | None = None,
    polish: int = 3,
    rule: str = "next_order",
) -> ParabolicRadiusResult:
    """The parabolic radius for order n.

    Args:
        n: order, at least 1

        delta_q: 1 for the s = q configuration, handled according to `rule`

        alpha: r/τ, only enters through the δ term

        strict: raise `CrossCheckError` unless every zero is real ("realness violated") and the zeros are pairwise distinct. Defaults to True whenever the polynomial has no δ term, where both are theorems; otherwise realness is only reported through `all_real`.

        rule: for δ_q = 1, "next_order" takes the zeros of p̃_{n+1}(ζ; π) without δ term, a conservative bound; "delta_term" keeps the δ term of p̃_n, whose smallest zero is exactly where R(z) acquires the eigenvalue -1 when s = q.

        polish: Newton steps on the compensated evaluation applied to the smallest zero

    Returns:
        a `ParabolicRadiusResult`; `all_real_zeros` holds the real parts of the zeros, smallest modulus first
    """
    if rule not in RULES:
        raise ValueError(f"Unknown rule '{rule}'; use one of {RULES}.")
    order, delta = n, delta_q
    if delta_q and rule == "next_order":
        order, delta = n + 1, 0
    strict = delta == 0 if strict is None else strict
    p = variant_poly(order, np.pi, delta, alpha)
    zeros = p.roots()
    real = np.abs(zeros.imag) <= REALNESS_TOL * np.maximum(1.0, np.abs(zeros))
    if strict and not real.all():
        raise CrossCheckError(f"realness violated: p̃_{order}(ζ; π) has zeros {zeros}.")
    ordered = np.sort(zeros[real].real)
    if strict and len(ordered) > 1 and np.min(np.diff(ordered)) <= DISTINCT_TOL:
        raise CrossCheckError(f"The zeros of p̃_{order}(ζ; π) are not distinct: {ordered}.")

    negative = ordered[ordered < 0]
    if negative.size == 0:
        raise CrossCheckError(f"p̃_{order}(ζ; π) has no negative real zero: {zeros}.")
    smallest = negative.max()

    dp = p.derivative()
    for _ in range(polish):
        slope = dp.evaluate_compensated(smallest)
        if slope == 0:
            break
        smallest = smallest - p.evaluate_compensated(smallest) / slope

    by_modulus = ordered[np.argsort(np.abs(ordered))]
    return ParabolicRadiusResult(
        n=n,
        radius=float(-smallest),
        all_real_zeros=tuple(float(x) for x in by_modulus),
        delta_q=delta_q,
        all_real=bool(real.all()),
        rule=rule,
    )


##############################################################################
# Permissible order
##############################################################################


def chebyshev_grid(radius: float, n_points: int) -> np.ndarray:
    """Chebyshev-Lobatto points on [-radius, 0] without the left endpoint, ascending."""
    k = np.arange(1, n_points + 1)
    return -radius * (1 + np.cos(np.pi * k / n_points)) / 2


def _first_failure(
    zetas: np.ndarray, delta_q: int, n_max: int, compensated: bool
) -> tuple[int | None, float]:
    """First order n whose p̃_n is non-positive somewhere on the grid, and where."""
    for n in range(1, n_max + 1):
        values = poly_value_direct(n, zetas, delta_q, compensated=compensated)
        worst = int(np.argmin(values))
        if values[worst] <= 0:
            return n, float(zetas[worst])
    return None, float("nan")


def max_permissible_order(
    radius: float,
    delta_q: int = 0,
    tol: float = 1e-6,
    n_max: int = N_MAX,
    compensated: bool = True,
    n_grid: int = 256,
    max_doublings: int = 8,
    cross_check: bool = False,
) -> int:
    """The largest N with p̃_n(ζ; π) > 0 for all n ≤ N and all ζ in (-radius, 0].

    The grid starts with `n_grid` Chebyshev points and doubles until the first failing order and its location (to within `tol`) agree between two successive grids. N is capped at `n_max`; a return value of `n_max` means no failure was found up to the cap.

    Args:
        radius: in (0, 2)

        compensated: evaluate with double-double coefficients and compensated Horner. With False the double-rounded terms are summed instead, which breaks down for radii near 1/e long before the true order is reached.

        cross_check: recompute the first failing value through `fourier_discriminant`
    """
    if not 0 < radius < 2:
        raise ValueError(f"Radius must lie in (0, 2), got {radius}.")

    n_points = n_grid
    previous = _first_failure(chebyshev_grid(radius, n_points), delta_q, n_max, compensated)
    for _ in range(max_doublings):
        n_points *= 2
        current = _first_failure(chebyshev_grid(radius, n_points), delta_q, n_max, compensated)
        same_order = current[0] == previous[0]
        same_place = current[0] is None or abs(current[1] - previous[1]) <= tol
        previous = current
        if same_order and same_place:
            break

    failing, where = previous
    if failing is None:
        return n_max
    if cross_check and where > -1.0 and where < 0.0:
        fourier_discriminant(failing, where, delta_q)
    return failing - 1


def order_scan(
    radius: float,
    delta_q: int = 0,
    n_max: int = N_MAX,
    n_points: int = 1024,
    compensated: bool = True,
    verbose: bool = False,
) -> pd.DataFrame:
    """Minimum of p̃_n over the Chebyshev grid of (-radius, 0], for every n up to `n_max`."""
    zetas = chebyshev_grid(radius, n_points)
    records = []
    for n in tqdm(range(1, n_max + 1), disable=not verbose, desc="orders"):
        values = poly_value_direct(n, zetas, delta_q, compensated=compensated)
        worst = int(np.argmin(values))
        records.append({"n": n, "min_value": values[worst], "argmin_zeta": zetas[worst]})
    return pd.DataFrame.from_records(records)


def decay_witness(
    orders: Iterable[int] = range(8, 49),
    zetas: np.ndarray | None = None,
    delta_q: int = 0,
    compensated: bool = True,
) -> pd.DataFrame:
    """For each N, max N·|p̃_N(ζ)| and min p̃_N(ζ) over a ζ-grid.

    The default grid is 256 points on [-1/e, -1/(2e)]. The Fourier coefficients of the generating function decay, so the scaled maximum must not grow with N.
    """
    if zetas is None:
        zetas = np.linspace(-1 / np.e, -1 / (2 * np.e), 256)
    zetas = np.asarray(zetas, dtype=float)
    records = []
    for n in orders:
        values = poly_value_direct(n, zetas, delta_q, compensated=compensated)
        records.append(
            {"N": n, "max_scaled": float(n * np.max(np.abs(values))), "min_value": float(np.min(values))}
        )
    return pd.DataFrame.from_records(records)
