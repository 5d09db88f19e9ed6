"""Closed-form polynomials of the linear stability analysis.

All of them are sums of Gelfand-Shilov terms γ_n(z) = zⁿ/n!:

* `char_poly`: the characteristic polynomial p_q(λ; A + zB) as a polynomial in λ,
* `z_poly`: the same polynomial in z with λ = e^{iθ} fixed (root-locus curves),
* `variant_poly`: p̃_q(ζ; θ), whose zeros have the moduli of the `z_poly` zeros (ζ = -e^{-iθ} z),
* `generating_eval`: the generating function Σ_n p̃_n(ζ; π) tⁿ in closed form,

together with the two evaluations of p̃_N(ζ; π) used to decide the permissible order: the direct (compensated) sum and its Fourier coefficient on the unit circle.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from abtk.numerics.errors import CrossCheckError
from abtk.numerics.polynomial import DensePolynomial
from abtk.numerics.quadrature import periodic_quadrature
from abtk.numerics.summation import neumaier_sum

# above this order zⁿ/n! is accumulated as a running product instead of a power over a factorial
_DIRECT_GS_MAX = 20
POLE_TOL = 1e-14


def gelfand_shilov(n: int, z):
    """γ_n(z) = zⁿ / n!, elementwise for array `z`."""
    if n < 0:
        raise ValueError(f"Gelfand-Shilov index must be non-negative, got {n}.")
    if n <= _DIRECT_GS_MAX:
        return z**n / factorial(n)
    value = np.ones_like(z, dtype=np.result_type(z, float)) if np.ndim(z) else 1.0
    for k in range(1, n + 1):
        value = value * (z / k)
    return value


##############################################################################
# Polynomials in λ, z and ζ
##############################################################################


def char_poly(q: int, z: complex, alpha: float = 1.0, delta_q: int = 0) -> DensePolynomial:
    """The characteristic polynomial p_q(λ; A + zB) of the stability matrix, in λ.

    The coefficient of (-λ)^j is γ_{q-j}((j+1)z) + γ_{q-1-j}((j+1)z) (second term for j < q), and the constant term carries the extra -γ_q(-z/α) when s = q. For s > q the s×s matrix has the same characteristic polynomial times λ^{s-q}.
    """
    _check_order(q, delta_q)
    coeffs = np.zeros(q + 1, dtype=complex)
    for j in range(q + 1):
        term = gelfand_shilov(q - j, (j + 1) * z)
        if j < q:
            term += gelfand_shilov(q - 1 - j, (j + 1) * z)
        coeffs[j] = (-1) ** j * term
    coeffs[0] -= gelfand_shilov(q, -z / alpha) * delta_q
    return DensePolynomial(coeffs, variable="λ")


def z_poly(q: int, theta: float, alpha: float = 1.0, delta_q: int = 0) -> DensePolynomial:
    """p_q(e^{iθ}; A + zB) as a polynomial in z, of degree at most q."""
    _check_order(q, delta_q)
    minus_lam = -np.exp(1j * theta)
    coeffs = np.zeros(q + 1, dtype=complex)
    for m in range(q + 1):
        coeffs[m] = (q - m + 1) ** m / factorial(m) * minus_lam ** (q - m)
        if m < q:
            coeffs[m] += (q - m) ** m / factorial(m) * minus_lam ** (q - 1 - m)
    coeffs[q] -= delta_q * (-1.0 / alpha) ** q / factorial(q)
    return DensePolynomial(coeffs, variable="z")


def variant_poly(
    q: int, theta: float, delta_q: int = 0, alpha: float = 1.0
) -> DensePolynomial:
    """p̃_q(ζ; θ) = Σ γ_{q-j}((j+1)ζ) - e^{-iθ} Σ γ_{q-1-j}((j+1)ζ) - γ_q(-ζ/α) δ_q.

    At θ = π the coefficients are rational and are rounded from exact fractions to double-double pairs, so that the compensated evaluation sees them to twice working precision.
    """
    _check_order(q, delta_q)
    if np.isclose(abs(theta), np.pi, rtol=0.0, atol=1e-15):
        return _variant_pi(q, delta_q, float(alpha))

    phase = np.exp(-1j * theta)
    coeffs = np.zeros(q + 1, dtype=complex)
    for m in range(q + 1):
        coeffs[m] = ((q - m + 1) ** m - phase * (q - m) ** m) / factorial(m)
    coeffs[q] -= delta_q * (-1.0 / alpha) ** q / factorial(q)
    return DensePolynomial(coeffs, variable="ζ")


@lru_cache(maxsize=None)
def variant_fractions(q: int, delta_q: int = 0, alpha: float = 1.0) -> tuple[Fraction, ...]:
    """Exact coefficients of p̃_q(ζ; π), ascending in ζ."""
    coeffs = [
        Fraction((q - m + 1) ** m + (q - m) ** m, factorial(m)) for m in range(q + 1)
    ]
    if delta_q:
        coeffs[q] -= (-1 / Fraction(alpha)) ** q / factorial(q)
    return tuple(coeffs)


@lru_cache(maxsize=None)
def _variant_pi(q: int, delta_q: int, alpha: float) -> DensePolynomial:
    return DensePolynomial.from_fractions(variant_fractions(q, delta_q, alpha), variable="ζ")


def _check_order(q: int, delta_q: int) -> None:
    if q < 1:
        raise ValueError(f"Expansion order q must be at least 1, got {q}.")
    if delta_q not in (0, 1):
        raise ValueError(f"delta_q must be 0 or 1, got {delta_q}.")


##############################################################################
# Evaluating p̃_N(ζ; π)
##############################################################################


def poly_value_direct(
    N: int,
    zeta,
    delta_q: int = 0,
    alpha: float = 1.0,
    compensated: bool = True,
):
    """p̃_N(ζ; π) at real ζ (scalar or array).

    Args:
        N: order

        zeta: evaluation point(s) in (-1, 0]

        delta_q: 1 for the s = q configuration

        alpha: r/τ ratio entering the δ term

        compensated: evaluate the exact coefficients with the compensated Horner scheme (default). With False the Gelfand-Shilov terms are rounded to doubles and added with Neumaier summation; the rounding of the large terms alone still loses all significant digits for N ≳ 30 near ζ = -1/e.
    """
    _check_order(N, delta_q)
    zeta = np.asarray(zeta, dtype=float)
    if compensated:
        return _variant_pi(N, delta_q, float(alpha)).evaluate_compensated(zeta)

    terms = [gelfand_shilov(N - j, (j + 1) * zeta) for j in range(N + 1)]
    terms += [gelfand_shilov(N - 1 - j, (j + 1) * zeta) for j in range(N)]
    terms.append(-delta_q * gelfand_shilov(N, -zeta / alpha))
    return neumaier_sum(np.broadcast_arrays(*terms))


def generating_eval(t, zeta, delta_q: int = 0, alpha: float = 1.0):
    """P̃(t; ζ) = (1+t)/(e^{-ζt} - t) - e^{-ζt/α} δ_q, elementwise in `t`.

    As a power series in t its coefficients are p̃_n(ζ; π), valid while |t e^{ζt}| < 1.
    """
    t = np.asarray(t, dtype=complex)
    decay = np.exp(-zeta * t)
    denominator = decay - t
    if np.any(np.abs(denominator) < POLE_TOL):
        raise ValueError(f"generating function evaluated at a pole (ζ={zeta}).")
    value = (1 + t) / denominator - delta_q * np.exp(-zeta * t / alpha)
    return value if value.ndim else complex(value)


def fourier_discriminant(
    N: int,
    zeta: float,
    delta_q: int = 0,
    tol: float = 1e-12,
    alpha: float = 1.0,
    check: bool = True,
) -> float:
    """The N-th Fourier coefficient (1/2π) ∫ P̃(e^{iφ}; ζ) e^{-iNφ} dφ, which by Cauchy's formula is p̃_N(ζ; π).

    The integral is computed with the doubling trapezoidal rule. With `check` it is compared with `poly_value_direct`, raising `CrossCheckError` when they differ by more than 100·tol.

    At ζ = 0 the generating function has its pole t = 1 on the contour, so the limit p̃_N(0; π) is returned from the direct sum.
    """
    if not -1.0 < zeta <= 0.0:
        raise ValueError(f"The discriminant is defined for ζ in (-1, 0], got {zeta}.")
    if zeta == 0.0:
        return float(poly_value_direct(N, 0.0, delta_q, alpha))

    def integrand(phi: np.ndarray) -> np.ndarray:
        t = np.exp(1j * phi)
        return generating_eval(t, zeta, delta_q, alpha) * np.exp(-1j * N * phi)

    value = (periodic_quadrature(integrand, tol=2 * np.pi * tol) / (2 * np.pi)).real
    if check:
        direct = poly_value_direct(N, zeta, delta_q, alpha)
        if abs(value - direct) > 100 * tol:
            raise CrossCheckError(
                f"Fourier coefficient {value!r} and direct value {direct!r} of p̃_{N}({zeta}) "
                f"differ by {abs(value - direct):.3e} > {100 * tol:.1e}."
            )
    return float(value)
