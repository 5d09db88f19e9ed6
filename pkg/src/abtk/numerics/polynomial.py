"""Dense polynomials in one variable and their roots.

Coefficients are stored in ascending degree, the convention of `numpy.polynomial.polynomial`. The characteristic and variant polynomials of the stability analysis have degree at most ~60 and are solved either through the eigenvalues of the (balanced) companion matrix, the default, or by Aberth-Ehrlich simultaneous iteration.

    Examples:

        >>> from abtk.numerics.polynomial import DensePolynomial, poly_roots
        >>> p = DensePolynomial([2.0, 3.0, 0.5])  # ζ²/2 + 3ζ + 2
        >>> [round(float(root), 5) for root in sorted(poly_roots(p).real)]
        [-5.23607, -0.76393]
"""

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import numpy.polynomial.polynomial as npoly
from scipy.linalg import companion, eigvals

from abtk.numerics.errors import ConvergenceError
from abtk.numerics.summation import compensated_horner

ROOT_METHODS = ("companion", "aberth")


class DensePolynomial:
    """A polynomial with (possibly complex) coefficients in ascending degree.

    Trailing zero coefficients are trimmed on construction so that the leading coefficient is nonzero, unless the polynomial is identically zero, in which case a single zero coefficient is kept.

    Coefficients may carry an optional `lo` tail, so that `coeffs + lo` represents each coefficient in double-double precision. The tail is used only by `evaluate_compensated`.
    """

    def __init__(
        self,
        coeffs: Iterable[complex],
        lo: Iterable[float] | None = None,
        variable: str = "x",
    ) -> None:
        if not isinstance(coeffs, np.ndarray):
            coeffs = list(coeffs)
        coeffs = np.atleast_1d(np.asarray(coeffs))
        if coeffs.size == 0:
            raise ValueError("A polynomial needs at least one coefficient.")
        if not np.iscomplexobj(coeffs):
            coeffs = coeffs.astype(float)
        lo = None if lo is None else np.atleast_1d(np.asarray(lo, dtype=float))
        if lo is not None and lo.shape != coeffs.shape:
            raise ValueError(
                f"Coefficient tail of shape {lo.shape} does not match coefficients of shape {coeffs.shape}."
            )

        nonzero = np.flatnonzero(coeffs)
        length = nonzero[-1] + 1 if nonzero.size else 1
        self.coeffs = coeffs[:length].copy()
        self.lo = None if lo is None else lo[:length].copy()
        self.variable = variable

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    @property
    def leading(self) -> complex:
        return self.coeffs[-1]

    def __call__(self, x):
        value = npoly.polyval(x, self.coeffs)
        if self.lo is not None:
            value = value + npoly.polyval(x, self.lo)
        return value

    def evaluate_compensated(self, x):
        """Evaluate at real point(s) with the compensated Horner scheme.

        Only real coefficients are supported; this is the path used for p̃_n(ζ; π).
        """
        if np.iscomplexobj(self.coeffs):
            raise ValueError("Compensated evaluation is only implemented for real coefficients.")
        return compensated_horner(self.coeffs, self.lo, x)

    def derivative(self) -> "DensePolynomial":
        if self.degree == 0:
            return DensePolynomial([0.0], variable=self.variable)
        lo = None if self.lo is None else npoly.polyder(self.lo)
        return DensePolynomial(npoly.polyder(self.coeffs), lo=lo, variable=self.variable)

    def roots(self, method: str = "companion") -> np.ndarray:
        return poly_roots(self, method=method)

    @classmethod
    def from_fractions(
        cls, fractions: Sequence[Fraction], variable: str = "x"
    ) -> "DensePolynomial":
        """Round exact rational coefficients to double-double pairs `(hi, lo)`."""
        hi = [float(frac) for frac in fractions]
        lo = [float(frac - Fraction(h)) for frac, h in zip(fractions, hi)]
        return cls(hi, lo=lo, variable=variable)

    @classmethod
    def from_roots(cls, roots: Iterable[complex], variable: str = "x") -> "DensePolynomial":
        return poly_from_roots(roots, variable=variable)

    def __repr__(self) -> str:
        terms = " + ".join(
            f"({c}){self.variable}^{k}" if k else f"({c})"
            for k, c in enumerate(self.coeffs)
        )
        return f"DensePolynomial({terms})"


def poly_from_roots(roots: Iterable[complex], variable: str = "x") -> DensePolynomial:
    """The monic polynomial with the given roots (with multiplicity)."""
    return DensePolynomial(npoly.polyfromroots(list(roots)), variable=variable)


def poly_roots(
    p: DensePolynomial,
    method: str = "companion",
    tol: float = 1e-14,
    max_iter: int = 500,
) -> np.ndarray:
    """All `degree` roots of a polynomial, with multiplicity.

    Args:
        p: the polynomial; its leading coefficient must be nonzero (guaranteed by `DensePolynomial`)

        method: "companion" (default) takes the eigenvalues of the companion matrix, which LAPACK balances before the QR iteration; "aberth" runs Aberth-Ehrlich simultaneous iteration

        tol: relative step size at which Aberth iteration stops

        max_iter: maximum number of Aberth sweeps

    Returns:
        complex array of length `p.degree`
    """
    if p.is_zero:
        raise ValueError("Cannot find the roots of the zero polynomial.")
    if p.degree < 1:
        raise ValueError(f"A constant polynomial ({p.coeffs[0]}) has no roots.")
    if method not in ROOT_METHODS:
        raise ValueError(f"Unknown root-finding method '{method}'; use one of {ROOT_METHODS}.")

    coeffs = p.coeffs
    # zero roots factor out exactly
    n_zero = int(np.flatnonzero(coeffs)[0])
    reduced = coeffs[n_zero:]
    zeros = np.zeros(n_zero, dtype=complex)
    if len(reduced) == 1:
        return zeros

    if method == "companion":
        found = eigvals(companion(reduced[::-1]))
    else:
        found = _aberth(reduced, tol=tol, max_iter=max_iter)
    return np.concatenate([np.asarray(found, dtype=complex), zeros])


def _aberth(coeffs: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    """Aberth-Ehrlich iteration on a polynomial with nonzero constant term."""
    n = len(coeffs) - 1
    monic = np.asarray(coeffs, dtype=complex) / coeffs[-1]
    dmonic = npoly.polyder(monic)

    # start on a circle whose radius is the geometric mean of the root moduli,
    # rotated off the real axis to break conjugate symmetry
    radius = np.abs(monic[0]) ** (1.0 / n)
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))

    for _ in range(max_iter):
        value = npoly.polyval(z, monic)
        slope = npoly.polyval(z, dmonic)
        slope[slope == 0] = np.finfo(float).eps
        newton = value / slope

        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        repulsion = 1.0 / diff
        np.fill_diagonal(repulsion, 0.0)
        w = newton / (1.0 - newton * repulsion.sum(axis=1))
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(1.0, np.abs(z))):
            return z
    raise ConvergenceError(
        f"Aberth iteration did not converge in {max_iter} sweeps.", last_iterate=z
    )
