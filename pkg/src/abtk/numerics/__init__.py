"""Shared numerical kernels used by every other part of ABTK.

Submodules:

* `errors`: the `ConvergenceError` and `CrossCheckError` exception types.
* `summation`: error-free transformations, Neumaier summation and the compensated Horner scheme.
* `polynomial`: the `DensePolynomial` class and root finding (balanced companion matrix or Aberth-Ehrlich).
* `linalg`: dense eigenvalues, finite-difference jacobians and Newton's method.
* `quadrature`: the doubling trapezoidal rule for periodic integrands.

Dense matrices are plain 2-D `numpy.ndarray`s throughout.
"""

from abtk.numerics.errors import ConvergenceError, CrossCheckError
from abtk.numerics.linalg import (
    dense_eigvals,
    finite_difference_jacobian,
    newton_solve,
    spectral_radius,
)
from abtk.numerics.polynomial import DensePolynomial, poly_from_roots, poly_roots
from abtk.numerics.quadrature import periodic_quadrature
from abtk.numerics.summation import (
    compensated_horner,
    neumaier_sum,
    two_prod,
    two_sum,
)
