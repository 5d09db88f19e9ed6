"""Error-free transformations and compensated summation / polynomial evaluation.

The closed-form polynomials of the stability analysis are alternating sums of Gelfand-Shilov terms whose magnitudes exceed the result by many orders near the end of the zero-free interval. Everything here works on float64 numpy arrays elementwise, so a whole ζ-grid is evaluated in one pass.
"""

import numpy as np

# Dekker's splitting constant 2^27 + 1 for IEEE doubles
_SPLITTER = 134217729.0


##############################################################################
# Error-free transformations
##############################################################################


def two_sum(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Knuth's TwoSum: `a + b = s + e` exactly, with `s = fl(a + b)`."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def split(a) -> tuple[np.ndarray, np.ndarray]:
    """Dekker split of a double into two non-overlapping 26-bit halves."""
    c = _SPLITTER * a
    hi = c - (c - a)
    lo = a - hi
    return hi, lo


def two_prod(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Dekker's TwoProduct: `a * b = p + e` exactly, with `p = fl(a * b)`."""
    p = a * b
    a_hi, a_lo = split(a)
    b_hi, b_lo = split(b)
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e


##############################################################################
# Summation
##############################################################################


def neumaier_sum(values, axis: int = 0):
    """Neumaier's variant of Kahan summation along `axis`, which also survives terms larger than the running total.

    Complex inputs are summed componentwise. A 1-D input gives a Python scalar.
    """
    values = np.asarray(values)
    if np.iscomplexobj(values):
        real, imag = neumaier_sum(values.real, axis), neumaier_sum(values.imag, axis)
        return complex(real, imag) if np.ndim(real) == 0 else real + 1j * imag

    terms = np.moveaxis(values.astype(float), axis, 0)
    total = np.zeros(terms.shape[1:])
    compensation = np.zeros(terms.shape[1:])
    for val in terms:
        t = total + val
        compensation += np.where(np.abs(total) >= np.abs(val), (total - t) + val, (val - t) + total)
        total = t
    result = total + compensation
    return result if result.ndim else float(result)


##############################################################################
# Polynomial evaluation
##############################################################################


def compensated_horner(hi: np.ndarray, lo: np.ndarray | None, x) -> np.ndarray:
    """Compensated Horner scheme (Graillat, Langlois and Louvet) for real polynomials.

    The coefficients are given as double-double pairs `hi + lo` so that rounding of the coefficients themselves does not dominate the error; the `lo` parts enter the correction polynomial.

    Args:
        hi: leading parts of the coefficients, ascending degree

        lo: trailing parts of the coefficients (same shape as `hi`), or None for exact doubles

        x: real evaluation point(s), scalar or array

    Returns:
        p(x), accurate as if computed in twice the working precision and then rounded
    """
    hi = np.asarray(hi, dtype=float)
    lo = np.zeros_like(hi) if lo is None else np.asarray(lo, dtype=float)
    x = np.asarray(x, dtype=float)

    s = np.full_like(x, hi[-1])
    c = np.full_like(x, lo[-1])
    for a_hi, a_lo in zip(hi[-2::-1], lo[-2::-1]):
        p, pi = two_prod(s, x)
        s, sigma = two_sum(p, a_hi)
        c = c * x + (pi + sigma + a_lo)
    result = s + c
    return result if result.ndim else result[()]
