"""Exception types raised by the numerical kernels.

Precondition violations (bad arguments, degenerate input) are plain `ValueError`s and a singular Newton jacobian surfaces as `numpy.linalg.LinAlgError`; the two classes here cover failures that happen *during* a computation.
"""

from typing import Any


class ConvergenceError(RuntimeError):
    """An iterative method stopped without meeting its tolerance.

    Attributes:
        last_iterate: the iterate (or estimate) held when the method gave up
    """

    def __init__(self, message: str, last_iterate: Any = None) -> None:
        super().__init__(message)
        self.last_iterate = last_iterate


class CrossCheckError(RuntimeError):
    """Two independent computations of the same quantity disagree beyond tolerance."""
