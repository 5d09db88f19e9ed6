"""Executable witnesses for the algebraic identities behind the closed-form characteristic polynomial.

Each identity is checked numerically on concrete parameters:

* the s×s stability matrix A + zS(α)F and the q×q matrix e₁e₁ᵀ + zFS(α) share their nonzero spectrum,
* the entries of FS(α) have a closed form and vanish below the subdiagonal,
* the lower-triangular Toeplitz matrices of exp(-αzt) and exp(αzt) are inverse to each other, and so are those of η and of 1 + λt·exp(αzt),
* two orders of summation of a double sum of Gelfand-Shilov terms agree,
* the leading minors D_k of zFS(α) - λI obey a recursion and a closed form, and assemble to the characteristic polynomial.

`witness_suite` runs all of them on seeded random draws.
"""

from dataclasses import dataclass
from math import comb

import numpy as np
import pandas as pd
from scipy.linalg import det, toeplitz

from abtk.integrator.matrices import build_matrices
from abtk.numerics.errors import CrossCheckError
from abtk.stability.polynomials import char_poly, gelfand_shilov

# leading minors beyond this size are taken from the recursion only
DIRECT_DET_MAX = 8


def equivalent_matrix(q: int, s: int, z: complex, alpha: float) -> np.ndarray:
    """e₁e₁ᵀ + z F S(α), the q×q matrix with the nonzero spectrum of A + z S(α) F."""
    if s < q:
        raise ValueError(f"Node count s={s} must be at least q={q}.")
    stepper = build_matrices(q, s, alpha)
    m = z * (stepper.F @ stepper.S_alpha)
    m[0, 0] += 1.0
    return m


def fs_entry_closed(j: int, k: int, q: int, s: int, alpha: float) -> complex:
    """⟨FS(α)⟩_{j,k} (1-based) in closed form.

    Zero below the subdiagonal, (1/k)·C(k, j-1)·α^{k-j+1} otherwise, plus 1/q at (1, q) when s = q (the aliased Fourier mode).
    """
    if not (1 <= j <= q and 1 <= k <= q):
        raise ValueError(f"Entry ({j}, {k}) is outside a {q}x{q} matrix.")
    if j > k + 1:
        return 0.0
    entry = comb(k, j - 1) * alpha ** (k - j + 1) / k
    if s == q and (j, k) == (1, q):
        entry += 1.0 / q
    return entry


def fs_closed_matrix(q: int, s: int, alpha: float) -> np.ndarray:
    return np.array(
        [[fs_entry_closed(j, k, q, s, alpha) for k in range(1, q + 1)] for j in range(1, q + 1)]
    )


##############################################################################
# Toeplitz inverse pairs and the summation identity
##############################################################################


def lower_toeplitz(first_column) -> np.ndarray:
    column = np.asarray(first_column, dtype=complex)
    return toeplitz(column, np.zeros_like(column))


@dataclass(frozen=True, eq=False)
class ToeplitzTriple:
    """Coefficient sequences of length q+1.

    Attributes:
        beta: γ_j(-αz), the Taylor coefficients of exp(-αzt)

        beta_inv: γ_j(αz), those of exp(αzt)

        eta: those of 1 / (1 + λt·exp(αzt)), i.e. η_j = Σ_{k<j} γ_k(j-k)(-λ)^{j-k}(αz)^k with η_0 = 1
    """

    beta: np.ndarray
    beta_inv: np.ndarray
    eta: np.ndarray
    lam: complex

    def shifted(self) -> np.ndarray:
        """I + λ·(β⁻¹ Toeplitz matrix shifted down one row), the matrix `eta` inverts."""
        n = len(self.beta_inv)
        column = np.zeros(n, dtype=complex)
        column[0] = 1.0
        column[1:] = self.lam * self.beta_inv[:-1]
        return lower_toeplitz(column)

    def residuals(self) -> tuple[float, float]:
        eye = np.eye(len(self.beta))
        first = np.max(np.abs(lower_toeplitz(self.beta) @ lower_toeplitz(self.beta_inv) - eye))
        second = np.max(np.abs(lower_toeplitz(self.eta) @ self.shifted() - eye))
        return float(first), float(second)


def eta_sequence(q: int, alpha_z: complex, lam: complex) -> np.ndarray:
    eta = np.zeros(q + 1, dtype=complex)
    eta[0] = 1.0
    for j in range(1, q + 1):
        eta[j] = sum(
            gelfand_shilov(k, j - k) * (-lam) ** (j - k) * alpha_z**k for k in range(j)
        )
    return eta


def build_triple(q: int, alpha_z: complex, lam: complex) -> ToeplitzTriple:
    n = range(q + 1)
    return ToeplitzTriple(
        beta=np.array([gelfand_shilov(j, -alpha_z) for j in n], dtype=complex),
        beta_inv=np.array([gelfand_shilov(j, alpha_z) for j in n], dtype=complex),
        eta=eta_sequence(q, alpha_z, lam),
        lam=lam,
    )


def toeplitz_pair(
    q: int, alpha_z: complex, lam: complex, tol: float = 1e-12
) -> ToeplitzTriple:
    """Build the three sequences and verify both inverse identities.

    Raises `CrossCheckError` when either product differs from the identity by more than `tol` (scaled by the largest entry).
    """
    if q < 1:
        raise ValueError(f"Need q >= 1, got {q}.")
    triple = build_triple(q, alpha_z, lam)
    scale = max(1.0, float(np.max(np.abs(triple.eta))), abs(lam))
    first, second = triple.residuals()
    if first > tol * scale or second > tol * scale:
        raise CrossCheckError(
            f"Toeplitz inverse identity violated for q={q}, αz={alpha_z}, λ={lam}: "
            f"residuals {first:.3e} and {second:.3e}."
        )
    return triple


def summation_identity(q: int, alpha_z: complex, lam: complex) -> tuple[complex, complex]:
    """Both sides of Σ_j γ_{q-j}(αz) η_j = Σ_j γ_{q-j}((j+1)αz) (-λ)^j.

    The left side is summed over the inner index first, with the empty inner sum of j = 0 taken as 1.
    """
    if q < 0:
        raise ValueError(f"Need q >= 0, got {q}.")
    lhs = 0j
    for j in range(q + 1):
        inner = 1.0 if j == 0 else sum(
            gelfand_shilov(k, (j - k) * alpha_z) * (-lam) ** (j - k) for k in range(j)
        )
        lhs += gelfand_shilov(q - j, alpha_z) * inner
    rhs = sum(gelfand_shilov(q - j, (j + 1) * alpha_z) * (-lam) ** j for j in range(q + 1))
    return complex(lhs), complex(rhs)


##############################################################################
# Hessenberg minors
##############################################################################


def hessenberg_matrix(q: int, z: complex, alpha: float, lam: complex) -> np.ndarray:
    """z·FS(α) - λI without the aliased (1, q) term: entries zμ_{j,k} with μ_{j,k} = (1/k)C(k, j-1)α^{k-j+1}."""
    mu = fs_closed_matrix(q, q + 1, alpha)
    return z * mu - lam * np.eye(q)


@dataclass(frozen=True, eq=False)
class DeterminantSequence:
    """Leading minors of `hessenberg_matrix`, three ways.

    Attributes:
        D: D_0..D_q from the recursion, D_0 = 1

        D_tilde: D̃_1..D̃_q, the minors of rows/columns 2..k (D̃_1 = 1)

        direct: D_0..D_q by LU determinants (None above `DIRECT_DET_MAX`)

        closed: D_0..D_q from Σ_j γ_{k-j}((j+1)αz)(-λ)^j
    """

    D: np.ndarray
    D_tilde: np.ndarray
    direct: np.ndarray | None
    closed: np.ndarray


def closed_minor(k: int, alpha_z: complex, lam: complex) -> complex:
    return complex(
        sum(gelfand_shilov(k - j, (j + 1) * alpha_z) * (-lam) ** j for j in range(k + 1))
    )


def hessenberg_dets(
    q: int, z: complex, alpha: float, lam: complex, tol: float = 1e-10
) -> DeterminantSequence:
    """Leading minors D_k by determinant, by the recursion D_k = -λD_{k-1} - Σ_{j≥1} γ_j(-αz)D_{k-j}, and in closed form.

    Raises `CrossCheckError` listing the three values of the first minor on which they disagree beyond `tol` (relative to max(1, |D_k|)).
    """
    if q < 1:
        raise ValueError(f"Need q >= 1, got {q}.")
    alpha_z = alpha * z
    m = hessenberg_matrix(q, z, alpha, lam)

    recursion = np.zeros(q + 1, dtype=complex)
    recursion[0] = 1.0
    for k in range(1, q + 1):
        recursion[k] = -lam * recursion[k - 1] - sum(
            gelfand_shilov(j, -alpha_z) * recursion[k - j] for j in range(1, k + 1)
        )
    closed = np.array([closed_minor(k, alpha_z, lam) for k in range(q + 1)])
    direct = None
    if q <= DIRECT_DET_MAX:
        direct = np.array([1.0 + 0j] + [det(m[:k, :k]) for k in range(1, q + 1)])

    for k in range(q + 1):
        values = [recursion[k], closed[k]] + ([direct[k]] if direct is not None else [])
        scale = max(1.0, abs(closed[k]))
        if max(abs(a - b) for a in values for b in values) > tol * scale:
            raise CrossCheckError(
                f"Leading minor D_{k} disagrees: recursion {recursion[k]}, closed form "
                f"{closed[k]}, determinant {None if direct is None else direct[k]}."
            )

    D_tilde = np.array([1.0 + 0j] + [det(m[1:k, 1:k]) for k in range(2, q + 1)])
    return DeterminantSequence(D=recursion, D_tilde=D_tilde, direct=direct, closed=closed)


def assembled_char_value(q: int, s: int, z: complex, alpha: float, lam: complex) -> complex:
    """D_q + D̃_q - γ_q(-z)δ_q, the characteristic polynomial of e₁e₁ᵀ + zFS(α) at λ."""
    seq = hessenberg_dets(q, z, alpha, lam)
    return complex(seq.D[q] + seq.D_tilde[q - 1] - gelfand_shilov(q, -z) * int(s == q))


##############################################################################
# Suite
##############################################################################


def _disk(rng: np.random.Generator) -> complex:
    return complex(np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))


def witness_suite(
    seed: int = 0, n_draws: int = 100, tol: float = 1e-10, q_max: int = 6
) -> pd.DataFrame:
    """Check every identity on `n_draws` seeded random draws (z, λ in the unit disk, α in [0.5, 2], q in 1..q_max).

    Returns:
        one row per (lemma, draw) with columns `lemma`, `draw`, `q`, `s`, `error` and `passed`
    """
    rng = np.random.default_rng(seed)
    records = []

    def record(lemma: str, draw: int, q: int, s: int, error: float) -> None:
        records.append(
            {"lemma": lemma, "draw": draw, "q": q, "s": s, "error": error, "passed": bool(error <= tol)}
        )

    for draw in range(n_draws):
        q = int(rng.integers(1, q_max + 1))
        s = q + int(rng.integers(0, 2))
        z, lam = _disk(rng), _disk(rng)
        alpha = float(rng.uniform(0.5, 2.0))

        # nonzero spectrum of the s×s matrix and the q×q matrix
        stepper = build_matrices(q, s, alpha)
        big = np.poly(stepper.A + z * stepper.S_alpha @ stepper.F)
        small = np.concatenate([np.poly(equivalent_matrix(q, s, z, alpha)), np.zeros(s - q)])
        record("equivalence", draw, q, s, float(np.max(np.abs(big - small))))

        closed = fs_closed_matrix(q, s, alpha)
        record("fs_entry", draw, q, s, float(np.max(np.abs(closed - stepper.F @ stepper.S_alpha))))

        triple = build_triple(q, alpha * z, lam)
        record("toeplitz", draw, q, s, max(triple.residuals()))

        lhs, rhs = summation_identity(q, alpha * z, lam)
        record("summation", draw, q, s, abs(lhs - rhs) / max(1.0, abs(rhs)))

        try:
            seq = hessenberg_dets(q, z, alpha, lam, tol=tol)
            error = float(np.max(np.abs(seq.D - seq.closed)))
        except CrossCheckError:
            error = float("inf")
        record("hessenberg", draw, q, s, error)

        assembled = assembled_char_value(q, s, z, alpha, lam)
        expected = char_poly(q, alpha * z, alpha, int(s == q))(lam)
        record("assembly", draw, q, s, abs(assembled - expected) / max(1.0, abs(expected)))

    return pd.DataFrame.from_records(records)
