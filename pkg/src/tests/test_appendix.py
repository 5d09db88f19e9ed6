import numpy as np
import pytest

from abtk.appendix import (
    assembled_char_value,
    build_triple,
    equivalent_matrix,
    fs_closed_matrix,
    fs_entry_closed,
    hessenberg_dets,
    summation_identity,
    toeplitz_pair,
    witness_suite,
)
from abtk.integrator.matrices import build_matrices
from abtk.numerics.errors import CrossCheckError
from abtk.numerics.linalg import dense_eigvals
from abtk.stability.polynomials import char_poly
from abtk.stability.region import root_distance


class TestEquivalence:
    z = 0.4 - 0.3j
    lam = -0.2 + 0.5j

    @pytest.mark.parametrize("q, s", [(1, 2), (3, 4), (3, 3), (5, 6)])
    def test_nonzero_spectrum(self, q, s):
        alpha = 0.8
        stepper = build_matrices(q, s, alpha)
        big = dense_eigvals(stepper.A + self.z * stepper.S_alpha @ stepper.F)
        small = dense_eigvals(equivalent_matrix(q, s, self.z, alpha))
        assert root_distance(big, np.concatenate([small, np.zeros(s - q)])) < 1e-8

    def test_needs_enough_nodes(self):
        with pytest.raises(ValueError):
            equivalent_matrix(3, 2, self.z, 1.0)

    @pytest.mark.parametrize("q, s", [(3, 4), (3, 3), (4, 4), (4, 7)])
    def test_fs_closed_form(self, q, s):
        stepper = build_matrices(q, s, 0.8)
        assert np.allclose(fs_closed_matrix(q, s, 0.8), stepper.F @ stepper.S_alpha, atol=1e-12)

    def test_fs_below_subdiagonal(self):
        assert fs_entry_closed(4, 1, 4, 5, 1.0) == 0.0
        assert fs_entry_closed(2, 1, 4, 5, 1.0) == pytest.approx(1.0)

    def test_fs_aliased_entry(self):
        gap = fs_entry_closed(1, 3, 3, 3, 1.0) - fs_entry_closed(1, 3, 3, 4, 1.0)
        assert gap == pytest.approx(1 / 3)

    def test_fs_outside(self):
        with pytest.raises(ValueError):
            fs_entry_closed(0, 1, 3, 4, 1.0)


class TestToeplitz:
    alpha_z = 0.6 + 0.2j
    lam = 0.3 - 0.7j

    @pytest.mark.parametrize("q", [1, 3, 6])
    def test_inverse_pairs(self, q):
        triple = toeplitz_pair(q, self.alpha_z, self.lam)
        assert max(triple.residuals()) < 1e-12

    def test_eta_starts_with_one(self):
        triple = build_triple(4, self.alpha_z, self.lam)
        assert triple.eta[0] == 1.0
        assert triple.eta[1] == pytest.approx(-self.lam)

    def test_order(self):
        with pytest.raises(ValueError):
            toeplitz_pair(0, self.alpha_z, self.lam)

    @pytest.mark.parametrize("q", [0, 1, 4, 7])
    def test_summation(self, q):
        lhs, rhs = summation_identity(q, self.alpha_z, self.lam)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


class TestHessenberg:
    z = 0.5 + 0.4j
    alpha = 1.3
    lam = -0.4 + 0.1j

    def test_three_ways(self):
        seq = hessenberg_dets(5, self.z, self.alpha, self.lam)
        assert seq.direct is not None
        assert np.allclose(seq.D, seq.direct, atol=1e-10)
        assert np.allclose(seq.D, seq.closed, atol=1e-10)

    def test_shifted_minors(self):
        seq = hessenberg_dets(5, self.z, self.alpha, self.lam)
        assert len(seq.D_tilde) == 5
        assert np.allclose(seq.D_tilde, seq.closed[:-1], atol=1e-10)

    def test_large_order_skips_determinants(self):
        seq = hessenberg_dets(10, self.z, self.alpha, self.lam)
        assert seq.direct is None
        assert np.allclose(seq.D, seq.closed, atol=1e-9)

    def test_disagreement_raises(self):
        with pytest.raises(CrossCheckError):
            hessenberg_dets(3, self.z, self.alpha, self.lam, tol=-1.0)

    @pytest.mark.parametrize("q, s", [(1, 1), (1, 2), (3, 3), (3, 4), (6, 7)])
    def test_assembly(self, q, s):
        assembled = assembled_char_value(q, s, self.z, self.alpha, self.lam)
        expected = char_poly(q, self.alpha * self.z, self.alpha, int(s == q))(self.lam)
        assert abs(assembled - expected) < 1e-10 * max(1.0, abs(expected))


class TestWitnessSuite:
    def test_all_pass(self):
        df = witness_suite(seed=0, n_draws=10)
        assert set(df["lemma"]) == {"equivalence", "fs_entry", "toeplitz", "summation", "hessenberg", "assembly"}
        assert len(df) == 60
        assert df["passed"].all()

    def test_seeded(self):
        a = witness_suite(seed=3, n_draws=4)
        b = witness_suite(seed=3, n_draws=4)
        assert a.equals(b)
