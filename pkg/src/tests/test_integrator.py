import cmath
import dataclasses

import numpy as np
import pytest

from abtk.experiments.allen_cahn import allen_cahn_rhs
from abtk.integrator.config import IntegratorConfig
from abtk.integrator.matrices import build_matrices, build_stepper, roots_of_unity
from abtk.integrator.scheme import (
    RhsEvaluator,
    SolutionVector,
    evaluate_nodes,
    init_vector,
    integrate,
    node_times,
    propagate,
    reconstruct,
    segment_quadrature,
)


class TestConfig:
    def test_alpha_defaults_to_one(self):
        cfg = IntegratorConfig(2, 3, tau=0.1)
        assert cfg.r == 0.1
        assert cfg.alpha == 1.0
        assert cfg.delta_q == 0

    def test_radius_sets_alpha(self):
        cfg = IntegratorConfig(3, 3, tau=0.1, r=0.2)
        assert cfg.alpha == pytest.approx(0.5)
        assert cfg.delta_q == 1

    def test_with_tau_keeps_alpha(self):
        cfg = IntegratorConfig(2, 3, tau=0.1, alpha=0.5).with_tau(0.05)
        assert cfg.alpha == pytest.approx(0.5)
        assert cfg.r == pytest.approx(0.1)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(q=0, s=1, tau=0.1),
            dict(q=3, s=2, tau=0.1),
            dict(q=2, s=3, tau=0.0),
            dict(q=2, s=3, tau=0.1, r=0.1, alpha=1.0),
            dict(q=2, s=3, tau=0.1, alpha=-1.0),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            IntegratorConfig(**kwargs)

    def test_frozen(self):
        cfg = IntegratorConfig(2, 3, tau=0.1)
        with pytest.raises(dataclasses.FrozenInstanceError):
            cfg.tau = 0.2


class TestMatrices:
    def test_last_root_is_one(self):
        nodes = roots_of_unity(4)
        assert nodes[-1] == 1.0
        assert nodes[0] == pytest.approx(1j)

    def test_no_roots(self):
        with pytest.raises(ValueError):
            roots_of_unity(0)

    def test_shapes(self):
        stepper = build_matrices(2, 5, 1.0)
        assert stepper.S_alpha.shape == (5, 2)
        assert stepper.F.shape == (2, 5)
        assert stepper.B_alpha.shape == (5, 5)
        assert (stepper.q, stepper.s) == (2, 5)

    def test_read_only(self):
        stepper = build_stepper(IntegratorConfig(2, 3, tau=0.1))
        with pytest.raises(ValueError):
            stepper.B_alpha[0, 0] = 1.0

    def test_averaging_is_projection(self):
        A = build_matrices(3, 4, 1.0).A
        assert np.allclose(A @ A, A)

    @pytest.mark.parametrize("s", range(1, 65))
    def test_averaging_keeps_column_sums(self, s):
        A = build_matrices(1, s, 1.0).A
        assert np.max(np.abs(np.ones(s) @ A - np.ones(s))) < 1e-14

    @pytest.mark.parametrize("s", range(1, 65))
    def test_fourier_rows_pick_first_unit_vector(self, s):
        F = build_matrices(s, s, 1.0).F
        e1 = np.zeros(s)
        e1[0] = 1.0
        assert np.max(np.abs(F @ np.ones(s) - e1)) < 1e-14

    def test_single_node(self):
        stepper = build_matrices(1, 1, 1.0)
        assert np.allclose(stepper.A, [[1.0]])
        assert np.allclose(stepper.S_alpha, [[2.0]])
        assert np.allclose(stepper.F, [[1.0]])
        assert np.allclose(stepper.B_alpha, [[2.0]])

    def test_iterator_matrix_entries_by_triple_loop(self):
        q, s, alpha = 2, 3, 1.0
        nodes = [cmath.exp(2j * cmath.pi * j / s) for j in range(1, s + 1)]
        expected = np.zeros((s, s), dtype=complex)
        for j in range(s):
            for m in range(s):
                for k in range(1, q + 1):
                    sigma = (alpha + nodes[j]) ** k / k
                    expected[j, m] += sigma * nodes[m] ** (1 - k) / s
        assert np.allclose(build_matrices(q, s, alpha).B_alpha, expected, atol=1e-13)

    def test_zero_alpha_is_iterator_matrix(self):
        stepper = build_matrices(2, 3, 0.0)
        assert np.allclose(stepper.B_alpha, stepper.B_zero)

    def test_iterator_matrix_preserves_mean(self):
        # column sums of B(0) vanish when s > q
        stepper = build_matrices(3, 4, 1.0)
        assert np.allclose(np.ones(4) @ stepper.B_zero, 0.0, atol=1e-14)

    def test_stability_matrix_at_origin(self):
        stepper = build_matrices(2, 3, 0.7)
        assert np.allclose(stepper.stability_matrix(0.0), stepper.A)

    def test_s_below_q(self):
        with pytest.raises(ValueError):
            build_matrices(3, 2, 1.0)


class TestSolutionVector:
    def test_values_read_only(self):
        state = SolutionVector(np.array([1.0, 2.0, 3.0]))
        with pytest.raises(ValueError):
            state.values[0] = 0.0

    def test_needs_node_values(self):
        with pytest.raises(ValueError):
            SolutionVector(1.0)

    def test_time(self):
        cfg = IntegratorConfig(2, 3, tau=0.1)
        assert SolutionVector(np.zeros(3), time_index=4, base_time=1.0).time(cfg) == pytest.approx(1.4)

    def test_single_node_asymmetry(self):
        assert SolutionVector(np.array([1.0 + 2.0j])).conjugate_asymmetry() == pytest.approx(4.0)


class TestRhsEvaluator:
    def test_finite_difference_fallback(self):
        rhs = RhsEvaluator(lambda t, u: u**2)
        assert not rhs.has_jacobian
        assert np.allclose(rhs.jacobian(0.0, np.array([3.0])), [[6.0]], atol=1e-5)

    def test_linear(self):
        rhs = RhsEvaluator.linear(-2.0)
        assert rhs.has_jacobian
        assert rhs(0.0, 3.0) == -6.0
        assert np.allclose(rhs.jacobian(0.0, np.ones(2)), -2.0 * np.eye(2))


class TestScheme:
    cfg = IntegratorConfig(2, 3, tau=0.1)
    stepper = build_stepper(cfg)

    def test_propagate_dahlquist(self):
        lam = -2.0 + 0.5j
        state = SolutionVector(np.array([1.0, 0.5 - 0.2j, 0.5 + 0.2j]))
        stepped = propagate(self.cfg, self.stepper, state, RhsEvaluator.linear(lam))
        expected = self.stepper.stability_matrix(self.cfg.tau * lam) @ state.values
        assert np.allclose(stepped.values, expected)
        assert stepped.time_index == 1

    def test_propagate_node_count(self):
        with pytest.raises(ValueError):
            propagate(self.cfg, self.stepper, SolutionVector(np.ones(4)), RhsEvaluator.zero())

    def test_iterator_mean_is_initial_value(self):
        state = init_vector(self.cfg, self.stepper, allen_cahn_rhs(0.5), 0.3)
        assert abs(reconstruct(state) - 0.3) < 1e-13
        assert state.time_index == 0

    def test_iterator_real_problem_is_conjugate_symmetric(self):
        state = init_vector(self.cfg, self.stepper, allen_cahn_rhs(0.5), 0.3)
        assert state.conjugate_asymmetry() < 1e-12

    def test_iterator_with_alpha(self):
        state = init_vector(self.cfg, self.stepper, RhsEvaluator.linear(-1.0), 1.0, use_alpha=True)
        assert state.time_index == 1

    def test_spatial_states(self):
        state = init_vector(self.cfg, self.stepper, RhsEvaluator.linear(-1.0), np.array([1.0, 2.0]))
        assert state.values.shape == (3, 2)
        assert np.allclose(reconstruct(state), [1.0, 2.0])

    def test_linear_iterator_is_one_solve(self):
        lam = -3.0
        state = init_vector(self.cfg, self.stepper, RhsEvaluator.linear(lam), 1.0)
        system = np.eye(3) - self.cfg.r * lam * self.stepper.B_zero
        assert np.allclose(state.values, np.linalg.solve(system, np.ones(3)), atol=1e-12)

    def test_mean_advances_by_segment_quadrature(self):
        cfg = IntegratorConfig(2, 3, tau=1 / 128)
        stepper = build_stepper(cfg)
        rhs = allen_cahn_rhs(0.5)
        state = init_vector(cfg, stepper, rhs, 0.01)
        for _ in range(20):
            f = evaluate_nodes(rhs, node_times(cfg, stepper, state.time(cfg)), state.values)
            stepped = propagate(cfg, stepper, state, rhs)
            increment = segment_quadrature(cfg, stepper, f)
            assert abs(reconstruct(stepped) - (reconstruct(state) + increment)) < 1e-14
            state = stepped

    @pytest.mark.parametrize("q", [1, 2, 3])
    def test_real_problem_stays_real(self, q):
        cfg = IntegratorConfig(q, q + 1, tau=1 / 128)
        result = integrate(cfg, allen_cahn_rhs(0.5), 0.01, n_steps=1000)
        assert np.max(np.abs(np.imag(result.values))) <= 1e-10

    def test_propagator_is_linear(self):
        rng = np.random.default_rng(3)
        u, v = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
        c, d = 0.7 - 0.2j, -1.3
        rhs = RhsEvaluator.linear(-2.0 + 1.0j)

        def step(values):
            return propagate(self.cfg, self.stepper, SolutionVector(values), rhs).values

        assert np.allclose(step(c * u + d * v), c * step(u) + d * step(v), atol=1e-12)

    def test_small_contour_is_explicit_euler(self):
        lam, tau = -2.0, 0.1
        cfg = IntegratorConfig(1, 2, tau=tau, r=1e-8 * tau)
        state = SolutionVector(np.ones(2, dtype=complex))
        stepped = propagate(cfg, build_stepper(cfg), state, RhsEvaluator.linear(lam))
        assert reconstruct(stepped) == pytest.approx(1 + tau * lam, abs=1e-12)


class TestSegmentQuadrature:
    cfg = IntegratorConfig(2, 3, tau=0.1, alpha=0.5)
    stepper = build_stepper(cfg)

    def test_constant_is_exact(self):
        assert segment_quadrature(self.cfg, self.stepper, np.ones(3)) == pytest.approx(self.cfg.tau)

    def test_linear_is_exact(self):
        samples = self.cfg.r * self.stepper.nodes
        assert segment_quadrature(self.cfg, self.stepper, samples) == pytest.approx(self.cfg.tau**2 / 2)

    @pytest.mark.parametrize("q", [2, 3, 4])
    @pytest.mark.parametrize("extra", [0, 1])
    def test_local_order(self, q, extra):
        s = q + extra
        taus = np.array([1 / 8, 1 / 16, 1 / 32, 1 / 64])
        errors = []
        for tau in taus:
            cfg = IntegratorConfig(q, s, tau=tau)
            stepper = build_stepper(cfg)
            value = segment_quadrature(cfg, stepper, np.exp(cfg.r * stepper.nodes))
            errors.append(abs(value - np.expm1(tau)))
        slope = np.polyfit(np.log(taus), np.log(errors), 1)[0]
        assert slope == pytest.approx(q + extra, abs=0.15)


class TestIntegrate:
    def test_zero_rhs_is_constant(self):
        cfg = IntegratorConfig(2, 3, tau=0.1)
        result = integrate(cfg, RhsEvaluator.zero(), 0.7, n_steps=10)
        assert np.allclose(result.values, 0.7)
        assert len(result.times) == 11

    def test_times_with_alpha_iterator(self):
        cfg = IntegratorConfig(2, 3, tau=0.1)
        result = integrate(cfg, RhsEvaluator.linear(-1.0), 1.0, n_steps=10, use_alpha=True)
        assert result.times[0] == pytest.approx(0.1)
        assert len(result.values) == 10
        assert result.final_state.time_index == 10

    def test_dahlquist_global_order(self):
        errors = []
        for n_steps in (50, 100):
            cfg = IntegratorConfig(2, 3, tau=1.0 / n_steps)
            result = integrate(cfg, RhsEvaluator.linear(-1.0), 1.0, n_steps=n_steps)
            errors.append(abs(result.values[-1] - np.exp(-1.0)))
        assert np.log2(errors[0] / errors[1]) == pytest.approx(2.0, abs=0.3)
