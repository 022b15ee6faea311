import math

import numpy as np
import pytest

from fourlevel.hamiltonian import (
    PhaseSchedule,
    analytic_evolution,
    phase_operator,
    total_hamiltonian,
)
from fourlevel.rotation import CouplingSet, hr_analytic
from fourlevel.solvers import TargetSpec, solve_tripod

SQRT3 = math.sqrt(3.0)
ZERO_COUPLINGS = CouplingSet(0, 0, 0, 0, 0, 0)


def flat_phases(T=1.0):
    return PhaseSchedule(eps=np.zeros(3), eps_prime=np.zeros(3), T=T)


def tripod_phases(T=1.0):
    return PhaseSchedule(eps=np.zeros(3), eps_prime=np.full(3, math.pi / 3), T=T)


class TestPhaseSchedule:
    def test_boundary_values_exact(self):
        ph = PhaseSchedule(
            eps=np.array([0.1, 0.2, 0.3]), eps_prime=np.array([1.1, -0.4, 0.0]), T=2.0
        )
        np.testing.assert_array_equal(ph.phases(0.0), ph.eps)
        np.testing.assert_allclose(ph.phases(2.0), ph.eps_prime, atol=1e-15)

    def test_detunings(self):
        ph = tripod_phases(T=1.0)
        np.testing.assert_allclose(ph.detunings, math.pi / 3)

    def test_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            PhaseSchedule(eps=np.zeros(2), eps_prime=np.zeros(3), T=1.0)
        with pytest.raises(ValueError):
            PhaseSchedule(eps=np.zeros(3), eps_prime=np.zeros(3), T=0.0)


class TestPhaseOperator:
    def test_identity_for_zero_phases(self):
        for t in (0.0, 0.3, 1.0):
            np.testing.assert_allclose(
                phase_operator(flat_phases(), t), np.eye(4), atol=1e-15
            )

    def test_final_phase_values(self):
        k = phase_operator(tripod_phases(), 1.0)
        expected = np.diag([1.0] + [np.exp(1j * math.pi / 3)] * 3)
        np.testing.assert_allclose(k, expected, atol=1e-15)

    def test_unitary(self, rng):
        ph = PhaseSchedule(
            eps=rng.normal(size=3), eps_prime=rng.normal(size=3), T=1.0
        )
        k = phase_operator(ph, 0.7)
        np.testing.assert_allclose(k @ k.conj().T, np.eye(4), atol=1e-12)


class TestTotalHamiltonian:
    def test_zero_couplings_zero_detunings(self):
        h = total_hamiltonian(ZERO_COUPLINGS, flat_phases(), 0.5)
        np.testing.assert_allclose(h, 0, atol=1e-15)

    def test_zero_phases_reduce_to_imaginary_couplings(self, rng):
        cs = CouplingSet(*rng.normal(size=6))
        h = total_hamiltonian(cs, flat_phases(), 0.4)
        np.testing.assert_allclose(h, 1j * cs.to_matrix(), atol=1e-15)

    def test_diagonal_is_negative_detunings(self):
        h = total_hamiltonian(ZERO_COUPLINGS, tripod_phases(), 0.2)
        np.testing.assert_allclose(
            np.diag(h).real, [0.0, -math.pi / 3, -math.pi / 3, -math.pi / 3]
        )
        assert h[1, 1].real == pytest.approx(-math.pi / 3)

    def test_hermitian(self, rng):
        cs = CouplingSet(*rng.normal(size=6))
        ph = PhaseSchedule(eps=rng.normal(size=3), eps_prime=rng.normal(size=3), T=1.0)
        h = total_hamiltonian(cs, ph, 0.6)
        assert np.max(np.abs(h - h.conj().T)) < 1e-14

    def test_phase_factors_on_couplings(self):
        cs = CouplingSet(1.0, 0, 0, 0, 0, 0)
        ph = PhaseSchedule(
            eps=np.array([0.3, 0.0, 0.0]), eps_prime=np.array([0.3, 0.0, 0.0]), T=1.0
        )
        h = total_hamiltonian(cs, ph, 0.0)
        # off-diagonal (1,2) carries i * e^{i(phi_1 - phi_2)} = i e^{-0.3i}
        assert h[0, 1] == pytest.approx(1j * np.exp(-0.3j))


class TestAnalyticEvolution:
    @pytest.fixture
    def tripod(self):
        return solve_tripod(TargetSpec(np.array([0, 1, 1, 1]) / SQRT3))

    def test_identity_at_t0(self, tripod):
        np.testing.assert_allclose(
            analytic_evolution(tripod, tripod_phases(), 0.0), np.eye(4), atol=1e-12
        )

    def test_final_state_with_phases(self, tripod):
        u = analytic_evolution(tripod, tripod_phases(), 1.0)
        psi = u @ np.array([1, 0, 0, 0], dtype=complex)
        expected = np.array(
            [0.0] + [np.exp(1j * math.pi / 3) / SQRT3] * 3, dtype=complex
        )
        np.testing.assert_allclose(psi, expected, atol=1e-12)

    def test_unitary_along_path(self, tripod, rng):
        ph = PhaseSchedule(eps=rng.normal(size=3), eps_prime=rng.normal(size=3), T=1.0)
        for t in rng.uniform(0, 1, size=10):
            u = analytic_evolution(tripod, ph, t)
            np.testing.assert_allclose(u @ u.conj().T, np.eye(4), atol=1e-10)

    def test_generator_identity(self, tripod):
        # i dU/dt U^dag must equal the assembled Hamiltonian
        ph = tripod_phases()
        t, h = 0.37, 1e-6
        du = (analytic_evolution(tripod, ph, t + h) - analytic_evolution(tripod, ph, t - h)) / (2 * h)
        gen = 1j * du @ analytic_evolution(tripod, ph, t).conj().T
        cs = hr_analytic(tripod.schedule.value(t), tripod.schedule.rate(t))
        np.testing.assert_allclose(gen, total_hamiltonian(cs, ph, t), atol=1e-6)
