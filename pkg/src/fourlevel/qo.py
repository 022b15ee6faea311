"""Quantum-optical realization of the diamond configuration.

Builds the lab-frame semiclassical Hamiltonian for a four-level atom
driven on the 1-2, 1-3, 2-4 and 3-4 transitions by quadrature-modulated
fields, transforms it to the laser-adapted interaction picture, applies
the rotating wave approximation under the four-photon resonance
condition, and maps the engineered Hamiltonian's detunings and couplings
to laser frequencies and complex Rabi amplitudes (and back).

hbar = 1 throughout.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .hamiltonian import PhaseSchedule, total_hamiltonian
from .rotation import CouplingSet

TRANSITIONS = ("12", "13", "24", "34")
_IDX = {"12": (0, 1), "13": (0, 2), "24": (1, 3), "34": (2, 3)}

#: Pair of real quadrature amplitudes (in-phase, out-of-phase) at time t.
QuadraturePair = Callable[[float], tuple[float, float]]


class ResonanceViolationError(ValueError):
    pass


class UnsupportedConfigurationError(ValueError):
    pass


def _zero_pair(t: float) -> tuple[float, float]:
    return (0.0, 0.0)


@dataclass(frozen=True)
class QOParams:
    """Level frequencies, field frequencies/phases and Rabi quadratures."""

    omega_levels: np.ndarray  # (3,): omega_2, omega_3, omega_4 (omega_1 = 0)
    omega_fields: dict[str, float]  # keys "12", "13", "24", "34"
    field_phases: dict[str, float] = field(
        default_factory=lambda: {k: 0.0 for k in TRANSITIONS}
    )
    rabi: dict[str, QuadraturePair] = field(
        default_factory=lambda: {k: _zero_pair for k in TRANSITIONS}
    )

    def __post_init__(self):
        levels = np.asarray(self.omega_levels, dtype=float)
        if levels.shape != (3,):
            raise ValueError("omega_levels must hold omega_2, omega_3, omega_4")
        object.__setattr__(self, "omega_levels", levels)
        for d in (self.omega_fields, self.field_phases, self.rabi):
            if set(d) != set(TRANSITIONS):
                raise ValueError(f"expected exactly the transitions {TRANSITIONS}")

    @property
    def closed_loop_phase(self) -> float:
        p = self.field_phases
        return p["12"] - p["13"] + p["24"] - p["34"]


def check_resonance(qo: QOParams) -> float:
    """Residual of the four-photon resonance condition
    omega_13 + omega_34 = omega_12 + omega_24."""
    w = qo.omega_fields
    return abs(w["13"] + w["34"] - w["12"] - w["24"])


def lab_hamiltonian(qo: QOParams, t: float) -> np.ndarray:
    """Schrodinger-picture Hamiltonian with explicit carrier oscillations."""
    h = np.zeros((4, 4))
    h[1, 1], h[2, 2], h[3, 3] = qo.omega_levels
    for key in TRANSITIONS:
        i, j = _IDX[key]
        phase = qo.omega_fields[key] * t + qo.field_phases[key]
        re, im = qo.rabi[key](t)
        drive = re * np.cos(phase) - im * np.sin(phase)
        h[i, j] += drive
        h[j, i] += drive
    return h.astype(complex)


def interaction_frame(qo: QOParams, t: float) -> np.ndarray:
    """Diagonal unitary of the laser-adapted rotating frame."""
    w, p = qo.omega_fields, qo.field_phases
    args = np.array(
        [
            0.0,
            w["12"] * t + p["12"],
            w["13"] * t + p["13"],
            (w["12"] + w["24"]) * t + p["12"] + p["24"],
        ]
    )
    return np.diag(np.exp(1j * args))


def interaction_hamiltonian(qo: QOParams, t: float) -> np.ndarray:
    """Full interaction-picture Hamiltonian U0 H U0^dag + i dU0/dt U0^dag,
    counter-rotating terms included."""
    u0 = interaction_frame(qo, t)
    w = qo.omega_fields
    shift = -np.diag([0.0, w["12"], w["13"], w["12"] + w["24"]])
    return u0 @ lab_hamiltonian(qo, t) @ u0.conj().T + shift


def rwa_hamiltonian(qo: QOParams, t: float) -> np.ndarray:
    """Interaction-picture Hamiltonian after the rotating wave approximation.

    Requires the four-photon resonance condition; entries (1, 4) and
    (2, 3) are structural zeros of the diamond topology.
    """
    if check_resonance(qo) > 1e-9:
        raise ResonanceViolationError(
            f"four-photon resonance violated by {check_resonance(qo):.3e}"
        )
    w2, w3, w4 = qo.omega_levels
    wf = qo.omega_fields
    d2 = 2.0 * (w2 - wf["12"])
    d3 = 2.0 * (w3 - wf["13"])
    d4 = 2.0 * (w4 - wf["12"] - wf["24"])

    def complex_rabi(key: str) -> complex:
        re, im = qo.rabi[key](t)
        return re + 1j * im

    h = np.zeros((4, 4), dtype=complex)
    h[1, 1], h[2, 2], h[3, 3] = d2, d3, d4
    h[0, 1] = complex_rabi("12")
    h[0, 2] = complex_rabi("13")
    h[1, 3] = complex_rabi("24")
    h[2, 3] = complex_rabi("34") * np.exp(-1j * qo.closed_loop_phase)
    h[1, 0] = np.conj(h[0, 1])
    h[2, 0] = np.conj(h[0, 2])
    h[3, 1] = np.conj(h[1, 3])
    h[3, 2] = np.conj(h[2, 3])
    return 0.5 * h


def engineered_to_qo(
    couplings: Callable[[float], CouplingSet],
    ph: PhaseSchedule,
    omega_levels,
) -> QOParams:
    """Map an engineered diamond Hamiltonian to laser parameters.

    Laser frequencies absorb the constant detunings (so the RWA
    Hamiltonian's diagonal reproduces -Delta_k), the fourth frequency is
    fixed by four-photon resonance, the driving-field phases are zero
    (closed-loop phase 0), and each complex Rabi amplitude is
    2i e^{i(phi_j - phi_k)t} Omega_jk with phi_1 = 0.
    """
    levels = np.asarray(omega_levels, dtype=float)
    if levels.shape != (3,):
        raise ValueError("omega_levels must hold omega_2, omega_3, omega_4")
    probe = [couplings(s * ph.T) for s in (0.25, 0.5, 0.75)]
    if any(abs(c.omega14) > 1e-10 or abs(c.omega23) > 1e-10 for c in probe):
        raise UnsupportedConfigurationError(
            "couplings are not of diamond type (omega14, omega23 must vanish)"
        )

    w2, w3, w4 = levels
    d2, d3, d4 = ph.detunings
    omega_fields = {
        "12": w2 + d2,
        "13": w3 + d3,
        "24": w4 + d4 - w2 - d2,
        "34": w4 + d4 - w3 - d3,
    }
    if min(omega_fields.values()) > 0:
        spread = max(abs(d2 - d3), abs(d2 - d4), abs(d3 - d4), abs(d2), abs(d3), abs(d4))
        if spread > 1e-2 * min(omega_fields.values()):
            warnings.warn(
                "detuning spread is not small against the carrier frequencies; "
                "the quadrature envelopes may not be slowly varying",
                stacklevel=2,
            )

    def make_pair(key: str) -> QuadraturePair:
        i, j = _IDX[key]

        def pair(t: float) -> tuple[float, float]:
            phases = np.concatenate([[0.0], ph.phases(t)])
            omega = getattr(couplings(t), f"omega{key}")
            z = 2j * np.exp(1j * (phases[i] - phases[j])) * omega
            return (float(z.real), float(z.imag))

        return pair

    return QOParams(
        omega_levels=levels,
        omega_fields=omega_fields,
        field_phases={k: 0.0 for k in TRANSITIONS},
        rabi={k: make_pair(k) for k in TRANSITIONS},
    )
