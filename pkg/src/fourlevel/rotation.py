"""Evolution operator and rotation generator from generalized spherical angles.

The six angles (gamma1, theta1, phi1, gamma2, theta2, phi2) parameterize the
two unit quaternions of a 4D rotation.  The rotation generator is read off
in the convention

    H_r = i * hbar * sum_{n<m} Omega_nm (|n><m| - |m><n|),

i.e. Omega_nm is the (n, m) entry (n < m) of the real antisymmetric matrix
dUr/dt * Ur^T.  Both a closed-form evaluation and a finite-difference route
are provided; they serve as cross-checks of each other.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quat4 import Quaternion, cayley_rotation


@dataclass(frozen=True)
class AnglePair:
    """Generalized spherical angles of the two quaternion factors (radians).

    All real values are accepted; the solvers occasionally need angles
    outside [0, pi] (e.g. theta2 = -3*pi/4 for the diamond example).
    """

    gamma1: float
    theta1: float
    phi1: float
    gamma2: float
    theta2: float
    phi2: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.gamma1, self.theta1, self.phi1, self.gamma2, self.theta2, self.phi2]
        )

    @classmethod
    def from_array(cls, a) -> "AnglePair":
        return cls(*np.asarray(a, dtype=float))


@dataclass(frozen=True)
class CouplingSet:
    """The six real couplings of the rotation Hamiltonian (hbar = 1)."""

    omega12: float
    omega13: float
    omega14: float
    omega23: float
    omega24: float
    omega34: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [
                self.omega12,
                self.omega13,
                self.omega14,
                self.omega23,
                self.omega24,
                self.omega34,
            ]
        )

    @classmethod
    def from_matrix(cls, omega: np.ndarray) -> "CouplingSet":
        """Read the upper triangle of a real antisymmetric generator matrix."""
        o = np.asarray(omega)
        return cls(o[0, 1], o[0, 2], o[0, 3], o[1, 2], o[1, 3], o[2, 3])

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((4, 4))
        m[0, 1], m[0, 2], m[0, 3] = self.omega12, self.omega13, self.omega14
        m[1, 2], m[1, 3] = self.omega23, self.omega24
        m[2, 3] = self.omega34
        return m - m.T


@dataclass(frozen=True)
class AngleSchedule:
    """Time-dependent angles as paired (value, rate) closures over [0, T].

    The closures must be side-effect-free and mutually consistent; see
    check_consistency for the finite-difference test.
    """

    value: Callable[[float], AnglePair]
    rate: Callable[[float], AnglePair]
    horizon: float

    def check_consistency(self, samples: int = 33, rtol: float = 1e-6) -> float:
        """Max mismatch between rate() and a centered difference of value()."""
        T = self.horizon
        h = 1e-6 * T
        grid = np.linspace(h, T - h, samples)
        worst = 0.0
        scale = max(
            1.0, max(np.max(np.abs(self.rate(t).as_array())) for t in grid)
        )
        for t in grid:
            fd = (self.value(t + h).as_array() - self.value(t - h).as_array()) / (2 * h)
            worst = max(worst, np.max(np.abs(fd - self.rate(t).as_array())))
        if worst > rtol * scale:
            raise ValueError(
                f"angle schedule value/rate mismatch {worst:.3e} exceeds {rtol * scale:.3e}"
            )
        return worst


def constant_schedule(angles: AnglePair, horizon: float) -> AngleSchedule:
    zero = AnglePair(0, 0, 0, 0, 0, 0)
    return AngleSchedule(value=lambda t: angles, rate=lambda t: zero, horizon=horizon)


def cosine_ramp_schedule(final: AnglePair, horizon: float) -> AngleSchedule:
    """gamma_i(t) = gamma_i(T) * [1 - cos(pi t / T)] / 2 with constant
    theta and phi; smooth switch-on/off (zero rate at both endpoints)."""
    T = horizon
    gf1, gf2 = final.gamma1, final.gamma2

    def value(t: float) -> AnglePair:
        ramp = 0.5 * (1.0 - math.cos(math.pi * t / T))
        return AnglePair(
            gf1 * ramp, final.theta1, final.phi1, gf2 * ramp, final.theta2, final.phi2
        )

    def rate(t: float) -> AnglePair:
        dramp = 0.5 * math.pi / T * math.sin(math.pi * t / T)
        return AnglePair(gf1 * dramp, 0.0, 0.0, gf2 * dramp, 0.0, 0.0)

    return AngleSchedule(value=value, rate=rate, horizon=T)


def spherical_to_quats(a: AnglePair) -> tuple[Quaternion, Quaternion]:
    """Map the six angles to the (left, right) unit quaternion pair."""
    q = Quaternion(
        math.cos(a.gamma1),
        math.sin(a.gamma1) * math.cos(a.theta1),
        math.sin(a.gamma1) * math.sin(a.theta1) * math.cos(a.phi1),
        math.sin(a.gamma1) * math.sin(a.theta1) * math.sin(a.phi1),
    )
    p = Quaternion(
        math.cos(a.gamma2),
        math.sin(a.gamma2) * math.cos(a.theta2),
        math.sin(a.gamma2) * math.sin(a.theta2) * math.cos(a.phi2),
        math.sin(a.gamma2) * math.sin(a.theta2) * math.sin(a.phi2),
    )
    return q, p


def ur_of_angles(a: AnglePair) -> np.ndarray:
    """Closed-form evolution operator (real 4x4 rotation matrix).

    Algebraically identical to cayley_rotation(*spherical_to_quats(a));
    written out explicitly so the two routes check each other.
    """
    s1, c1 = math.sin(a.gamma1), math.cos(a.gamma1)
    s2, c2 = math.sin(a.gamma2), math.cos(a.gamma2)
    st1, ct1 = math.sin(a.theta1), math.cos(a.theta1)
    st2, ct2 = math.sin(a.theta2), math.cos(a.theta2)
    sp1, cp1 = math.sin(a.phi1), math.cos(a.phi1)
    sp2, cp2 = math.sin(a.phi2), math.cos(a.phi2)
    cpm = math.cos(a.phi1 - a.phi2)
    spm = math.sin(a.phi1 - a.phi2)
    cpp = math.cos(a.phi1 + a.phi2)
    spp = math.sin(a.phi1 + a.phi2)

    u = np.empty((4, 4))
    u[0, 0] = c1 * c2 - s1 * s2 * (st1 * st2 * cpm + ct1 * ct2)
    u[1, 0] = s2 * (ct2 * c1 - st1 * st2 * s1 * spm) + ct1 * s1 * c2
    u[2, 0] = s2 * (s1 * (st1 * ct2 * sp1 - ct1 * st2 * sp2) + st2 * c1 * cp2) \
        + st1 * s1 * c2 * cp1
    u[3, 0] = s2 * (s1 * (ct1 * st2 * cp2 - st1 * ct2 * cp1) + st2 * c1 * sp2) \
        + st1 * s1 * c2 * sp1
    u[0, 1] = -s2 * (st1 * st2 * s1 * spm + ct2 * c1) - ct1 * s1 * c2
    u[1, 1] = s1 * s2 * (st1 * st2 * cpm - ct1 * ct2) + c1 * c2
    u[2, 1] = st1 * s1 * c2 * sp1 \
        - s2 * (s1 * (st1 * ct2 * cp1 + ct1 * st2 * cp2) + st2 * c1 * sp2)
    u[3, 1] = st2 * c1 * s2 * cp2 \
        - s1 * (s2 * (st1 * ct2 * sp1 + ct1 * st2 * sp2) + st1 * c2 * cp1)
    u[0, 2] = -st1 * s1 * c2 * cp1 \
        - s2 * (s1 * (ct1 * st2 * sp2 - st1 * ct2 * sp1) + st2 * c1 * cp2)
    u[1, 2] = st2 * c1 * s2 * sp2 \
        - s1 * (s2 * (st1 * ct2 * cp1 + ct1 * st2 * cp2) + st1 * c2 * sp1)
    u[2, 2] = s1 * s2 * (ct1 * ct2 - st1 * st2 * cpp) + c1 * c2
    u[3, 2] = ct1 * s1 * c2 - s2 * (st1 * st2 * s1 * spp + ct2 * c1)
    u[0, 3] = -st1 * s1 * c2 * sp1 \
        - s2 * (s1 * (st1 * ct2 * cp1 - ct1 * st2 * cp2) + st2 * c1 * sp2)
    u[1, 3] = st1 * s1 * c2 * cp1 \
        - s2 * (s1 * (st1 * ct2 * sp1 + ct1 * st2 * sp2) + st2 * c1 * cp2)
    u[2, 3] = ct2 * c1 * s2 - s1 * (st1 * st2 * s2 * spp + ct1 * c2)
    u[3, 3] = s1 * s2 * (st1 * st2 * cpp + ct1 * ct2) + c1 * c2
    return u


def hr_analytic(a: AnglePair, adot: AnglePair) -> CouplingSet:
    """Closed-form couplings of the rotation generator dUr/dt Ur^T."""
    s1, c1 = math.sin(a.gamma1), math.cos(a.gamma1)
    s2, c2 = math.sin(a.gamma2), math.cos(a.gamma2)
    st1, ct1 = math.sin(a.theta1), math.cos(a.theta1)
    st2, ct2 = math.sin(a.theta2), math.cos(a.theta2)
    sp1, cp1 = math.sin(a.phi1), math.cos(a.phi1)
    sp2, cp2 = math.sin(a.phi2), math.cos(a.phi2)
    dg1, dt1, dp1 = adot.gamma1, adot.theta1, adot.phi1
    dg2, dt2, dp2 = adot.gamma2, adot.theta2, adot.phi2

    o12 = s1 * st1 * (dt1 * c1 - dp1 * s1 * st1) \
        + s2 * st2 * (dt2 * c2 + dp2 * s2 * st2) - dg1 * ct1 - dg2 * ct2
    o13 = dt1 * s1 * (s1 * sp1 - c1 * ct1 * cp1) \
        - dt2 * s2 * (s2 * sp2 + c2 * ct2 * cp2) \
        - dg1 * st1 * cp1 - dg2 * st2 * cp2 \
        + dp1 * s1 * st1 * (c1 * sp1 + s1 * ct1 * cp1) \
        + dp2 * s2 * st2 * (c2 * sp2 - s2 * ct2 * cp2)
    o14 = -dt1 * s1 * (s1 * cp1 + c1 * ct1 * sp1) \
        + dt2 * s2 * (s2 * cp2 - c2 * ct2 * sp2) \
        - dg1 * st1 * sp1 - dg2 * st2 * sp2 \
        - dp1 * s1 * st1 * (c1 * cp1 - s1 * ct1 * sp1) \
        - dp2 * s2 * st2 * (c2 * cp2 + s2 * ct2 * sp2)
    o23 = -dt1 * s1 * (s1 * cp1 + c1 * ct1 * sp1) \
        - dt2 * s2 * (s2 * cp2 - c2 * ct2 * sp2) \
        - dg1 * st1 * sp1 + dg2 * st2 * sp2 \
        - dp1 * s1 * st1 * (c1 * cp1 - s1 * ct1 * sp1) \
        + dp2 * s2 * st2 * (c2 * cp2 + s2 * ct2 * sp2)
    o24 = -dt1 * s1 * (s1 * sp1 - c1 * ct1 * cp1) \
        - dt2 * s2 * (s2 * sp2 + c2 * ct2 * cp2) \
        + dg1 * st1 * cp1 - dg2 * st2 * cp2 \
        - dp1 * s1 * st1 * (c1 * sp1 + s1 * ct1 * cp1) \
        + dp2 * s2 * st2 * (c2 * sp2 - s2 * ct2 * cp2)
    o34 = s1 * st1 * (dt1 * c1 - dp1 * s1 * st1) \
        - s2 * st2 * (dt2 * c2 + dp2 * s2 * st2) - dg1 * ct1 + dg2 * ct2
    return CouplingSet(o12, o13, o14, o23, o24, o34)


def hr_numeric(
    schedule: AngleSchedule, t: float, h: float | None = None
) -> CouplingSet:
    """Couplings extracted from a finite-difference dUr/dt Ur^T.

    Centered difference of second order inside (0, T); falls back to a
    one-sided first-order difference at the boundary.  The raw generator is
    antisymmetrized before read-off to suppress the symmetric O(h^2) error.
    """
    T = schedule.horizon
    if not 0.0 <= t <= T:
        raise ValueError(f"t={t} outside [0, {T}]")
    if h is None:
        h = 1e-5 * T
    if h <= 0:
        raise ValueError("h must be positive")

    def ur(s: float) -> np.ndarray:
        return ur_of_angles(schedule.value(s))

    if t - h >= 0.0 and t + h <= T:
        dudt = (ur(t + h) - ur(t - h)) / (2.0 * h)
    else:
        warnings.warn(
            "t within h of the horizon boundary: one-sided difference, first order",
            stacklevel=2,
        )
        if t + h <= T:
            dudt = (ur(t + h) - ur(t)) / h
        else:
            dudt = (ur(t) - ur(t - h)) / h
    omega = dudt @ ur(t).T
    omega = 0.5 * (omega - omega.T)
    return CouplingSet.from_matrix(omega)
