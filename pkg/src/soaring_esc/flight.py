"""Three-degree-of-freedom point-mass glider in horizontal wind shear.

Frame: x East, y North, z Up.  Airspeed and the flight-path/heading angles are
air-relative; position is Earth-fixed.  The wind blows from North to South.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass

from .wind import Still, WindModel

V_MIN_GUARD = 0.5
GAMMA_GUARD = math.radians(89.0)


class SingularState(ArithmeticError):
    """The state left the region where the equations of motion are defined."""


@dataclass(frozen=True)
class VehicleParams:
    m: float = 8.5
    S: float = 0.65
    C_D0: float = 0.033
    K: float = 0.019
    rho: float = 1.225
    g: float = 9.8

    def __post_init__(self):
        for name, value in zip(("m", "S", "C_D0", "K", "rho", "g"), astuple(self)):
            if not value > 0:
                raise ValueError(f"{name} must be strictly positive, got {value}")


ALBATROSS = VehicleParams()


@dataclass(frozen=True)
class FlightState:
    x: float
    y: float
    z: float
    V: float
    gamma: float
    psi: float

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)


@dataclass(frozen=True)
class ControlInput:
    phi: float
    C_L: float = 1.5


@dataclass(frozen=True)
class EnergyReport:
    e: float
    TE: float
    KE: float
    PE: float
    e_dot_analytic: float
    J1: float
    J2: float
    n: float


def aero_forces(s: FlightState, u: ControlInput, p: VehicleParams = ALBATROSS) -> tuple[float, float]:
    q = 0.5 * p.rho * s.V * s.V * p.S
    return q * u.C_L, q * (p.C_D0 + p.K * u.C_L * u.C_L)


def check_guards(V: float, gamma: float) -> None:
    if not V > V_MIN_GUARD:
        raise SingularState(f"airspeed {V:.6g} m/s below guard {V_MIN_GUARD}")
    if not abs(gamma) < GAMMA_GUARD:
        raise SingularState(f"flight-path angle {math.degrees(gamma):.6g} deg beyond guard")


def state_derivative(x, y, z, V, gamma, psi, phi, C_L, p: VehicleParams, w: WindModel):
    """Scalar right-hand side of the equations of motion, returned as a 6-tuple.

    This is the hot path of every dynamic-soaring run; :func:`dynamics_rhs`
    is the typed wrapper.
    """
    check_guards(V, gamma)
    sg, cg = math.sin(gamma), math.cos(gamma)
    sp, cp = math.sin(psi), math.cos(psi)
    W = w.speed(z)
    z_dot = V * sg
    W_dot = w.gradient(z) * z_dot
    q = 0.5 * p.rho * V * V * p.S
    L = q * C_L
    D = q * (p.C_D0 + p.K * C_L * C_L)
    m, g = p.m, p.g
    return (
        V * cg * cp,
        V * cg * sp - W,
        z_dot,
        (-D - m * g * sg + m * W_dot * cg * sp) / m,
        (L * math.cos(phi) - m * g * cg - m * W_dot * sg * sp) / (m * V),
        (L * math.sin(phi) + m * W_dot * cp) / (m * V * cg),
    )


def dynamics_rhs(
    s: FlightState, u: ControlInput, p: VehicleParams = ALBATROSS, w: WindModel = Still()
) -> FlightState:
    """Time derivative of ``s``, packed as a FlightState of rates."""
    return FlightState(*state_derivative(*s.as_tuple(), u.phi, u.C_L, p, w))


def wind_energy_rate(V, gamma, psi, W_dot, g) -> float:
    # Sign follows the V-dot equation above: climbing into a headwind gains energy.
    return V * W_dot * math.cos(gamma) * math.sin(psi) / g


def energy_gain_objective(V, z, gamma, psi, p: VehicleParams, w: WindModel) -> float:
    """J1: the part of de/dt supplied by the wind gradient, in m/s."""
    W_dot = w.gradient(z) * V * math.sin(gamma)
    return wind_energy_rate(V, gamma, psi, W_dot, p.g)


def total_energy_objective(V, z, p: VehicleParams) -> float:
    """J2: specific total energy z + V^2/2g, in m."""
    # Same operation order as energy_report so that J2 == e bit for bit.
    return (0.5 * p.m * V * V + p.m * p.g * z) / (p.m * p.g)


def energy_report(
    s: FlightState, u: ControlInput, p: VehicleParams = ALBATROSS, w: WindModel = Still()
) -> EnergyReport:
    L, D = aero_forces(s, u, p)
    KE = 0.5 * p.m * s.V * s.V
    PE = p.m * p.g * s.z
    TE = KE + PE
    W_dot = w.gradient(s.z) * s.V * math.sin(s.gamma)
    J1 = wind_energy_rate(s.V, s.gamma, s.psi, W_dot, p.g)
    e = TE / (p.m * p.g)
    return EnergyReport(
        e=e,
        TE=TE,
        KE=KE,
        PE=PE,
        e_dot_analytic=-D * s.V / (p.m * p.g) + J1,
        J1=J1,
        J2=e,
        n=L / (p.m * p.g),
    )
