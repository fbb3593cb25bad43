"""Classic perturbation-based extremum seeking (ESC1).

Modulation ``a sin(wt)`` on the parameter estimate, optional high-pass washout
of the measured objective, demodulation by ``b sin(wt - phase)``, optional
low-pass smoothing, then an integrator with gain ``k``.  ``k > 0`` climbs
towards a maximum; use ``k < 0`` to minimize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class EscClassicParams:
    a: float
    omega: float
    b: float = 1.0
    phi_phase: float = 0.0
    k: float = 1.0
    omega_h: float = 0.0
    omega_l: float = 0.0
    use_high_pass: bool = True
    use_low_pass: bool = False

    def __post_init__(self):
        if not self.a >= 0:
            raise ValueError("modulation amplitude a must be non-negative")
        if not self.omega > 0:
            raise ValueError("perturbation frequency omega must be positive")
        if self.use_high_pass and not self.omega_h > 0:
            raise ValueError("omega_h must be positive when the high-pass filter is used")
        if self.use_low_pass and not self.omega_l > 0:
            raise ValueError("omega_l must be positive when the low-pass filter is used")


@dataclass(frozen=True)
class EscClassicState:
    theta_hat: float
    xi: float = 0.0
    eta: float = 0.0


def esc1_control(st: EscClassicState, p: EscClassicParams, t: float) -> float:
    """Steered parameter: estimate plus dither."""
    return st.theta_hat + p.a * math.sin(p.omega * t)


def esc1_derivatives(theta_hat, xi, eta, p: EscClassicParams, J: float, t: float):
    """Scalar form of :func:`esc1_rhs` returning ``(dtheta_hat, dxi, deta)``."""
    washed = J - eta if p.use_high_pass else J
    demod = washed * p.b * math.sin(p.omega * t - p.phi_phase)
    deta = p.omega_h * (J - eta) if p.use_high_pass else 0.0
    if p.use_low_pass:
        return p.k * xi, p.omega_l * (demod - xi), deta
    return p.k * demod, 0.0, deta


def esc1_rhs(st: EscClassicState, p: EscClassicParams, J: float, t: float) -> EscClassicState:
    """Time derivative of the controller state for a measured objective ``J``."""
    return EscClassicState(*esc1_derivatives(st.theta_hat, st.xi, st.eta, p, J, t))
