"""Plants: the glider in shear wind and the two toy benchmarks.

A plant provides ``objective(t, x, u)``, ``derivative(t, x, u)``, the record
``columns`` it contributes after ``t``, ``row(...)`` to fill them, and
``summary(record)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..flight import (
    ALBATROSS,
    ControlInput,
    FlightState,
    VehicleParams,
    energy_gain_objective,
    energy_report,
    state_derivative,
    total_energy_objective,
)
from ..wind import Still, WindModel

DS_COLUMNS = [
    "x", "y", "z", "V", "gamma", "psi", "phi", "J_measured", "J_clean",
    "e", "TE", "KE", "PE", "W", "Wdot", "n", "e_dot",
]


def energy_rate_residual(t, e, e_dot) -> float | None:
    """RMS of (central-difference de/dt - analytic rate), relative to the RMS analytic rate."""
    if len(e) < 3:
        return None
    t, e, e_dot = np.asarray(t), np.asarray(e), np.asarray(e_dot)
    fd = (e[2:] - e[:-2]) / (t[2:] - t[:-2])
    ref = e_dot[1:-1]
    scale = math.sqrt(float(np.mean(ref * ref)))
    rms = math.sqrt(float(np.mean((fd - ref) ** 2)))
    return rms / scale if scale > 0 else rms


@dataclass(frozen=True)
class DynamicSoaring:
    """Point-mass glider steered in bank angle with fixed lift coefficient.

    ``objective`` is ``"J1"`` (wind energy-gain rate) or ``"J2"`` (specific
    total energy).
    """

    params: VehicleParams = ALBATROSS
    wind: WindModel = field(default_factory=Still)
    C_L: float = 1.5
    objective_name: str = "J2"

    columns = DS_COLUMNS
    state_names = ("x", "y", "z", "V", "gamma", "psi")

    def __post_init__(self):
        if self.objective_name not in ("J1", "J2"):
            raise ValueError(f"unknown objective {self.objective_name!r}")

    def objective(self, t, x, u):
        if self.objective_name == "J1":
            return energy_gain_objective(x[3], x[2], x[4], x[5], self.params, self.wind)
        return total_energy_objective(x[3], x[2], self.params)

    def derivative(self, t, x, u):
        return list(state_derivative(*x, u, self.C_L, self.params, self.wind))

    def row(self, t, x, u, J_meas, J_clean):
        s = FlightState(*x)
        r = energy_report(s, ControlInput(u, self.C_L), self.params, self.wind)
        W = self.wind.speed(s.z)
        W_dot = self.wind.gradient(s.z) * s.V * math.sin(s.gamma)
        return (*x, u, J_meas, J_clean, r.e, r.TE, r.KE, r.PE, W, W_dot, r.n, r.e_dot_analytic)

    def summary(self, rec) -> dict:
        TE = rec.column("TE")
        span = max(TE) - min(TE)
        return {
            "TE_initial": TE[0],
            "TE_final": TE[-1],
            "TE_min": min(TE),
            "TE_max": max(TE),
            "TE_change": TE[-1] - TE[0],
            "TE_span_relative": span / abs(TE[0]),
            "e_final": rec.column("e")[-1],
            "energy_rate_residual": energy_rate_residual(rec.column("t"), rec.column("e"), rec.column("e_dot")),
        }


def quartic_objective(theta: float) -> float:
    """Static map with its global maximum near ``theta = 0.8758``."""
    return -theta**4 + 8.0 / 15.0 * theta**3 + 5.0 / 6.0 * theta**2 + 10.0


def _window_mean(values, n: int) -> np.ndarray:
    """Trailing means over ``n`` samples; entry i averages values[i : i + n]."""
    c = np.concatenate(([0.0], np.cumsum(values)))
    return (c[n:] - c[:-n]) / n


@dataclass(frozen=True)
class ToyClassic:
    """Second-order LTI plant under state feedback ``u = -x1 - 4 x2 + theta``.

    At equilibrium ``x1 = x2 = theta / 4``, so the measured output
    ``J = Q(4 x1)`` equals the static map ``Q(theta)`` once transients decay.
    ``settle_window`` sets the final window (s) used by the summary.
    """

    settle_window: float = 500.0

    columns = ["x1", "x2", "theta", "J_measured", "J_clean"]
    state_names = ("x1", "x2")

    def objective(self, t, x, u):
        return quartic_objective(4.0 * x[0])

    def derivative(self, t, x, u):
        x1, x2 = x
        return [-x1 + x2, x2 + (-x1 - 4.0 * x2 + u)]

    def row(self, t, x, u, J_meas, J_clean):
        return (x[0], x[1], u, J_meas, J_clean)

    def summary(self, rec) -> dict:
        t = np.asarray(rec.column("t"))
        tail = t >= t[-1] - self.settle_window
        J = np.asarray(rec.column("J_clean"))[tail]
        out = {
            "settle_window": self.settle_window,
            "J_mean_final_window": float(np.mean(J)),
            "theta_mean_final_window": float(np.mean(np.asarray(rec.column("theta"))[tail])),
        }
        if "theta_hat" in rec.columns:
            th = np.asarray(rec.column("theta_hat"))[tail]
            out.update(
                theta_hat_final=float(th[-1]),
                theta_hat_min_final_window=float(th.min()),
                theta_hat_max_final_window=float(th.max()),
                theta_hat_mean_final_window=float(np.mean(th)),
            )
        return out


@dataclass(frozen=True)
class ToyAugmented:
    """Static map ``J = J*(t) + (theta - theta*(t))^2`` with drifting optimum.

    ``theta*(t) = 0.01 e^{0.01 t}`` and ``J*(t) = 0.01`` from ``t = 10`` on,
    0 before.  The summary compares averages over one dither period
    ``average_window`` after ``transient``.
    """

    average_window: float = 2.0 * math.pi / 5.0
    transient: float = 10.0
    step_time: float = 10.0

    columns = ["theta", "theta_star", "J_measured", "J_clean", "J_star"]
    state_names = ()

    def theta_star(self, t):
        return 0.01 * math.exp(0.01 * t)

    def J_star(self, t):
        return 0.01 if t >= self.step_time else 0.0

    def objective(self, t, x, u):
        d = u - self.theta_star(t)
        return self.J_star(t) + d * d

    def derivative(self, t, x, u):
        return []

    def row(self, t, x, u, J_meas, J_clean):
        return (u, self.theta_star(t), J_meas, J_clean, self.J_star(t))

    def summary(self, rec) -> dict:
        t = np.asarray(rec.column("t"))
        n = max(1, int(round(self.average_window / rec.dt)))
        if len(t) < n:
            return {}
        err = _window_mean(np.asarray(rec.column("theta")) - np.asarray(rec.column("theta_star")), n)
        jerr = _window_mean(np.asarray(rec.column("J_clean")) - np.asarray(rec.column("J_star")), n)
        after = t[: len(err)] >= self.transient
        if not after.any():
            return {}
        return {
            "average_window": self.average_window,
            "tracking_error_max": float(np.max(np.abs(err[after]))),
            "tracking_error_final": float(err[-1]),
            "J_error_max": float(np.max(np.abs(jerr[after]))),
            "theta_final": float(rec.column("theta")[-1]),
        }
