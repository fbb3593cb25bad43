"""Horizontal wind-shear profiles W(z) blowing from North to South."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Logistic:
    """Sigmoid shear layer of thickness ``delta`` centred on ``z_m``."""

    W0: float = 7.8
    delta: float = 2.0 / 3.0
    z_m: float = 5.0

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("delta must be positive")

    def speed(self, z: float) -> float:
        arg = -(z - self.z_m) / self.delta
        if arg > 700.0:
            return 0.0
        return self.W0 / (1.0 + math.exp(arg))

    def gradient(self, z: float) -> float:
        arg = -(z - self.z_m) / self.delta
        if abs(arg) > 700.0:
            return 0.0
        u = math.exp(arg)
        return self.W0 * u / (self.delta * (1.0 + u) ** 2)


@dataclass(frozen=True)
class Logarithmic:
    """Boundary-layer profile, clamped to zero wind at or below the roughness height ``z0``."""

    V_w_ref: float = 15.0
    z_ref: float = 10.0
    z0: float = 0.03

    def __post_init__(self):
        if not (self.z_ref > self.z0 > 0):
            raise ValueError("need z_ref > z0 > 0")

    @property
    def _log_span(self) -> float:
        return math.log(self.z_ref / self.z0)

    def speed(self, z: float) -> float:
        if z <= self.z0:
            return 0.0
        return self.V_w_ref * math.log(z / self.z0) / self._log_span

    def gradient(self, z: float) -> float:
        if z <= self.z0:
            return 0.0
        return self.V_w_ref / (z * self._log_span)


@dataclass(frozen=True)
class Still:
    def speed(self, z: float) -> float:
        return 0.0

    def gradient(self, z: float) -> float:
        return 0.0


WindModel = Logistic | Logarithmic | Still

LOGISTIC_TABLE2 = Logistic()
LOGARITHMIC_TABLE2 = Logarithmic()


def wind_speed(m: WindModel, z: float) -> float:
    return m.speed(z)


def wind_gradient(m: WindModel, z: float) -> float:
    """dW/dz in (m/s)/m."""
    return m.gradient(z)


def wind_time_derivative(m: WindModel, z: float, z_dot: float) -> float:
    """Chain rule: the wind rate seen by a vehicle climbing at ``z_dot``."""
    return m.gradient(z) * z_dot


def wind_to_dict(m: WindModel) -> dict:
    if isinstance(m, Logistic):
        return {"model": "logistic", "W0": m.W0, "delta": m.delta, "z_m": m.z_m}
    if isinstance(m, Logarithmic):
        return {"model": "logarithmic", "V_w_ref": m.V_w_ref, "z_ref": m.z_ref, "z0": m.z0}
    return {"model": "still"}


def wind_from_dict(d: dict) -> WindModel:
    kind = d.get("model", "still")
    kwargs = {k: v for k, v in d.items() if k != "model"}
    if kind == "logistic":
        return Logistic(**kwargs)
    if kind == "logarithmic":
        return Logarithmic(**kwargs)
    if kind == "still":
        return Still()
    raise ValueError(f"unknown wind model {kind!r}")
