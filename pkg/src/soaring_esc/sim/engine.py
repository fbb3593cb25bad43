"""Fixed-step RK4 over the augmented plant + controller state.

State vectors are plain Python lists of floats; the systems here have at most
a dozen states, where list arithmetic beats numpy's per-call overhead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..flight import SingularState


class NonFinite(ArithmeticError):
    """A state or objective became NaN or infinite."""


def rk4_step(rhs, state, t: float, dt: float):
    """One classical Runge-Kutta step of ``x' = rhs(t, x)``."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    h2 = 0.5 * dt
    k1 = rhs(t, state)
    k2 = rhs(t + h2, [x + h2 * d for x, d in zip(state, k1)])
    k3 = rhs(t + h2, [x + h2 * d for x, d in zip(state, k2)])
    k4 = rhs(t + dt, [x + dt * d for x, d in zip(state, k3)])
    s = dt / 6.0
    return [
        x + s * (a + 2.0 * b + 2.0 * c + d)
        for x, a, b, c, d in zip(state, k1, k2, k3, k4)
    ]


# --- measurement disturbance --------------------------------------------------------


@dataclass(frozen=True)
class DisturbanceConfig:
    """Multiplicative measurement noise ``J_meas = J (1 + eta)``.

    ``eta`` is uniform on ``[-A, A)`` and held constant for ``hold_interval``
    seconds (default: one integration step).  Draws come from numpy's PCG64
    bit generator; the raw 64-bit outputs are mapped to ``[0, 1)`` as
    ``(raw >> 11) * 2**-53`` so the sequence depends only on the seed.
    """

    relative_amplitude: float
    hold_interval: float | None = None
    seed: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.relative_amplitude < 1.0:
            raise ValueError("relative_amplitude must lie in [0, 1)")
        if self.hold_interval is not None and not self.hold_interval > 0:
            raise ValueError("hold_interval must be positive")


def uniform_stream(seed: int, n: int) -> np.ndarray:
    raw = np.random.PCG64(seed).random_raw(n)
    return (raw >> np.uint64(11)).astype(np.float64) * 2.0**-53


def noise_sequence(cfg: DisturbanceConfig | None, seed: int, dt: float, n_steps: int) -> list[float]:
    """Per-step ``eta`` values, one for each recorded time ``k dt``."""
    if cfg is None or cfg.relative_amplitude == 0.0:
        return [0.0] * (n_steps + 1)
    hold = dt if cfg.hold_interval is None else cfg.hold_interval
    per_draw = max(1, int(round(hold / dt)))
    n_draws = n_steps // per_draw + 1
    A = cfg.relative_amplitude
    draws = [A * (2.0 * u - 1.0) for u in uniform_stream(cfg.seed if cfg.seed is not None else seed, n_draws).tolist()]
    return [draws[k // per_draw] for k in range(n_steps + 1)]


# --- run record ------------------------------------------------------------------------


@dataclass
class RunRecord:
    scenario: str
    columns: list[str]
    rows: list[tuple]
    dt: float
    status: str = "ok"
    error: str = ""
    summary: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def column(self, name: str) -> list[float]:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def __len__(self):
        return len(self.rows)


def run_system(plant, controller, x0, duration: float, dt: float, eta=None, name: str = "") -> RunRecord:
    """Integrate ``plant`` closed with ``controller`` and record every step.

    Each right-hand-side evaluation computes the steered parameter from the
    controller state, the clean objective from the plant, applies the step's
    noise factor, and feeds the measurement to the controller.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if not duration >= dt:
        raise ValueError("duration must be at least dt")
    n_steps = int(round(duration / dt))
    eta = [0.0] * (n_steps + 1) if eta is None else eta
    xp0 = [float(v) for v in x0]
    xc0 = controller.initial_state(plant, xp0)
    npl = len(xp0)
    state = xp0 + xc0

    objective = plant.objective
    plant_rhs = plant.derivative
    parameter = controller.parameter
    ctrl_rhs = controller.derivative
    noise = [0.0]

    def rhs(t, x):
        xp = x[:npl]
        xc = x[npl:]
        u = parameter(t, xc)
        Jc = objective(t, xp, u)
        return plant_rhs(t, xp, u) + ctrl_rhs(t, xc, Jc * (1.0 + noise[0]))

    columns = ["t"] + plant.columns + controller.columns
    rows = []
    status, error = "ok", ""
    t = 0.0
    for k in range(n_steps + 1):
        t = k * dt
        noise[0] = eta[k]
        xp, xc = state[:npl], state[npl:]
        try:
            u = parameter(t, xc)
            Jc = objective(t, xp, u)
            prow = plant.row(t, xp, u, Jc * (1.0 + eta[k]), Jc)
        except SingularState as exc:
            status, error = "aborted", f"SingularState at t={t!r}: {exc}"
            break
        rows.append((t, *prow, *xc))
        if k == n_steps:
            break
        try:
            state = rk4_step(rhs, state, t, dt)
        except SingularState as exc:
            status, error = "aborted", f"SingularState at t={t!r}: {exc}"
            break
        except (OverflowError, ZeroDivisionError) as exc:
            status, error = "aborted", f"NonFinite at t={t!r}: {exc}"
            break
        if not all(math.isfinite(v) for v in state):
            status, error = "aborted", f"NonFinite state after t={t!r}"
            break

    rec = RunRecord(name, columns, rows, dt, status, error)
    rec.summary = summarize(rec, plant, controller)
    return rec


def summarize(rec: RunRecord, plant, controller) -> dict:
    s = {"status": rec.status, "rows": len(rec.rows)}
    if rec.rows:
        s["t_final"] = rec.rows[-1][0]
        s.update(plant.summary(rec))
        for name in controller.columns:
            col = rec.column(name)
            s[f"{name}_min"] = min(col)
            s[f"{name}_max"] = max(col)
    return s
