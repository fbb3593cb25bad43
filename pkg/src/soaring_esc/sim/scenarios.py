"""Scenario definition, the built-in registry, and ``run``."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..esc_augmented import build_ds_design, build_toy_design
from ..esc_classic import EscClassicParams
from ..flight import ALBATROSS, SingularState
from ..wind import LOGARITHMIC_TABLE2, LOGISTIC_TABLE2, Still
from .controllers import Esc1, Esc2, OpenLoop
from .engine import DisturbanceConfig, RunRecord, noise_sequence, run_system
from .plants import DynamicSoaring, ToyAugmented, ToyClassic

DS_DT = 1e-3
DS_DURATION = 10.0


@dataclass(frozen=True)
class Scenario:
    name: str
    plant: object
    controller: object
    x0: tuple
    duration: float
    dt: float
    disturbance: DisturbanceConfig | None = None
    seed: int = 0
    description: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not self.duration >= self.dt:
            raise ValueError("duration must be at least dt")
        if len(self.x0) != len(self.plant.state_names):
            raise ValueError(
                f"x0 has {len(self.x0)} entries, plant expects {len(self.plant.state_names)}"
            )

    @property
    def n_steps(self) -> int:
        return int(round(self.duration / self.dt))


def run(sc: Scenario) -> RunRecord:
    """Closed-loop simulation of ``sc``; equal scenarios give identical records."""
    eta = noise_sequence(sc.disturbance, sc.seed, sc.dt, sc.n_steps)
    rec = run_system(sc.plant, sc.controller, sc.x0, sc.duration, sc.dt, eta, sc.name)
    rec.meta = {"scenario": sc.name, "seed": sc.seed, "dt": sc.dt, "duration": sc.duration}
    return rec


# ESC1 case constants: omega, a, b, phi_phase, k, omega_h
ESC1_TABLE = {
    1: (1.2, 0.5, 0.2, 0.1, 0.1, 0.4),
    2: (5.0, 0.2, 0.8, -1.9, 1.8, 0.4),
    3: (1.9, 0.6, 1.6, 0.6, 0.1, 4.8),
    4: (0.5, 0.6, 0.3, -0.2, 0.7, 1.0),
}
ESC1_TABLE[5] = ESC1_TABLE[4]

# ESC2 case constants: omega, a, b, phi_phase, k2, c1..c6
ESC2_TABLE = {
    1: (1.0, 0.4, 1.8, -0.8, 1.5, 8.2, 1.8, 1.5, 0.1, 8.8, 8.1),
    2: (0.8, 0.8, 1.5, -2.2, 1.3, 2.3, 9.3, 1.0, 0.4, 3.5, 3.0),
    3: (1.7, 0.2, 0.5, 0.5, 1.4, 0.7, 3.1, 1.5, 1.8, 9.7, 2.2),
    4: (2.4, 0.7, 1.7, -2.9, 1.3, 3.8, 6.3, 1.1, 3.1, 9.8, 9.6),
}
ESC2_TABLE[5] = ESC2_TABLE[4]

# initial states: x, y, z, V, gamma, psi
X0_TABLE = {
    1: (-16.0, 15.0, 10.0, 14.0, -0.7, -0.1),
    2: (-16.0, 15.0, 15.0, 14.0, -1.0, -0.6),
    3: (-16.0, 15.0, 10.0, 14.0, 0.6, 0.4),
    4: (-16.0, 15.0, 15.0, 7.5, 0.4, 0.3),
}
X0_TABLE[5] = X0_TABLE[4]

CASE_SETUP = {
    1: (LOGISTIC_TABLE2, "J1"),
    2: (LOGARITHMIC_TABLE2, "J1"),
    3: (LOGISTIC_TABLE2, "J2"),
    4: (LOGARITHMIC_TABLE2, "J2"),
    5: (LOGARITHMIC_TABLE2, "J2"),
}

CASE5_NOISE = DisturbanceConfig(relative_amplitude=0.05)


def esc1_case_params(case: int) -> EscClassicParams:
    omega, a, b, phase, k, omega_h = ESC1_TABLE[case]
    return EscClassicParams(a=a, omega=omega, b=b, phi_phase=phase, k=k, omega_h=omega_h,
                            use_high_pass=True, use_low_pass=False)


def esc2_case_design(case: int, c0: float = 0.0):
    omega, a, b, phase, k2, c1, c2, c3, c4, c5, c6 = ESC2_TABLE[case]
    return build_ds_design(c1, c2, c3, c4, c5, c6, k2=k2, a=a, b=b, omega=omega, phi_phase=phase, c0=c0)


def ds_case(case: int, esc: str, duration: float = DS_DURATION, dt: float = DS_DT) -> Scenario:
    wind, obj = CASE_SETUP[case]
    plant = DynamicSoaring(ALBATROSS, wind, 1.5, obj)
    if esc == "esc1":
        ctrl = Esc1(esc1_case_params(case))
    else:
        ctrl = Esc2(esc2_case_design(case))
    wname = "logistic" if wind is LOGISTIC_TABLE2 else "logarithmic"
    desc = f"{esc.upper()} bank-angle seeking, {wname} wind, objective {obj}"
    if case == 5:
        desc += ", +/-5% measurement noise"
    return Scenario(
        name=f"case{case}-{esc}",
        plant=plant,
        controller=ctrl,
        x0=X0_TABLE[case],
        duration=duration,
        dt=dt,
        disturbance=CASE5_NOISE if case == 5 else None,
        description=desc,
    )


def toy_classic(k: float = 0.1, b: float = 0.5) -> Scenario:
    p = EscClassicParams(a=0.5, omega=0.1, b=b, phi_phase=0.0, k=k, omega_h=0.03, omega_l=0.01,
                         use_high_pass=True, use_low_pass=True)
    return Scenario(
        name="toy-classic",
        plant=ToyClassic(),
        controller=Esc1(p, theta_hat0=-1.0),
        x0=(0.0, 0.0),
        duration=2000.0,
        dt=1e-2,
        description="classic ESC on a 2-state LTI plant with quartic objective, optimum 10.41 at 0.88",
    )


def toy_augmented(b: float = 0.5) -> Scenario:
    return Scenario(
        name="toy-augmented",
        plant=ToyAugmented(),
        controller=Esc2(build_toy_design(b)),
        x0=(),
        duration=80.0,
        dt=1e-3,
        description="augmented ESC tracking theta*=0.01exp(0.01t) and a J* step at t=10",
    )


BASELINE_X0 = (-16.0, 15.0, 10.0, 14.0, 0.0, 0.0)


def still_baseline(x0=BASELINE_X0, duration: float = DS_DURATION, dt: float = DS_DT,
                   name: str = "baseline-still") -> Scenario:
    return Scenario(
        name=name,
        plant=DynamicSoaring(ALBATROSS, Still(), 1.5, "J2"),
        controller=OpenLoop(0.0),
        x0=tuple(x0),
        duration=duration,
        dt=dt,
        description="zero wind, wings level (phi=0): drag-only energy loss",
    )


def matched_baseline(sc: Scenario) -> Scenario:
    """Still-wind, wings-level run from the same start, horizon and step."""
    return still_baseline(sc.x0, sc.duration, sc.dt, name=f"{sc.name}-baseline")


def builtin_scenarios() -> list[Scenario]:
    out = [ds_case(case, esc) for case in range(1, 6) for esc in ("esc1", "esc2")]
    out += [toy_classic(), toy_augmented(), still_baseline()]
    return out


def get_scenario(name: str) -> Scenario:
    for sc in builtin_scenarios():
        if sc.name == name:
            return sc
    raise KeyError(f"no built-in scenario named {name!r}")


def with_overrides(sc: Scenario, dt=None, duration=None, seed=None) -> Scenario:
    kw = {}
    if dt is not None:
        kw["dt"] = dt
    if duration is not None:
        kw["duration"] = duration
    if seed is not None:
        kw["seed"] = seed
        if sc.disturbance is not None and sc.disturbance.seed is not None:
            kw["disturbance"] = replace(sc.disturbance, seed=seed)
    return replace(sc, **kw) if kw else sc


def estimate_curvature(sc: Scenario, h: float = 0.05, horizon: float = 0.5, phi0: float | None = None) -> float:
    """Second difference of the objective in the steered parameter.

    The plant is flown open loop from ``x0`` with the parameter held at
    ``phi0 - h``, ``phi0`` and ``phi0 + h`` for ``horizon`` seconds, and
    ``(J+ - 2 J0 + J-) / h^2`` is returned.  ``phi0`` defaults to the
    controller's initial output.
    """
    if phi0 is None:
        xc0 = sc.controller.initial_state(sc.plant, list(sc.x0))
        phi0 = sc.controller.parameter(0.0, xc0)
    J = []
    for u in (phi0 - h, phi0, phi0 + h):
        rec = run_system(sc.plant, OpenLoop(u), sc.x0, max(horizon, sc.dt), sc.dt)
        if not rec.ok:
            raise SingularState(f"curvature probe at parameter {u!r} aborted: {rec.error}")
        J.append(rec.column("J_clean")[-1])
    return (J[2] - 2.0 * J[1] + J[0]) / (h * h)
