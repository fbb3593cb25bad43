"""JSON run configurations: schema validation and conversion to/from Scenario.

A config may name a built-in scenario as ``base``; its remaining keys are then
merged on top.  ``plant`` and ``controller`` objects merge key by key when
their ``type`` matches the base and replace it otherwise.
"""

from __future__ import annotations

import copy
import json
from dataclasses import asdict
from importlib import resources

import jsonschema

from .esc_augmented import build_ds_design, build_toy_design
from .esc_classic import EscClassicParams
from .flight import VehicleParams
from .sim.controllers import Esc1, Esc2, OpenLoop
from .sim.engine import DisturbanceConfig
from .sim.plants import DynamicSoaring, ToyAugmented, ToyClassic
from .sim.scenarios import Scenario, get_scenario
from .wind import wind_from_dict, wind_to_dict


class ConfigError(ValueError):
    pass


def load_schema() -> dict:
    text = resources.files("soaring_esc").joinpath("schema/run_config.schema.json").read_text("utf-8")
    return json.loads(text)


def validate_config(doc: dict) -> None:
    try:
        jsonschema.validate(doc, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"{where}: {exc.message}") from None


def scenario_to_config(sc: Scenario) -> dict:
    return {
        "name": sc.name,
        "description": sc.description,
        "plant": _plant_to_dict(sc.plant),
        "controller": _controller_to_dict(sc.controller),
        "x0": list(sc.x0),
        "duration": sc.duration,
        "dt": sc.dt,
        "seed": sc.seed,
        "disturbance": None if sc.disturbance is None else asdict(sc.disturbance),
    }


def _plant_to_dict(p) -> dict:
    if isinstance(p, DynamicSoaring):
        return {
            "type": "dynamic_soaring",
            "wind": wind_to_dict(p.wind),
            "C_L": p.C_L,
            "objective": p.objective_name,
            "vehicle": asdict(p.params),
        }
    if isinstance(p, ToyClassic):
        return {"type": "toy_classic", "settle_window": p.settle_window}
    return {
        "type": "toy_augmented",
        "average_window": p.average_window,
        "transient": p.transient,
        "step_time": p.step_time,
    }


def _controller_to_dict(c) -> dict:
    if isinstance(c, Esc1):
        d = {"type": "esc1", **asdict(c.params)}
        d.update(theta_hat0=c.theta_hat0, eta0=c.eta0, xi0=c.xi0)
        return d
    if isinstance(c, Esc2):
        d = c.design
        if d.constants.get("design") == "toy":
            return {"type": "esc2", "design": "toy", "b": d.b}
        out = {"type": "esc2", "design": "ds", **d.constants}
        out.update(k2=d.k2, a=d.a, b=d.b, omega=d.omega, phi_phase=d.phi_phase)
        return out
    return {"type": "open_loop", "phi": c.phi}


def _merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for key, val in over.items():
        if key == "base":
            continue
        if key in ("plant", "controller") and isinstance(val, dict) and isinstance(out.get(key), dict):
            same = val.get("type") == out[key].get("type") and val.get("design", "ds") == out[key].get("design", "ds")
            out[key] = {**out[key], **val} if same else dict(val)
            if key == "plant" and same and "wind" in val and "wind" in base[key]:
                if val["wind"].get("model") == base[key]["wind"].get("model"):
                    out[key]["wind"] = {**base[key]["wind"], **val["wind"]}
        else:
            out[key] = val
    return out


def resolve_config(doc: dict) -> dict:
    """Validate ``doc``, apply its ``base`` if any, and validate the result."""
    validate_config(doc)
    if "base" in doc:
        try:
            base = scenario_to_config(get_scenario(doc["base"]))
        except KeyError as exc:
            raise ConfigError(str(exc)) from None
        doc = _merge(base, doc)
        validate_config(doc)
    return doc


def _build_plant(d: dict):
    kind = d["type"]
    kw = {k: v for k, v in d.items() if k != "type"}
    if kind == "dynamic_soaring":
        return DynamicSoaring(
            params=VehicleParams(**kw.get("vehicle", {})),
            wind=wind_from_dict(kw.get("wind", {"model": "still"})),
            C_L=kw.get("C_L", 1.5),
            objective_name=kw.get("objective", "J2"),
        )
    if kind == "toy_classic":
        return ToyClassic(**kw)
    return ToyAugmented(**kw)


ESC1_INIT = ("theta_hat0", "eta0", "xi0")
ESC2_REQUIRED = ("c1", "c2", "c3", "c4", "c5", "c6", "k2", "a", "b", "omega", "phi_phase")


def _build_controller(d: dict):
    kind = d["type"]
    kw = {k: v for k, v in d.items() if k != "type"}
    if kind == "esc1":
        init = {k: kw.pop(k) for k in ESC1_INIT if k in kw}
        if "a" not in kw or "omega" not in kw:
            raise ConfigError("esc1 controller needs at least a and omega")
        return Esc1(EscClassicParams(**kw), **init)
    if kind == "esc2":
        if kw.pop("design", "ds") == "toy":
            return Esc2(build_toy_design(**kw))
        missing = [k for k in ESC2_REQUIRED if k not in kw]
        if missing:
            raise ConfigError(f"esc2 controller missing {', '.join(missing)}")
        return Esc2(build_ds_design(**kw))
    return OpenLoop(kw.get("phi", 0.0))


def scenario_from_config(doc: dict) -> Scenario:
    doc = resolve_config(doc)
    try:
        dist = doc.get("disturbance")
        return Scenario(
            name=doc.get("name", doc.get("base", "custom")),
            plant=_build_plant(doc["plant"]),
            controller=_build_controller(doc["controller"]),
            x0=tuple(float(v) for v in doc["x0"]),
            duration=float(doc["duration"]),
            dt=float(doc["dt"]),
            disturbance=None if dist is None else DisturbanceConfig(**dist),
            seed=int(doc.get("seed", 0)),
            description=doc.get("description", ""),
        )
    except ConfigError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("top-level JSON value must be an object")
    return scenario_from_config(doc)
