import json

import pytest

from soaring_esc.config import ConfigError, load_config, scenario_from_config, scenario_to_config
from soaring_esc.sim import builtin_scenarios, get_scenario, run
from soaring_esc.sim.io import record_to_csv


@pytest.mark.parametrize("sc", builtin_scenarios(), ids=lambda s: s.name)
def test_builtin_round_trip(sc):
    back = scenario_from_config(scenario_to_config(sc))
    assert back == sc


def test_base_override():
    sc = scenario_from_config({"base": "case1-esc2", "duration": 2.0, "controller": {"type": "esc2", "c4": -1.0}})
    assert sc.duration == 2.0
    assert sc.controller.design.constants["c4"] == -1.0
    assert sc.controller.design.constants["c1"] == 8.2


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError):
        scenario_from_config({"base": "case1-esc1", "colour": "red"})
    with pytest.raises(ConfigError):
        scenario_from_config({"base": "case1-esc1", "controller": {"type": "esc1", "gain": 2}})
    with pytest.raises(ConfigError):
        scenario_from_config({"base": "case1-esc1", "plant": {"type": "dynamic_soaring", "wind": {"model": "logistic", "z0": 1}}})


def test_missing_fields_without_base():
    with pytest.raises(ConfigError):
        scenario_from_config({"plant": {"type": "toy_classic"}})


def test_unknown_base():
    with pytest.raises(ConfigError):
        scenario_from_config({"base": "case9-esc1"})


def test_full_config(tmp_path):
    doc = {
        "name": "custom",
        "plant": {"type": "dynamic_soaring", "wind": {"model": "logistic", "W0": 9.0}, "objective": "J2"},
        "controller": {"type": "esc1", "a": 0.3, "omega": 2.0, "k": 0.5, "omega_h": 1.0},
        "x0": [0, 0, 12, 14, 0.1, 0.2],
        "duration": 1.0,
        "dt": 1e-3,
        "disturbance": {"relative_amplitude": 0.02},
        "seed": 3,
    }
    path = tmp_path / "c.json"
    path.write_text(json.dumps(doc))
    sc = load_config(path)
    assert sc.plant.wind.W0 == 9.0 and sc.plant.wind.delta == pytest.approx(2 / 3)
    rec = run(sc)
    assert rec.ok and len(rec.rows) == 1001


def test_config_reproduces_builtin_run():
    sc = get_scenario("case2-esc1")
    doc = scenario_to_config(sc)
    doc["duration"] = 0.5
    a = run(scenario_from_config(doc))
    b = run(scenario_from_config({"base": "case2-esc1", "duration": 0.5}))
    assert record_to_csv(a) == record_to_csv(b)


def test_bad_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(p)
