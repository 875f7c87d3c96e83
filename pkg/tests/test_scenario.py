import json

import pytest

from moldcool.errors import FileFormatError, ValidationError
from moldcool.layout import LayoutKind
from moldcool.scenario import BUNDLED_SCENARIOS, bundled_scenario_path, load_scenario


def _raw(name="chimsel_case_study"):
    return json.loads(bundled_scenario_path(name).read_text())


@pytest.mark.parametrize("name", BUNDLED_SCENARIOS)
def test_bundled_scenarios_load(name):
    sc = load_scenario(name)
    assert sc.material.name.lower().startswith("plexiglas")


def test_case_study_contents():
    sc = load_scenario("chimsel_case_study")
    assert sc.geometry.max_thickness == 0.0096 and sc.geometry.length == 0.63
    assert sc.layout.kind is LayoutKind.STRAIGHT_DRILLED
    p = sc.cooling_problem()
    assert (p.t_melt, p.t_wall, p.t_eject) == (235.0, 80.0, 94.0)
    assert sc.cooling_problem("coolant").t_wall == 75.0
    w = sc.warpage_inputs()
    assert w.explicit and w.case().differential == pytest.approx(2.7267e-4)


def test_simulation_scenario_defaults():
    sc = load_scenario("chimsel_simulation")
    assert (sc.process.melt_temperature_c, sc.process.mold_temperature_c, sc.process.eject_temperature_c) == (240, 75, 112)
    w = sc.warpage_inputs()
    assert not w.explicit
    assert w.edge_state.temperature == pytest.approx(405.15) and w.edge_state.pressure == 112e6
    assert w.center_state.pressure == 0.0
    assert w.half_span == pytest.approx(0.315)


def test_from_states_overrides_explicit():
    w = load_scenario("chimsel_case_study").warpage_inputs(from_states=True)
    assert not w.explicit and w.note == "default states"


def _write(tmp_path, data):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(data))
    return path


def test_eject_below_mold_rejected(tmp_path):
    data = _raw()
    data["process"]["eject_temperature_c"] = 70.0
    with pytest.raises(ValidationError) as err:
        load_scenario(_write(tmp_path, data))
    assert err.value.field == "eject_temperature_c"


def test_unknown_material_rejected(tmp_path):
    data = _raw()
    data["material_ref"] = "unobtainium"
    with pytest.raises(ValidationError, match="unobtainium"):
        load_scenario(_write(tmp_path, data))


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("geometry"),
    lambda d: d["process"].pop("fill_time_s"),
    lambda d: d["process"].update(colour=1),
    lambda d: d["warpage_inputs"].update(edge_state={"temperature_c": 100}),
    lambda d: d["warpage_inputs"].update(s_edge=1.5),
])
def test_invalid_fields(tmp_path, mutate):
    data = _raw()
    mutate(data)
    with pytest.raises(ValidationError):
        load_scenario(_write(tmp_path, data))


def test_relative_layout_ref(tmp_path):
    (tmp_path / "lay.json").write_text(json.dumps(
        {"kind": "conformal", "channel_diameters": [0.008], "dist_channel_to_cavity": 0.008}))
    data = _raw()
    data["layout_ref"] = "lay.json"
    assert load_scenario(_write(tmp_path, data)).layout.kind is LayoutKind.CONFORMAL


def test_file_errors(tmp_path):
    with pytest.raises(FileFormatError):
        load_scenario(tmp_path / "none.json")
    path = tmp_path / "bad.json"
    path.write_text("{")
    with pytest.raises(FileFormatError):
        load_scenario(path)
    with pytest.raises(FileFormatError):
        load_scenario(_write(tmp_path, [1, 2]))
