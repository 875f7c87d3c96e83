"""Scenario files: one part, one polymer, one set of process conditions.

Units are embedded in field names (``melt_temperature_c``, ``packing_pressure_mpa``,
``max_thickness_m``). Fill time, switch-over and pressure-profile entries are
carried for reporting; only the temperatures and the packing pressure feed
the analytical models.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import FileFormatError, ValidationError
from .layout import BUNDLED_LAYOUTS, CoolingLayout, bundled_layout, load_layout
from .materials import MaterialLibrary, PartGeometry, ThermoplasticMaterial, bundled_library
from .pvt import PvtState
from .thermal import CoolingProblem
from .warpage import WarpageCase, half_span_from_geometry

BUNDLED_SCENARIOS = ("chimsel_case_study", "chimsel_simulation")

_PROCESS_FIELDS = (
    "fill_time_s", "packing_time_s", "vp_switch_pct",
    "melt_temperature_c", "mold_temperature_c", "eject_temperature_c", "coolant_temperature_c",
    "max_injection_pressure_mpa", "max_packing_pressure_mpa", "packing_pressure_mpa",
)


@dataclass(frozen=True)
class ProcessConditions:
    fill_time_s: float
    packing_time_s: float
    vp_switch_pct: float
    melt_temperature_c: float
    mold_temperature_c: float
    eject_temperature_c: float
    coolant_temperature_c: float
    max_injection_pressure_mpa: float
    max_packing_pressure_mpa: float
    packing_pressure_mpa: float

    def __post_init__(self) -> None:
        for name in _PROCESS_FIELDS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(name, "must be a number", "process")
        if not self.mold_temperature_c < self.eject_temperature_c:
            raise ValidationError("eject_temperature_c", "mold_temperature_c < eject_temperature_c", "process")
        if not self.eject_temperature_c < self.melt_temperature_c:
            raise ValidationError("melt_temperature_c", "eject_temperature_c < melt_temperature_c", "process")
        for name in ("fill_time_s", "packing_time_s", "max_injection_pressure_mpa",
                     "max_packing_pressure_mpa", "packing_pressure_mpa"):
            if getattr(self, name) < 0:
                raise ValidationError(name, f"{name} >= 0", "process")


@dataclass(frozen=True)
class WarpageInputs:
    """Half span plus either explicit shrinkages or the two PVT states."""

    half_span: float
    edge_state: PvtState | None = None
    center_state: PvtState | None = None
    s_edge: float | None = None
    s_center: float | None = None
    note: str = ""

    @property
    def explicit(self) -> bool:
        return self.s_edge is not None

    def case(self) -> WarpageCase:
        return WarpageCase(self.half_span, self.s_edge, self.s_center)


@dataclass(frozen=True)
class Scenario:
    name: str
    material: ThermoplasticMaterial
    geometry: PartGeometry
    process: ProcessConditions
    layout: CoolingLayout | None = None
    warpage: WarpageInputs | None = None
    reference: dict[str, Any] = field(default_factory=dict)

    def cooling_problem(self, wall: str = "mold", thickness: float | None = None) -> CoolingProblem:
        """Slab problem from the process temperatures.

        Args:
            wall: ``"mold"`` or ``"coolant"``: which temperature bounds the slab.
            thickness: Override for the governing thickness [m]; defaults to
                the part's maximum thickness.
        """
        if wall not in ("mold", "coolant"):
            raise ValidationError("wall", "'mold' or 'coolant'", self.name)
        t_wall = self.process.mold_temperature_c if wall == "mold" else self.process.coolant_temperature_c
        return CoolingProblem(
            thickness=self.geometry.max_thickness if thickness is None else thickness,
            t_melt=self.process.melt_temperature_c,
            t_wall=t_wall,
            t_eject=self.process.eject_temperature_c,
            alpha_p=self.material.alpha_p,
        )

    def packing_state(self) -> PvtState:
        """Default pack/cooling state: freeze temperature at the packing pressure."""
        return PvtState.from_celsius_mpa(self.material.t_freeze, self.process.packing_pressure_mpa)

    def warpage_inputs(self, from_states: bool = False) -> WarpageInputs:
        """Warpage inputs, filling gaps with defaults.

        Half span defaults to half the part length. Without explicit states the
        edge sits at :meth:`packing_state` and the centre at the freeze
        temperature with the pressure released. ``from_states`` ignores explicit
        shrinkage values in favour of those states.
        """
        w = self.warpage
        half_span = w.half_span if w else half_span_from_geometry(self.geometry)
        if w and w.explicit:
            if not from_states:
                return w
            w = None
        edge = w.edge_state if w and w.edge_state else self.packing_state()
        center = w.center_state if w and w.center_state else PvtState.from_celsius_mpa(self.material.t_freeze, 0.0)
        return WarpageInputs(half_span, edge, center, note=w.note if w and w.note else "default states")


def _require(data: dict, key: str, where: str) -> Any:
    if key not in data:
        raise ValidationError(key, "mandatory field is missing", where)
    return data[key]


def _state(raw: Any, where: str) -> PvtState:
    if not isinstance(raw, dict):
        raise FileFormatError(f"{where} must be an object with temperature_c and pressure_mpa")
    return PvtState.from_celsius_mpa(_require(raw, "temperature_c", where), raw.get("pressure_mpa", 0.0))


def _warpage(raw: Any, geometry: PartGeometry) -> WarpageInputs:
    if not isinstance(raw, dict):
        raise FileFormatError("warpage_inputs must be an object")
    half_span = raw.get("half_span_m", half_span_from_geometry(geometry))
    note = raw.get("note", "")
    has_s = "s_edge" in raw or "s_center" in raw
    has_states = "edge_state" in raw or "center_state" in raw
    if has_s and has_states:
        raise ValidationError("warpage_inputs", "give either s_edge/s_center or edge_state/center_state", "scenario")
    if has_s:
        w = WarpageInputs(half_span, s_edge=_require(raw, "s_edge", "warpage_inputs"),
                          s_center=_require(raw, "s_center", "warpage_inputs"), note=note)
        w.case()  # validates
        return w
    edge = _state(raw["edge_state"], "edge_state") if "edge_state" in raw else None
    center = _state(raw["center_state"], "center_state") if "center_state" in raw else None
    if half_span <= 0:
        raise ValidationError("half_span_m", "half_span_m > 0", "warpage_inputs")
    return WarpageInputs(half_span, edge, center, note=note)


def scenario_from_dict(data: Any, library: MaterialLibrary | None = None, base_dir: Path | None = None) -> Scenario:
    """Validate a parsed scenario document and resolve its references."""
    if not isinstance(data, dict):
        raise FileFormatError("scenario must be a JSON object")
    library = bundled_library() if library is None else library
    name = data.get("name", "scenario")
    ref = _require(data, "material_ref", name)
    try:
        material = library.thermoplastic(ref)
    except KeyError:
        raise ValidationError("material_ref", f"unknown material {ref!r}", name) from None

    geo = _require(data, "geometry", name)
    proc = _require(data, "process", name)
    if not isinstance(geo, dict) or not isinstance(proc, dict):
        raise FileFormatError("geometry and process must be JSON objects")
    geometry = PartGeometry(**{k: _require(geo, f"{k}_m", "geometry")
                               for k in ("max_thickness", "avg_thickness", "width", "length", "height")})
    unknown = sorted(set(proc) - set(_PROCESS_FIELDS))
    if unknown:
        raise ValidationError(unknown[0], "unknown field", "process")
    process = ProcessConditions(**{k: _require(proc, k, "process") for k in _PROCESS_FIELDS})

    layout = None
    if data.get("layout_ref"):
        layout_ref = data["layout_ref"]
        if layout_ref in BUNDLED_LAYOUTS:
            layout = bundled_layout(layout_ref)
        else:
            path = Path(layout_ref)
            if not path.is_absolute() and base_dir is not None:
                path = base_dir / path
            layout = load_layout(path)

    warpage = _warpage(data["warpage_inputs"], geometry) if "warpage_inputs" in data else None
    return Scenario(name, material, geometry, process, layout, warpage, dict(data.get("reference", {})))


def load_scenario(path: str | Path, library: MaterialLibrary | None = None) -> Scenario:
    """Load a scenario file, or a bundled scenario by name.

    Raises:
        FileFormatError: Unreadable or malformed file.
        ValidationError: Unresolved material, or a field breaks an invariant.
    """
    if str(path) in BUNDLED_SCENARIOS:
        path = bundled_scenario_path(str(path))
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise FileFormatError(f"cannot read scenario {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: malformed JSON ({exc})") from exc
    return scenario_from_dict(data, library, path.parent)


def bundled_scenario_path(name: str) -> Path:
    return Path(str(resources.files("moldcool") / "data" / "scenarios" / f"{name}.json"))
