"""Material property records and the JSON material library.

Property values are single-point (no temperature dependence). Temperatures
are kept in the unit the source tables use: process temperatures in degC,
the Tait transition coefficient ``b5`` in K.
"""

from __future__ import annotations

import json
import math
from dataclasses import MISSING, asdict, dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import FileFormatError, ValidationError

CELSIUS_TO_KELVIN = 273.15


def _check_number(record: str, name: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(name, "must be a number", record)
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(name, "must be finite", record)
    return value


def _check_positive(record: str, obj: Any, *names: str) -> None:
    for name in names:
        if getattr(obj, name) <= 0:
            raise ValidationError(name, f"{name} > 0", record)


@dataclass(frozen=True)
class ThermoplasticMaterial:
    """Thermal, Tait and mechanical properties of a molded polymer.

    ``b1`` [m3/kg], ``b2`` [m3/(kg K)], ``b3`` [Pa], ``b4`` [1/K] and ``b5`` [K]
    are the Tait coefficients. ``uoi``, ``fsc``, ``tsc`` and ``t_freeze`` are
    carried for completeness; no model here consumes the optical ones.
    """

    name: str
    alpha_p: float
    rho_p: float
    c_p: float
    t_melt: float
    t_mold: float
    t_eject: float
    t_freeze: float
    b1: float
    b2: float
    b3: float
    b4: float
    b5: float
    e_p: float
    poisson: float
    clte: float
    uoi: float
    fsc: float
    tsc: float

    def __post_init__(self) -> None:
        for f in fields(self):
            if f.name != "name":
                object.__setattr__(self, f.name, _check_number(self.name, f.name, getattr(self, f.name)))
        _check_positive(self.name, self, "alpha_p", "rho_p", "c_p", "b1", "b3", "b4", "b5")
        if not self.t_mold < self.t_eject:
            raise ValidationError("t_eject", "t_mold < t_eject", self.name)
        if not self.t_eject < self.t_freeze:
            raise ValidationError("t_freeze", "t_eject < t_freeze", self.name)
        if not self.t_freeze < self.t_melt:
            raise ValidationError("t_melt", "t_freeze < t_melt", self.name)

    @property
    def t_melt_k(self) -> float:
        return self.t_melt + CELSIUS_TO_KELVIN


@dataclass(frozen=True)
class MoldMaterial:
    """Mold steel or insert alloy.

    The heat capacities printed for the bundled steels (4.62e3 and 4.70e3
    J/(kg K)) are about ten times typical steel values. They are stored as
    printed and nothing in the package computes with them.
    """

    name: str
    rho: float
    heat_capacity: float
    elastic_modulus: float
    yield_stress: float
    poisson: float
    clte: float
    thermal_diffusivity: float
    thermal_conductivity: float
    mechanical_resistance: float | None = None
    elongation: float | None = None

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "name" or (value is None and f.default is None):
                continue
            object.__setattr__(self, f.name, _check_number(self.name, f.name, value))
        _check_positive(
            self.name, self, "rho", "heat_capacity", "elastic_modulus", "yield_stress",
            "clte", "thermal_diffusivity", "thermal_conductivity",
        )
        for name in ("mechanical_resistance", "elongation"):
            if getattr(self, name) is not None:
                _check_positive(self.name, self, name)
        if not 0.0 < self.poisson < 0.5:
            raise ValidationError("poisson", "0 < poisson < 0.5", self.name)


@dataclass(frozen=True)
class PartGeometry:
    """Main dimensions of the molded part, all in metres."""

    max_thickness: float
    avg_thickness: float
    width: float
    length: float
    height: float

    def __post_init__(self) -> None:
        for f in fields(self):
            object.__setattr__(self, f.name, _check_number("geometry", f.name, getattr(self, f.name)))
        _check_positive("geometry", self, "max_thickness", "avg_thickness", "width", "length", "height")
        if self.avg_thickness > self.max_thickness:
            raise ValidationError("avg_thickness", "avg_thickness <= max_thickness", "geometry")


def thickness_ratio(g: PartGeometry) -> float:
    """Ratio of maximum to average wall thickness."""
    return g.max_thickness / g.avg_thickness


@dataclass(frozen=True)
class MaterialLibrary:
    thermoplastics: tuple[ThermoplasticMaterial, ...] = ()
    mold_materials: tuple[MoldMaterial, ...] = ()

    def names(self) -> list[str]:
        return [m.name for m in self.thermoplastics] + [m.name for m in self.mold_materials]

    def thermoplastic(self, name: str) -> ThermoplasticMaterial:
        for m in self.thermoplastics:
            if m.name == name:
                return m
        raise KeyError(f"no thermoplastic named {name!r}; known: {[m.name for m in self.thermoplastics]}")

    def mold_material(self, name: str) -> MoldMaterial:
        for m in self.mold_materials:
            if m.name == name:
                return m
        raise KeyError(f"no mold material named {name!r}; known: {[m.name for m in self.mold_materials]}")

    def merged(self, other: MaterialLibrary) -> MaterialLibrary:
        lib = MaterialLibrary(self.thermoplastics + other.thermoplastics,
                              self.mold_materials + other.mold_materials)
        _check_unique(lib.names())
        return lib


def _check_unique(names: list[str]) -> None:
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise ValidationError("name", "names must be unique within a library", name)
        seen.add(name)


def _build(cls: type, raw: Any, index: int, section: str):
    if not isinstance(raw, dict):
        raise FileFormatError(f"{section}[{index}] is not a JSON object")
    record = raw.get("name")
    if not isinstance(record, str) or not record:
        raise ValidationError("name", "non-empty text", f"{section}[{index}]")
    known = {f.name: f for f in fields(cls)}
    unknown = sorted(set(raw) - set(known))
    if unknown:
        raise ValidationError(unknown[0], "unknown field", record)
    for name, f in known.items():
        if f.default is MISSING and name not in raw:
            raise ValidationError(name, "mandatory field is missing", record)
    return cls(**raw)


def library_from_dict(data: Any) -> MaterialLibrary:
    """Validate a parsed material-library document and build its records."""
    if not isinstance(data, dict):
        raise FileFormatError("material library must be a JSON object")
    unknown = sorted(set(data) - {"thermoplastics", "mold_materials"})
    if unknown:
        raise FileFormatError(f"unknown top-level key {unknown[0]!r} in material library")
    thermo_raw = data.get("thermoplastics", [])
    mold_raw = data.get("mold_materials", [])
    if not isinstance(thermo_raw, list) or not isinstance(mold_raw, list):
        raise FileFormatError("'thermoplastics' and 'mold_materials' must be arrays")
    lib = MaterialLibrary(
        tuple(_build(ThermoplasticMaterial, r, i, "thermoplastics") for i, r in enumerate(thermo_raw)),
        tuple(_build(MoldMaterial, r, i, "mold_materials") for i, r in enumerate(mold_raw)),
    )
    _check_unique(lib.names())
    return lib


def library_to_dict(lib: MaterialLibrary) -> dict:
    def strip(rec: dict) -> dict:
        return {k: v for k, v in rec.items() if v is not None}

    return {
        "thermoplastics": [asdict(m) for m in lib.thermoplastics],
        "mold_materials": [strip(asdict(m)) for m in lib.mold_materials],
    }


def load_material_library(path: str | Path) -> MaterialLibrary:
    """Load and validate a material library file.

    Args:
        path: UTF-8 JSON file with ``thermoplastics`` and ``mold_materials`` arrays.

    Returns:
        The validated library.

    Raises:
        FileFormatError: The file is missing or is not valid JSON of the right shape.
        ValidationError: A record breaks an invariant, lacks a field, or repeats a name.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read material library {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: malformed JSON ({exc})") from exc
    return library_from_dict(data)


def save_material_library(lib: MaterialLibrary, path: str | Path) -> None:
    Path(path).write_text(json.dumps(library_to_dict(lib), indent=2) + "\n", encoding="utf-8")


BUNDLED_MATERIAL_FILES = ("plexiglas_8n.json", "steel_1_2709.json", "fastcool_50.json")


def bundled_material_path(filename: str) -> Path:
    return Path(str(resources.files("moldcool") / "data" / "materials" / filename))


def bundled_library() -> MaterialLibrary:
    """The three bundled records (PMMA Plexiglas 8N, steel 1.2709, Fastcool 50)."""
    lib = MaterialLibrary()
    for filename in BUNDLED_MATERIAL_FILES:
        lib = lib.merged(load_material_library(bundled_material_path(filename)))
    return lib
