"""Cooling-layout records, manufacturing rule checks and coolant sizing.

Lengths are in metres throughout. Rule limits live in a JSON rule file (a
bundled default reproduces the straight-drilled, conformal and hybrid limits
of the reference mold), so other molds can be checked against other numbers.

Rule file format: a JSON list of objects

    {"id": str, "kinds": [layout kinds], "field": selector,
     "min": number | {"factor": number, "of": selector},   # optional
     "max": number | {"factor": number, "of": selector},   # optional
     "message": str}

Selectors name a layout field (``channel_diameters``, ``insert_diameters``,
``dist_channel_to_cavity``, ``dist_channel_to_ejection``,
``dist_insert_to_cavity``, ``dist_insert_to_channel``) or a derived quantity
(``clearances``: every channel clearance; ``max_channel_diameter``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any, NamedTuple

from .errors import FileFormatError, ValidationError

LENGTH_SLACK = 1e-9
"""Absolute slack [m] on rule comparisons, absorbs mm-to-m rounding."""

TURBULENT_RE = 1.5e4
DERIVED_KINEMATIC_VISCOSITY = 4.527e-7
"""m2/s. Not a measured property: the value that puts the reference flow
rates (128, 113.8, 85.3 cm3/s through 9, 8, 6 mm bores) at Re = 4.0e4."""


class LayoutKind(str, Enum):
    STRAIGHT_DRILLED = "straight_drilled"
    CONFORMAL = "conformal"
    HYBRID_FULL_BARS = "hybrid_full_bars"
    HYBRID_DASHED_BARS = "hybrid_dashed_bars"

    @property
    def is_hybrid(self) -> bool:
        return self in (LayoutKind.HYBRID_FULL_BARS, LayoutKind.HYBRID_DASHED_BARS)


def _lengths(name: str, value: Any, optional: bool = True) -> tuple[float, ...] | None:
    """Normalize a length or list of lengths; conformal distances may vary along the channel."""
    if value is None:
        if optional:
            return None
        raise ValidationError(name, "mandatory field is missing", "CoolingLayout")
    values = value if isinstance(value, (list, tuple)) else [value]
    if not values:
        raise ValidationError(name, "at least one value", "CoolingLayout")
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v) or v <= 0:
            raise ValidationError(name, "all distances and diameters > 0", "CoolingLayout")
        out.append(float(v))
    return tuple(out)


@dataclass(frozen=True)
class CoolingLayout:
    """Cooling-system variant. Distances may be a single value or a range of values."""

    kind: LayoutKind
    channel_diameters: tuple[float, ...]
    dist_channel_to_cavity: tuple[float, ...]
    dist_channel_to_ejection: tuple[float, ...] | None = None
    insert_diameters: tuple[float, ...] | None = None
    dist_insert_to_cavity: tuple[float, ...] | None = None
    dist_insert_to_channel: tuple[float, ...] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "kind", LayoutKind(self.kind))
        except ValueError:
            raise ValidationError("kind", f"one of {[k.value for k in LayoutKind]}", self.name) from None
        for f in ("channel_diameters", "dist_channel_to_cavity"):
            object.__setattr__(self, f, _lengths(f, getattr(self, f), optional=False))
        insert_fields = ("insert_diameters", "dist_insert_to_cavity", "dist_insert_to_channel")
        for f in ("dist_channel_to_ejection",) + insert_fields:
            object.__setattr__(self, f, _lengths(f, getattr(self, f)))
        for f in insert_fields:
            present = getattr(self, f) is not None
            if present != self.kind.is_hybrid:
                rule = "required for hybrid layouts" if self.kind.is_hybrid else "only allowed for hybrid layouts"
                raise ValidationError(f, rule, self.name or self.kind.value)


class Violation(NamedTuple):
    rule_id: str
    measured: float
    limit: float
    message: str


@dataclass(frozen=True)
class RuleReport:
    layout: str
    violations: tuple[Violation, ...] = ()
    checked: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "layout": self.layout,
            "passed": self.passed,
            "rules_checked": list(self.checked),
            "violations": [v._asdict() for v in self.violations],
        }


@dataclass(frozen=True)
class Rule:
    id: str
    kinds: tuple[LayoutKind, ...]
    field: str
    min: Any = None
    max: Any = None
    message: str = ""


_SELECTORS = {
    "channel_diameters", "insert_diameters", "dist_channel_to_cavity", "dist_channel_to_ejection",
    "dist_insert_to_cavity", "dist_insert_to_channel", "clearances", "max_channel_diameter",
}


def _select(layout: CoolingLayout, selector: str) -> tuple[float, ...]:
    if selector == "clearances":
        return layout.dist_channel_to_cavity + (layout.dist_channel_to_ejection or ())
    if selector == "max_channel_diameter":
        return (max(layout.channel_diameters),)
    return getattr(layout, selector) or ()


def _limit(layout: CoolingLayout, bound: Any) -> float:
    if isinstance(bound, dict):
        return bound["factor"] * max(_select(layout, bound["of"]))
    return float(bound)


def check_layout(layout: CoolingLayout, rules: list[Rule] | None = None) -> RuleReport:
    """Check a layout against every rule that applies to its kind.

    Each rule reports at most one violation per bound, measured at the worst
    value (smallest for a minimum, largest for a maximum), so the report does
    not depend on the order of channels in the layout.
    """
    if rules is None:
        rules = bundled_rules()
    violations = []
    checked = []
    for rule in rules:
        if layout.kind not in rule.kinds:
            continue
        values = _select(layout, rule.field)
        if not values:
            continue
        checked.append(rule.id)
        if rule.min is not None:
            limit = _limit(layout, rule.min)
            worst = min(values)
            if worst < limit - LENGTH_SLACK:
                violations.append(Violation(rule.id, worst, limit, rule.message or f"{rule.field} >= {limit}"))
        if rule.max is not None:
            limit = _limit(layout, rule.max)
            worst = max(values)
            if worst > limit + LENGTH_SLACK:
                violations.append(Violation(rule.id, worst, limit, rule.message or f"{rule.field} <= {limit}"))
    return RuleReport(layout.name or layout.kind.value, tuple(violations), tuple(checked))


def _read_json(path: str | Path, what: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise FileFormatError(f"cannot read {what} {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: malformed JSON ({exc})") from exc


def rules_from_list(data: Any) -> list[Rule]:
    if not isinstance(data, list):
        raise FileFormatError("rule file must be a JSON list")
    rules = []
    for i, raw in enumerate(data):
        if not isinstance(raw, dict) or "id" not in raw or "field" not in raw or "kinds" not in raw:
            raise FileFormatError(f"rule {i} needs 'id', 'kinds' and 'field'")
        if raw["field"] not in _SELECTORS:
            raise FileFormatError(f"rule {raw['id']}: unknown field selector {raw['field']!r}")
        if raw.get("min") is None and raw.get("max") is None:
            raise FileFormatError(f"rule {raw['id']}: needs 'min' or 'max'")
        for bound in ("min", "max"):
            b = raw.get(bound)
            if isinstance(b, dict) and (b.get("of") not in _SELECTORS or "factor" not in b):
                raise FileFormatError(f"rule {raw['id']}: relative {bound} needs 'factor' and a valid 'of'")
        try:
            kinds = tuple(LayoutKind(k) for k in raw["kinds"])
        except ValueError as exc:
            raise FileFormatError(f"rule {raw['id']}: {exc}") from exc
        rules.append(Rule(raw["id"], kinds, raw["field"], raw.get("min"), raw.get("max"), raw.get("message", "")))
    return rules


def load_rules(path: str | Path) -> list[Rule]:
    return rules_from_list(_read_json(path, "rule file"))


def layout_from_dict(data: Any) -> CoolingLayout:
    if not isinstance(data, dict):
        raise FileFormatError("layout file must be a JSON object")
    known = {"name", "kind", "channel_diameters", "dist_channel_to_cavity", "dist_channel_to_ejection",
             "insert_diameters", "dist_insert_to_cavity", "dist_insert_to_channel"}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValidationError(unknown[0], "unknown field", data.get("name", "layout"))
    for f in ("kind", "channel_diameters", "dist_channel_to_cavity"):
        if f not in data:
            raise ValidationError(f, "mandatory field is missing", data.get("name", "layout"))
    return CoolingLayout(**data)


def load_layout(path: str | Path) -> CoolingLayout:
    return layout_from_dict(_read_json(path, "layout file"))


BUNDLED_LAYOUTS = ("straight_drilled", "conformal", "hybrid_full_bars", "hybrid_dashed_bars")


def _data_path(*parts: str) -> Path:
    return Path(str(resources.files("moldcool") / "data")).joinpath(*parts)


def bundled_layout(name: str) -> CoolingLayout:
    if name not in BUNDLED_LAYOUTS:
        raise KeyError(f"no bundled layout {name!r}; known: {list(BUNDLED_LAYOUTS)}")
    return load_layout(_data_path("layouts", f"{name}.json"))


def bundled_rules() -> list[Rule]:
    return load_rules(_data_path("layout_rules.json"))


# -- coolant hydraulics ------------------------------------------------------


@dataclass(frozen=True)
class CoolantSpec:
    kinematic_viscosity: float = DERIVED_KINEMATIC_VISCOSITY
    temperature: float = 75.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.kinematic_viscosity) and self.kinematic_viscosity > 0):
            raise ValidationError("kinematic_viscosity", "kinematic_viscosity > 0", "CoolantSpec")


DEFAULT_COOLANT = CoolantSpec()


class TurbulenceClass(str, Enum):
    LAMINAR_OR_TRANSITIONAL = "laminar_or_transitional"
    TURBULENT_OK = "turbulent_ok"


def reynolds(flow_rate: float, diameter: float, coolant: CoolantSpec = DEFAULT_COOLANT) -> float:
    """Reynolds number ``4 Q / (pi D nu)`` of a full circular bore.

    Args:
        flow_rate: Volumetric flow [m3/s].
        diameter: Bore diameter [m].
        coolant: Supplies the kinematic viscosity [m2/s].
    """
    if diameter <= 0:
        raise ValidationError("diameter", "diameter > 0", "reynolds")
    if flow_rate < 0:
        raise ValidationError("flow_rate", "flow_rate >= 0", "reynolds")
    return 4.0 * flow_rate / (math.pi * diameter * coolant.kinematic_viscosity)


def flow_rate_for_reynolds(re_target: float, diameter: float, coolant: CoolantSpec = DEFAULT_COOLANT) -> float:
    """Flow rate [m3/s] that gives ``re_target`` in a bore of ``diameter`` [m]."""
    if re_target <= 0:
        raise ValidationError("re_target", "re_target > 0", "flow_rate_for_reynolds")
    if diameter <= 0:
        raise ValidationError("diameter", "diameter > 0", "flow_rate_for_reynolds")
    return re_target * math.pi * diameter * coolant.kinematic_viscosity / 4.0


def turbulence_class(re: float) -> TurbulenceClass:
    if re < 0:
        raise ValidationError("re", "re >= 0", "turbulence_class")
    return TurbulenceClass.TURBULENT_OK if re > TURBULENT_RE else TurbulenceClass.LAMINAR_OR_TRANSITIONAL
