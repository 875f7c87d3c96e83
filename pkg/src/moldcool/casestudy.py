"""End-to-end run of the bundled reference part, diffed against expected values."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from . import layout as lay
from .materials import thickness_ratio
from .pvt import PvtState, specific_volume
from .report import bundled_comparison_tables
from .scenario import Scenario, load_scenario
from .thermal import SeriesOptions, cooling_time, fd_cooling_oracle, midplane_temperature
from .warpage import deflection

# Reference coolant flows: (bore diameter [m], flow rate [m3/s]).
REFERENCE_FLOWS = ((0.009, 128.0e-6), (0.008, 113.8e-6), (0.006, 85.3e-6))


@dataclass(frozen=True)
class Check:
    id: str
    computed: Any
    expected: Any
    tolerance: float | None
    kind: str
    source: str

    @property
    def passed(self) -> bool:
        if self.kind == "bool":
            return bool(self.computed) == bool(self.expected)
        err = abs(self.computed - self.expected)
        if self.kind == "rel":
            err /= abs(self.expected)
        return err <= self.tolerance

    def to_dict(self) -> dict:
        return {"id": self.id, "computed": self.computed, "expected": self.expected,
                "tolerance": self.tolerance, "kind": self.kind, "passed": self.passed,
                "source": self.source}


def expected_values_path() -> Path:
    return Path(str(resources.files("moldcool") / "data" / "case_study_expected.json"))


def compute_case_study(scenario: Scenario, fd_check: bool = True, opts: SeriesOptions = SeriesOptions()) -> dict[str, Any]:
    """Every quantity the expected-values file refers to, keyed by check id."""
    out: dict[str, Any] = {}
    mat = scenario.material
    out["thickness_ratio"] = thickness_ratio(scenario.geometry)

    problem = scenario.cooling_problem("mold")
    t_cool = cooling_time(problem)
    recon_thk = scenario.reference.get("reconciliation_thickness_m", 0.0095)
    t_recon = cooling_time(scenario.cooling_problem("mold", thickness=recon_thk))
    out["cooling_time_9.6mm_s"] = t_cool
    out["cooling_time_9.5mm_s"] = t_recon
    published = scenario.reference.get("analytical_cooling_time_s", 271.5)
    out["cooling_time_thickness_discrepancy_pct"] = 100.0 * (t_cool - published) / published
    span = problem.t_melt - problem.t_wall
    out["series_inversion_residual"] = abs(midplane_temperature(problem, t_cool, opts).temperature - problem.t_eject) / span
    if fd_check:
        fd201 = fd_cooling_oracle(problem, 201, 0.4)
        fd101 = fd_cooling_oracle(problem, 101, 0.4)
        out["fd_oracle_rel_diff"] = abs(fd201 - t_cool) / t_cool
        out["fd_grid_rel_change"] = abs(fd201 - fd101) / fd201
        out["fd_oracle_s"] = fd201

    out["specific_volume_293K_0MPa"] = specific_volume(mat, PvtState(293.15, 0.0))
    out["specific_volume_405K_112MPa"] = specific_volume(mat, scenario.packing_state())

    w = scenario.warpage_inputs()
    out["analytical_warpage_mm"] = 1e3 * deflection(w.case()) if w.explicit else math.nan

    for d, q in REFERENCE_FLOWS:
        out[f"reynolds_{round(d * 1e3)}mm"] = lay.reynolds(q, d)
    for name in lay.BUNDLED_LAYOUTS:
        out[f"layout_{name}_passes"] = lay.check_layout(lay.bundled_layout(name)).passed

    for table in bundled_comparison_tables():
        rep = table.report()
        metric = table.baseline.metric.value
        for row in rep.rows[1:]:
            out[f"reduction|{metric}|{row.variant_name}"] = row.reduction
            out[f"improvement_pct|{metric}|{row.variant_name}"] = row.improvement_pct
        for c in rep.compliance:
            if c.passed is not None:
                out[f"compliance|{metric}|{c.variant_name}"] = c.passed
    return out


def run_case_study(fd_check: bool = True, scenario: Scenario | None = None,
                   expected_path: str | Path | None = None) -> list[Check]:
    """Run the bundled case study and pair each result with its expected value.

    Checks that need the finite-difference run are skipped when ``fd_check`` is False.
    """
    scenario = load_scenario("chimsel_case_study") if scenario is None else scenario
    expected = json.loads(Path(expected_path or expected_values_path()).read_text(encoding="utf-8"))
    computed = compute_case_study(scenario, fd_check=fd_check)
    checks = []
    for e in expected["checks"]:
        if e["id"] not in computed:
            if e["id"].startswith("fd_") and not fd_check:
                continue
            raise KeyError(f"case study produced no value for {e['id']!r}")
        checks.append(Check(e["id"], computed[e["id"]], e["expected"], e["tolerance"], e["kind"], e["source"]))
    return checks
