"""``moldcool`` command-line front end.

Exit codes: 0 success, 1 validation or domain error (including a layout that
fails its rules, or a case study with a mismatching value), 2 file or format
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import layout as lay
from .casestudy import run_case_study
from .errors import ConvergenceError, DomainError, FileFormatError, ValidationError
from .materials import bundled_library, load_material_library, thickness_ratio
from .pvt import PvtState, shrinkage, specific_volume
from .report import bundled_comparison_tables, load_comparison_tables
from .scenario import load_scenario
from .thermal import SeriesOptions, cooling_time, fd_cooling_oracle, midplane_curve, midplane_temperature
from .warpage import WarpageCase, deflection, deflection_from_states

EXIT_OK, EXIT_DOMAIN, EXIT_FILE = 0, 1, 2
PRINTED_TOLERANCE = 1e-3
"""Agreement with a printed 3-decimal table value: one unit in the last place."""


class _Failed(Exception):
    """Command ran but its verdict is negative (exit code 1)."""


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _library(args):
    if getattr(args, "materials", None):
        return bundled_library().merged(load_material_library(args.materials)) if args.with_bundled \
            else load_material_library(args.materials)
    return bundled_library()


def _scenario(args):
    return load_scenario(args.scenario or "chimsel_case_study", _library(args))


def _emit(args, payload: dict, text: str, rows: list[dict] | None = None,
          columns: Sequence[str] | None = None) -> None:
    fmt = args.format
    if fmt == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        if rows is None:
            raise ValidationError("format", "csv is not available for this command")
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(columns or rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out = buf.getvalue()
    else:
        out = text.rstrip("\n") + "\n"
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


# -- subcommands -------------------------------------------------------------


def cmd_pvt(args) -> None:
    lib = _library(args)
    mat = lib.thermoplastic(args.material) if args.material else _scenario(args).material
    rows = []
    for t_c in args.temps_c:
        for p_mpa in args.pressures_mpa:
            state = PvtState.from_celsius_mpa(t_c, p_mpa)
            sh = shrinkage(mat, state)
            rows.append({
                "temperature_c": t_c, "temperature_k": state.temperature, "pressure_mpa": p_mpa,
                "specific_volume_m3_kg": specific_volume(mat, state),
                "r_v": sh.r_v, "s_linear": sh.s_linear, "in_range": sh.in_range,
            })
    lines = [f"Tait specific volume, {mat.name} (reference 20 degC, 0 MPa)",
             f"{'T [degC]':>9} {'P [MPa]':>8} {'v [m3/kg]':>13} {'r_v':>9} {'S':>9}  range"]
    for r in rows:
        lines.append(f"{r['temperature_c']:9.2f} {r['pressure_mpa']:8.2f} {r['specific_volume_m3_kg']:13.6e} "
                     f"{r['r_v']:9.6f} {r['s_linear']:9.6f}  {'ok' if r['in_range'] else 'extrapolated'}")
    _emit(args, {"material": mat.name, "rows": rows}, "\n".join(lines), rows)


def cmd_cooling_time(args) -> None:
    sc = _scenario(args)
    thickness = args.thickness_mm * 1e-3 if args.thickness_mm else None
    problem = sc.cooling_problem(args.wall, thickness)
    opts = SeriesOptions(args.terms, args.tol)
    t_cool = cooling_time(problem)
    check = midplane_temperature(problem, t_cool, opts)
    payload: dict[str, Any] = {
        "scenario": sc.name,
        "thickness_m": problem.thickness,
        "t_melt_c": problem.t_melt, "t_wall_c": problem.t_wall, "t_eject_c": problem.t_eject,
        "alpha_p_m2_s": problem.alpha_p,
        "cooling_time_s": t_cool,
        "fourier_at_ejection": problem.fourier_number(t_cool),
        "series_midplane_at_ejection_c": check.temperature,
        "series_terms": check.terms,
    }
    lines = [
        f"Scenario {sc.name}: thickness {problem.thickness * 1e3:.2f} mm, "
        f"melt/wall/eject {problem.t_melt:g}/{problem.t_wall:g}/{problem.t_eject:g} degC",
        f"Cooling time (closed form): {t_cool:.1f} s   (Fo = {payload['fourier_at_ejection']:.4f})",
        f"Series midplane at that time: {check.temperature:.4f} degC ({check.terms} terms)",
    ]
    if args.fd_check:
        fd = fd_cooling_oracle(problem, args.nodes, args.safety)
        payload["fd_cooling_time_s"] = fd
        payload["fd_rel_diff"] = abs(fd - t_cool) / t_cool
        lines.append(f"Finite-difference check ({args.nodes} nodes): {fd:.1f} s "
                     f"({100 * payload['fd_rel_diff']:.3f} % from closed form)")
    ref = sc.reference
    if "analytical_cooling_time_s" in ref and thickness is None and args.wall == "mold":
        published = ref["analytical_cooling_time_s"]
        recon = ref.get("reconciliation_thickness_m")
        payload["reference"] = {"published_cooling_time_s": published,
                                "difference_pct": 100 * (t_cool - published) / published}
        lines.append(f"Reference value {published} s: this result differs by "
                     f"{payload['reference']['difference_pct']:+.1f} %")
        if recon:
            t_recon = cooling_time(sc.cooling_problem("mold", recon))
            payload["reference"].update(reconciliation_thickness_m=recon, reconciliation_cooling_time_s=t_recon)
            lines.append(f"  at {recon * 1e3:.1f} mm the closed form gives {t_recon:.1f} s")
        if ref.get("analytical_cooling_time_note"):
            payload["reference"]["note"] = ref["analytical_cooling_time_note"]
            lines.append(f"  note: {ref['analytical_cooling_time_note']}")
    if args.curve_csv:
        times = np.linspace(0.0, args.curve_span * t_cool, args.curve_points)
        temps = midplane_curve(problem, times, opts)
        with open(args.curve_csv, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "T_midplane"])
            w.writerows((f"{t:.6g}", f"{T:.6f}") for t, T in zip(times, temps))
        lines.append(f"Midplane curve written to {args.curve_csv}")
    _emit(args, payload, "\n".join(lines), [
        {k: v for k, v in payload.items() if not isinstance(v, dict)}])


def cmd_warpage(args) -> None:
    direct = args.s_edge is not None or args.s_center is not None
    states = args.edge_t_c is not None or args.center_t_c is not None
    if direct and states:
        raise ValidationError("warpage", "give either --s-edge/--s-center or PVT states, not both")
    payload: dict[str, Any]
    if direct:
        if args.half_span_mm is None or args.s_edge is None or args.s_center is None:
            raise ValidationError("warpage", "--half-span-mm, --s-edge and --s-center are all required")
        case = WarpageCase(args.half_span_mm * 1e-3, args.s_edge, args.s_center)
        payload = {"half_span_m": case.half_span, "s_edge": case.s_edge, "s_center": case.s_center}
        result_m = deflection(case)
    else:
        if states:
            lib = _library(args)
            mat = lib.thermoplastic(args.material or "plexiglas_8n")
            if args.half_span_mm is None or args.edge_t_c is None or args.center_t_c is None:
                raise ValidationError("warpage", "--half-span-mm, --edge-t-c and --center-t-c are all required")
            half_span = args.half_span_mm * 1e-3
            edge = PvtState.from_celsius_mpa(args.edge_t_c, args.edge_p_mpa)
            center = PvtState.from_celsius_mpa(args.center_t_c, args.center_p_mpa)
            note = ""
        else:
            sc = _scenario(args)
            mat = sc.material
            w = sc.warpage_inputs(from_states=args.from_states)
            if w.explicit:
                case = w.case()
                _emit_warpage(args, {"scenario": sc.name, "half_span_m": case.half_span, "s_edge": case.s_edge,
                                     "s_center": case.s_center, "note": w.note}, case, deflection(case))
                return
            half_span, note, edge, center = w.half_span, w.note, w.edge_state, w.center_state
        res = deflection_from_states(mat, half_span, edge, center)
        case = res.case
        payload = {
            "material": mat.name, "half_span_m": half_span,
            "edge_state": {"temperature_k": edge.temperature, "pressure_pa": edge.pressure},
            "center_state": {"temperature_k": center.temperature, "pressure_pa": center.pressure},
            "edge": res.edge.__dict__, "center": res.center.__dict__,
            "s_edge": case.s_edge, "s_center": case.s_center,
        }
        if note:
            payload["note"] = note
        result_m = res.deflection
    _emit_warpage(args, payload, case, result_m)


def _emit_warpage(args, payload: dict, case: WarpageCase, result_m: float) -> None:
    payload.update(delta_s=case.differential, dominant=case.dominant.value,
                   deflection_m=result_m, deflection_mm=result_m * 1e3)
    lines = [f"Half span {case.half_span * 1e3:.1f} mm, S_edge {case.s_edge:.6g}, S_center {case.s_center:.6g}",
             f"Shrinkage differential {case.differential:.6g} ({case.dominant.value})",
             f"Deflection: {result_m * 1e3:.3f} mm"]
    if payload.get("note"):
        lines.append(f"note: {payload['note']}")
    row = {k: v for k, v in payload.items() if not isinstance(v, dict)}
    _emit(args, payload, "\n".join(lines), [row])


def cmd_hydraulics(args) -> None:
    coolant = lay.CoolantSpec(args.nu, args.coolant_t_c)
    diameters = [d * 1e-3 for d in args.diameters_mm]
    rows = []
    if args.flow_rates_cm3s:
        if len(args.flow_rates_cm3s) != len(diameters):
            raise ValidationError("flow_rates_cm3s", "one flow rate per diameter")
        for d, q in zip(diameters, args.flow_rates_cm3s):
            re = lay.reynolds(q * 1e-6, d, coolant)
            rows.append({"diameter_mm": d * 1e3, "flow_rate_cm3_s": q, "reynolds": re,
                         "regime": lay.turbulence_class(re).value})
    else:
        for d in diameters:
            q = lay.flow_rate_for_reynolds(args.re_target, d, coolant)
            rows.append({"diameter_mm": d * 1e3, "flow_rate_cm3_s": q * 1e6, "reynolds": args.re_target,
                         "regime": lay.turbulence_class(args.re_target).value})
    lines = [f"Coolant nu = {coolant.kinematic_viscosity:.4g} m2/s at {coolant.temperature:g} degC",
             f"{'D [mm]':>7} {'Q [cm3/s]':>10} {'Re':>10}  regime"]
    lines += [f"{r['diameter_mm']:7.2f} {r['flow_rate_cm3_s']:10.2f} {r['reynolds']:10.0f}  {r['regime']}" for r in rows]
    _emit(args, {"kinematic_viscosity_m2_s": coolant.kinematic_viscosity,
                 "coolant_temperature_c": coolant.temperature, "rows": rows}, "\n".join(lines), rows)


def cmd_check_layout(args) -> None:
    name = args.layout or "straight_drilled"
    layout = lay.bundled_layout(name) if name in lay.BUNDLED_LAYOUTS else lay.load_layout(name)
    rules = lay.load_rules(args.rules) if args.rules else None
    report = lay.check_layout(layout, rules)
    lines = [f"Layout {report.layout} ({layout.kind.value}): {'PASS' if report.passed else 'FAIL'}",
             f"rules checked: {', '.join(report.checked) or 'none'}"]
    for v in report.violations:
        lines.append(f"  [{v.rule_id}] {v.message}: measured {v.measured * 1e3:.2f} mm, "
                     f"limit {v.limit * 1e3:.2f} mm")
    rows = [v._asdict() for v in report.violations]
    _emit(args, report.to_dict(), "\n".join(lines), rows, lay.Violation._fields)
    if not report.passed:
        raise _Failed(f"layout {report.layout} violates {len(report.violations)} rule(s)")


def cmd_compare(args) -> None:
    tables = load_comparison_tables(args.fixture) if args.fixture else bundled_comparison_tables()
    reports, texts, rows, mismatches = [], [], [], []
    for table in tables:
        rep = table.report()
        d = rep.to_dict()
        d["title"] = table.title
        for r in rep.rows:
            if r.variant_name in table.printed:
                red, imp = table.printed[r.variant_name]
                if abs(r.reduction - red) > PRINTED_TOLERANCE or abs(r.improvement_pct - imp) > PRINTED_TOLERANCE:
                    mismatches.append(f"{table.title} / {r.variant_name}")
        d["matches_printed"] = not any(m.startswith(table.title + " /") for m in mismatches) if table.printed else None
        reports.append(d)
        texts.append(f"{table.title}\n{rep.to_text()}")
        rows.extend({"table": table.title, "metric": rep.metric.value, "variant": r.variant_name,
                     "value": f"{r.value:.3f}", "reduction": f"{r.reduction:.3f}",
                     "improvement_pct": f"{r.improvement_pct:.3f}"} for r in rep.rows)
    _emit(args, {"tables": reports, "mismatches": mismatches}, "\n\n".join(texts), rows)
    if mismatches:
        raise _Failed("recomputed values differ from printed ones: " + "; ".join(mismatches))


def cmd_case_study(args) -> None:
    checks = run_case_study(fd_check=args.fd_check)
    failed = [c for c in checks if not c.passed]
    sc = load_scenario("chimsel_case_study")
    ref = sc.reference
    lines = [f"Case study {sc.name}: {len(checks) - len(failed)}/{len(checks)} checks within tolerance",
             f"Thickness ratio {thickness_ratio(sc.geometry):.2f}:1"]
    if ref.get("analytical_cooling_time_note"):
        lines.append(f"note: {ref['analytical_cooling_time_note']}")
    for c in checks:
        shown = c.computed if c.kind == "bool" else f"{c.computed:.6g}"
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.id}: {shown} (expected {c.expected}"
                     + (f" +/- {c.tolerance}{' rel' if c.kind == 'rel' else ''}" if c.tolerance is not None else "")
                     + ")")
    rows = [c.to_dict() for c in checks]
    _emit(args, {"scenario": sc.name, "passed": not failed, "checks": rows,
                 "reference": ref}, "\n".join(lines), rows)
    if failed:
        raise _Failed(f"{len(failed)} case-study value(s) outside tolerance")


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moldcool", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--format", choices=("json", "text", "csv"), default="text")
        p.add_argument("--materials", help="material library JSON file")
        p.add_argument("--with-bundled", action="store_true", help="merge --materials with the bundled library")
        if scenario:
            p.add_argument("--scenario", help="scenario JSON file or bundled scenario name")
        return p

    p = common(sub.add_parser("pvt", help="Tait specific volume and shrinkage over a (T, P) grid"))
    p.add_argument("--material", help="material name (default: the scenario's material)")
    p.add_argument("--temps-c", type=_floats, default=[20.0, 80.0, 94.0, 132.0, 200.0, 235.0])
    p.add_argument("--pressures-mpa", type=_floats, default=[0.0, 56.0, 112.0, 140.0])
    p.set_defaults(func=cmd_pvt)

    p = common(sub.add_parser("cooling-time", help="closed-form cooling time with series and FD checks"))
    p.add_argument("--thickness-mm", type=float, help="override the governing thickness")
    p.add_argument("--wall", choices=("mold", "coolant"), default="mold",
                   help="temperature that bounds the slab (default: mold)")
    p.add_argument("--terms", type=int, default=SeriesOptions.max_terms)
    p.add_argument("--tol", type=float, default=SeriesOptions.rel_tolerance)
    p.add_argument("--fd-check", action="store_true", help="run the finite-difference cross-check")
    p.add_argument("--nodes", type=int, default=201)
    p.add_argument("--safety", type=float, default=0.4)
    p.add_argument("--curve-csv", help="write the series midplane curve (t, T_midplane) to this CSV")
    p.add_argument("--curve-points", type=int, default=200)
    p.add_argument("--curve-span", type=float, default=3.0, help="curve length in multiples of the cooling time")
    p.set_defaults(func=cmd_cooling_time)

    p = common(sub.add_parser("warpage", help="deflection from differential shrinkage"))
    p.add_argument("--material")
    p.add_argument("--half-span-mm", type=float)
    p.add_argument("--s-edge", type=float)
    p.add_argument("--s-center", type=float)
    p.add_argument("--edge-t-c", type=float)
    p.add_argument("--edge-p-mpa", type=float, default=0.0)
    p.add_argument("--center-t-c", type=float)
    p.add_argument("--center-p-mpa", type=float, default=0.0)
    p.add_argument("--from-states", action="store_true",
                   help="with a scenario, ignore explicit shrinkages and use its PVT states")
    p.set_defaults(func=cmd_warpage)

    p = common(sub.add_parser("hydraulics", help="coolant Reynolds number or flow sizing"), scenario=False)
    p.add_argument("--diameters-mm", type=_floats, default=[9.0, 8.0, 6.0])
    p.add_argument("--flow-rates-cm3s", type=_floats, help="one per diameter; omit to size for --re-target")
    p.add_argument("--re-target", type=float, default=4.0e4)
    p.add_argument("--nu", type=float, default=lay.DERIVED_KINEMATIC_VISCOSITY, help="kinematic viscosity [m2/s]")
    p.add_argument("--coolant-t-c", type=float, default=75.0)
    p.set_defaults(func=cmd_hydraulics)

    p = common(sub.add_parser("check-layout", help="check a cooling layout against design rules"), scenario=False)
    p.add_argument("--layout", help=f"layout JSON file or bundled name {list(lay.BUNDLED_LAYOUTS)}")
    p.add_argument("--rules", help="rule JSON file (default: bundled rules)")
    p.set_defaults(func=cmd_check_layout)

    p = common(sub.add_parser("compare", help="reduction/improvement tables and compliance"), scenario=False)
    p.add_argument("--fixture", help="comparison JSON file (default: bundled result tables)")
    p.set_defaults(func=cmd_compare)

    p = common(sub.add_parser("case-study", help="run the bundled reference part end to end"), scenario=False)
    p.add_argument("--fd-check", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_case_study)
    return parser


def run_subcommand(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (FileFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except (ValidationError, DomainError, ConvergenceError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _Failed as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main() -> None:
    sys.exit(run_subcommand())


if __name__ == "__main__":
    main()
