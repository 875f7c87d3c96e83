"""
Cooling channel rules and coolant sizing
========================================

Checks the bundled layouts against the design rules, shows what happens when
a drilled channel creeps too close to the cavity, and sizes the coolant flow
for a turbulent Reynolds number.
"""

from moldcool import layout as lay

for name in lay.BUNDLED_LAYOUTS:
    rep = lay.check_layout(lay.bundled_layout(name))
    print(f"{name:20s} {'pass' if rep.passed else 'FAIL'}  ({len(rep.checked)} rules)")

too_close = lay.CoolingLayout("straight_drilled", [0.008], 0.009, 0.016, name="9 mm clearance")
for v in lay.check_layout(too_close).violations:
    print(f"  {v.rule_id}: {v.message} (measured {v.measured * 1e3:.1f} mm, limit {v.limit * 1e3:.1f} mm)")

# Flow needed for Re = 4e4 in each bore, and the Re of the bundled flows.
for d_mm, q_cm3s in ((9, 128.0), (8, 113.8), (6, 85.3)):
    d = d_mm * 1e-3
    q = lay.flow_rate_for_reynolds(4.0e4, d)
    re = lay.reynolds(q_cm3s * 1e-6, d)
    print(f"D = {d_mm} mm: Q(Re=4e4) = {q * 1e6:6.1f} cm3/s;  {q_cm3s} cm3/s gives Re = {re:7.0f} "
          f"({lay.turbulence_class(re).value})")

# The regime boundary is strict.
print("Re = 1.5e4 ->", lay.turbulence_class(1.5e4).value)
