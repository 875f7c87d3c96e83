"""
Warpage from differential shrinkage
===================================

When the edge of a long part shrinks more (or less) than its centre, the
shortened chord bows out of plane. The deflection depends only on the half
span and the shrinkage difference.
"""

import numpy as np

from moldcool import PvtState, WarpageCase, bundled_library, deflection, deflection_from_states
from moldcool.warpage import differential_for_deflection

half_span = 0.315  # half of a 630 mm part

for ds in (0.0, 1e-5, 1e-4, 2.7267e-4, 1e-3, 1e-2):
    d = deflection(WarpageCase(half_span, ds, 0.0))
    print(f"dS = {ds:9.3e}  ->  {d * 1e3:8.3f} mm   (small-dS estimate {half_span * np.sqrt(2 * ds) * 1e3:8.3f} mm)")

# Read backwards: what shrinkage difference gives 1 mm, the usual limit?
print(f"1 mm of warpage over {half_span * 1e3:.0f} mm needs dS = {differential_for_deflection(half_span, 1e-3):.3e}")

# From PVT states: edge frozen under packing pressure, centre without it.
pmma = bundled_library().thermoplastic("plexiglas_8n")
res = deflection_from_states(pmma, half_span, PvtState(405.15, 112e6), PvtState(405.15, 0.0))
print(f"edge S = {res.edge.s_linear:.5f}, centre S = {res.center.s_linear:.5f}, "
      f"deflection {res.deflection * 1e3:.1f} mm ({res.dominant.value})")
