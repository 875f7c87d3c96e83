"""
Specific volume and shrinkage from the Tait model
=================================================

Walks through the PMMA record in the bundled library: how specific volume
moves with temperature and pressure, and what linear shrinkage that implies
when the part relaxes back to room conditions.
"""

import numpy as np

from moldcool import PvtState, bundled_library, shrinkage, specific_volume

pmma = bundled_library().thermoplastic("plexiglas_8n")
print(pmma.name, "Tait constants b1..b5:", pmma.b1, pmma.b2, pmma.b3, pmma.b4, pmma.b5)

# Room temperature at ambient pressure is the shrinkage reference.
v_ref = specific_volume(pmma, PvtState(293.15, 0.0))
print(f"v(20 degC, 0 MPa) = {v_ref:.6e} m3/kg")

# specific_volume broadcasts, so an isobar is a single call.
temps_c = np.array([20.0, 80.0, 132.0, 200.0, 235.0])
for p_mpa in (0.0, 112.0):
    v = specific_volume(pmma, temps_c + 273.15, p_mpa * 1e6)
    print(f"isobar {p_mpa:5.1f} MPa:", np.array2string(v, precision=4, formatter={"float": "{:.4e}".format}))

# Packing pressure squeezes the melt, so a part frozen under pressure
# shrinks less than one frozen at ambient pressure.
for p_mpa in (0.0, 56.0, 112.0):
    s = shrinkage(pmma, PvtState.from_celsius_mpa(pmma.t_freeze, p_mpa))
    print(f"frozen at {pmma.t_freeze:g} degC, {p_mpa:5.1f} MPa: r_v = {s.r_v:.5f}, linear S = {s.s_linear:.5f}")
