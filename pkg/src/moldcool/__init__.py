"""Analytical cooling-phase models for injection molding.

Submodules:

- :mod:`moldcool.materials` -- polymer and mold-steel property records, JSON library
- :mod:`moldcool.pvt` -- Tait specific volume and volumetric/linear shrinkage
- :mod:`moldcool.thermal` -- slab midplane temperature, cooling time, finite-difference check
- :mod:`moldcool.warpage` -- deflection from differential shrinkage
- :mod:`moldcool.layout` -- cooling-layout rule checks and coolant Reynolds sizing
- :mod:`moldcool.report` -- baseline-vs-variant comparison and compliance limits
- :mod:`moldcool.scenario` -- scenario files tying the models to one part
- :mod:`moldcool.cli` -- ``moldcool`` command-line front end
"""

from .errors import (
    AlreadyEjectableError,
    ConvergenceError,
    DomainError,
    FileFormatError,
    MoldcoolError,
    ValidationError,
)
from .materials import (
    MaterialLibrary,
    MoldMaterial,
    PartGeometry,
    ThermoplasticMaterial,
    bundled_library,
    load_material_library,
    thickness_ratio,
)
from .pvt import PvtState, ShrinkageResult, compressibility, reference_volume, shrinkage, specific_volume
from .thermal import (
    CoolingProblem,
    SeriesOptions,
    cooling_time,
    fd_cooling_oracle,
    midplane_temperature,
)
from .warpage import WarpageCase, deflection, deflection_from_states
from .layout import (
    CoolantSpec,
    CoolingLayout,
    check_layout,
    flow_rate_for_reynolds,
    reynolds,
    turbulence_class,
)

__version__ = "0.1.0"
