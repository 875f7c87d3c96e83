"""Tait equation of state for polymer specific volume, and derived shrinkage.

One coefficient set (``b1``..``b5``) is applied over the whole (T, P) range.
Results outside ``[20 degC, T_melt]`` are still returned; use
:func:`in_validity_range` or the ``in_range`` flag on :class:`ShrinkageResult`
to see whether the model was extrapolated.

Temperatures here are in kelvin and pressures in pascal. The functions accept
scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .materials import CELSIUS_TO_KELVIN, ThermoplasticMaterial

TAIT_C = 0.0894
"""Universal Tait constant."""

REFERENCE_TEMPERATURE_K = 20.0 + CELSIUS_TO_KELVIN
REFERENCE_PRESSURE_PA = 0.0


@dataclass(frozen=True)
class PvtState:
    """Thermodynamic state: temperature in K, pressure in Pa."""

    temperature: float
    pressure: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.temperature) and self.temperature > 0):
            raise ValidationError("temperature", "temperature > 0 K", "PvtState")
        if not (math.isfinite(self.pressure) and self.pressure >= 0):
            raise ValidationError("pressure", "pressure >= 0 Pa", "PvtState")

    @classmethod
    def from_celsius_mpa(cls, temperature_c: float, pressure_mpa: float = 0.0) -> PvtState:
        return cls(temperature_c + CELSIUS_TO_KELVIN, pressure_mpa * 1e6)


REFERENCE_STATE = PvtState(REFERENCE_TEMPERATURE_K, REFERENCE_PRESSURE_PA)


@dataclass(frozen=True)
class ShrinkageResult:
    """Volumetric ratio and isotropic linear shrinkage between two states.

    Attributes:
        v_ref: Specific volume at 20 degC, 0 Pa [m3/kg].
        v_state: Specific volume at the pack/cooling state [m3/kg].
        r_v: ``v_ref / v_state``.
        s_linear: ``1 - r_v ** (1/3)``.
        in_range: False when the state temperature lies outside the fitted range.
    """

    v_ref: float
    v_state: float
    r_v: float
    s_linear: float
    in_range: bool = True


def in_validity_range(mat: ThermoplasticMaterial, t):
    """True where ``t`` [K] lies within ``[20 degC, T_melt]``."""
    t = np.asarray(t, dtype=float)
    ok = (t >= REFERENCE_TEMPERATURE_K) & (t <= mat.t_melt_k)
    return bool(ok) if ok.ndim == 0 else ok


def reference_volume(mat: ThermoplasticMaterial, t):
    """Zero-pressure specific volume ``b1 + b2 (T - b5)`` in m3/kg.

    Raises:
        DomainError: The linear law gives a non-positive volume at ``t``.
    """
    v0 = mat.b1 + mat.b2 * (np.asarray(t, dtype=float) - mat.b5)
    if np.any(v0 <= 0):
        raise DomainError(
            f"{mat.name}: non-positive reference volume; temperature far outside the Tait fit"
        )
    return float(v0) if v0.ndim == 0 else v0


def compressibility(mat: ThermoplasticMaterial, t):
    """Tait pressure scale ``b3 exp(-b4 (T - b5))`` in Pa."""
    beta = mat.b3 * np.exp(-mat.b4 * (np.asarray(t, dtype=float) - mat.b5))
    return float(beta) if beta.ndim == 0 else beta


def specific_volume(mat: ThermoplasticMaterial, state_or_t, p=None):
    """Specific volume in m3/kg.

    Call either as ``specific_volume(mat, PvtState(...))`` or with broadcastable
    temperature [K] and pressure [Pa] arrays: ``specific_volume(mat, T, P)``.
    """
    if isinstance(state_or_t, PvtState):
        t, p = state_or_t.temperature, state_or_t.pressure
    else:
        t = state_or_t
        p = 0.0 if p is None else p
        if np.any(np.asarray(p) < 0):
            raise ValidationError("pressure", "pressure >= 0 Pa")
    v0 = reference_volume(mat, t)
    # log1p keeps P = 0 exactly equal to the reference volume
    v = v0 * (1.0 - TAIT_C * np.log1p(np.asarray(p, dtype=float) / compressibility(mat, t)))
    if np.any(v <= 0):
        raise DomainError(f"{mat.name}: non-positive specific volume")
    return float(v) if np.ndim(v) == 0 else v


def shrinkage(mat: ThermoplasticMaterial, pack_state: PvtState) -> ShrinkageResult:
    """Shrinkage from the pack/cooling state down to 20 degC at ambient pressure."""
    v_ref = specific_volume(mat, REFERENCE_STATE)
    v_state = specific_volume(mat, pack_state)
    r_v = v_ref / v_state
    return ShrinkageResult(
        v_ref=v_ref,
        v_state=v_state,
        r_v=r_v,
        s_linear=float(1.0 - np.cbrt(r_v)),
        in_range=in_validity_range(mat, pack_state.temperature),
    )
