"""Out-of-plane deflection from differential linear shrinkage.

A half span ``W`` whose edge shrinks by ``dS`` more (or less) than its centre
bows out of plane by ``sqrt(W^2 - (W (1 - dS))^2)``. That form subtracts two
nearly equal squares when ``dS`` is small, so it is evaluated here as
``W sqrt(dS (2 - dS))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, ValidationError
from .materials import PartGeometry, ThermoplasticMaterial
from .pvt import PvtState, ShrinkageResult, shrinkage


class ShrinkageSide(str, Enum):
    EDGE = "edge_dominant"
    CENTER = "center_dominant"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class WarpageCase:
    """Half span [m] with linear shrinkage at the outer contour and at the centre."""

    half_span: float
    s_edge: float
    s_center: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.half_span) and self.half_span > 0):
            raise ValidationError("half_span", "half_span > 0", "WarpageCase")
        for name in ("s_edge", "s_center"):
            value = getattr(self, name)
            if not (math.isfinite(value) and 0.0 <= value < 1.0):
                raise ValidationError(name, f"0 <= {name} < 1", "WarpageCase")

    @property
    def differential(self) -> float:
        return abs(self.s_edge - self.s_center)

    @property
    def dominant(self) -> ShrinkageSide:
        if self.s_edge > self.s_center:
            return ShrinkageSide.EDGE
        if self.s_center > self.s_edge:
            return ShrinkageSide.CENTER
        return ShrinkageSide.UNIFORM


@dataclass(frozen=True)
class WarpageResult:
    deflection: float
    case: WarpageCase
    edge: ShrinkageResult
    center: ShrinkageResult

    @property
    def dominant(self) -> ShrinkageSide:
        return self.case.dominant


def deflection(c: WarpageCase) -> float:
    """Out-of-plane deflection [m], in ``[0, half_span]``.

    The absolute shrinkage differential is used, so a centre that shrinks more
    than the edge gives the same magnitude as the reverse; ``c.dominant`` tells
    the two apart.
    """
    ds = c.differential
    if ds > 1.0:
        raise DomainError(f"shrinkage differential {ds} exceeds 1")
    return c.half_span * math.sqrt(ds * (2.0 - ds))


def deflection_from_states(
    mat: ThermoplasticMaterial,
    half_span: float,
    edge_state: PvtState,
    center_state: PvtState,
) -> WarpageResult:
    """Deflection [m] with shrinkage at each location taken from the Tait model."""
    edge = shrinkage(mat, edge_state)
    center = shrinkage(mat, center_state)
    case = WarpageCase(half_span, edge.s_linear, center.s_linear)
    return WarpageResult(deflection(case), case, edge, center)


def half_span_from_geometry(g: PartGeometry) -> float:
    """Default half span for longitudinal warpage: half the part length."""
    return g.length / 2.0


def differential_for_deflection(half_span: float, target: float) -> float:
    """Shrinkage differential that produces ``target`` deflection over ``half_span``.

    Inverse of :func:`deflection`: ``dS = 1 - sqrt(1 - (target/W)^2)``, written
    to avoid cancellation for small ratios.
    """
    if not 0.0 <= target <= half_span:
        raise DomainError("target deflection must lie in [0, half_span]")
    x = (target / half_span) ** 2
    return x / (1.0 + math.sqrt(1.0 - x))
