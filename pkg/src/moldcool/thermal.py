"""Midplane temperature and cooling time of a plastic slab between mold walls.

The slab of thickness ``L`` starts uniformly at the melt temperature and both
faces are held at the wall temperature. The midplane history is the classical
Fourier series

    T(t) = T_wall + (T_melt - T_wall) * 4/pi * sum_m (-1)^m/(2m+1) * exp(-(2m+1)^2 pi^2 Fo)

with ``Fo = alpha t / L^2``. Keeping only the first term and solving for the
ejection temperature gives the closed-form cooling time in :func:`cooling_time`.
:func:`fd_cooling_oracle` integrates the heat equation numerically and shares
no code with the series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import AlreadyEjectableError, ConvergenceError, DomainError, ValidationError
from .materials import ThermoplasticMaterial


@dataclass(frozen=True)
class CoolingProblem:
    """One-dimensional slab cooling problem.

    Attributes:
        thickness: Governing wall thickness [m] (the part's maximum thickness).
        t_melt: Initial uniform temperature [degC].
        t_wall: Cavity surface temperature [degC]. Pass the mold temperature or
            the coolant temperature, whichever the study calls for.
        t_eject: Target midplane temperature [degC].
        alpha_p: Thermal diffusivity of the polymer [m2/s].
    """

    thickness: float
    t_melt: float
    t_wall: float
    t_eject: float
    alpha_p: float

    def __post_init__(self) -> None:
        for name in ("thickness", "t_melt", "t_wall", "t_eject", "alpha_p"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(name, "must be finite", "CoolingProblem")
        if self.thickness <= 0:
            raise ValidationError("thickness", "thickness > 0", "CoolingProblem")
        if self.alpha_p <= 0:
            raise ValidationError("alpha_p", "alpha_p > 0", "CoolingProblem")
        if self.t_melt <= self.t_wall:
            raise ValidationError("t_melt", "t_wall < t_melt", "CoolingProblem")

    @classmethod
    def from_material(
        cls, mat: ThermoplasticMaterial, thickness: float, t_wall: float | None = None
    ) -> CoolingProblem:
        """Problem using the material's melt/mold/eject temperatures."""
        return cls(
            thickness=thickness,
            t_melt=mat.t_melt,
            t_wall=mat.t_mold if t_wall is None else t_wall,
            t_eject=mat.t_eject,
            alpha_p=mat.alpha_p,
        )

    def fourier_number(self, t: float) -> float:
        return self.alpha_p * t / self.thickness**2


@dataclass(frozen=True)
class SeriesOptions:
    max_terms: int = 200
    rel_tolerance: float = 1e-12

    def __post_init__(self) -> None:
        if self.max_terms < 1:
            raise ValidationError("max_terms", "max_terms >= 1", "SeriesOptions")
        if not self.rel_tolerance > 0:
            raise ValidationError("rel_tolerance", "rel_tolerance > 0", "SeriesOptions")


class MidplaneValue(NamedTuple):
    temperature: float
    terms: int


def slab_series(fourier: float, n_terms: int) -> float:
    """Normalized midplane excess temperature from the first ``n_terms`` modes.

    Returns ``4/pi * sum_{m < n_terms} (-1)^m/(2m+1) exp(-(2m+1)^2 pi^2 Fo)``,
    which is 1 at ``Fo = 0`` in the limit of infinitely many terms.
    """
    k = 2.0 * np.arange(n_terms) + 1.0
    signs = np.where(np.arange(n_terms) % 2 == 0, 1.0, -1.0)
    return float(4.0 / math.pi * np.sum(signs / k * np.exp(-(k**2) * math.pi**2 * fourier)))


def midplane_temperature(
    p: CoolingProblem, t: float, opts: SeriesOptions = SeriesOptions()
) -> MidplaneValue:
    """Midplane temperature [degC] at time ``t`` [s] after the start of cooling.

    The series is cut when the next term is smaller than
    ``rel_tolerance * |partial sum|`` or when ``max_terms`` is reached. Near
    ``t = 0`` the terms decay only like ``1/(2m+1)``, so the cap is usually hit;
    that is expected and reported through ``terms`` rather than raised. At
    exactly ``t = 0`` the initial melt temperature is returned with ``terms = 0``.
    """
    if t < 0:
        raise ValidationError("t", "t >= 0", "midplane_temperature")
    if t == 0:
        # initial condition; the truncated series would undershoot by ~1/max_terms
        return MidplaneValue(float(p.t_melt), 0)
    n = opts.max_terms
    m = np.arange(n + 1)
    k = 2.0 * m + 1.0
    terms = np.where(m % 2 == 0, 1.0, -1.0) / k * np.exp(-(k**2) * math.pi**2 * p.fourier_number(t))
    partial = np.cumsum(terms[:-1])
    # converged[i]: the term after a sum of i+1 terms is negligible
    converged = np.abs(terms[1:]) < opts.rel_tolerance * np.abs(partial)
    used = int(np.argmax(converged)) + 1 if converged.any() else n
    theta = 4.0 / math.pi * partial[used - 1]
    return MidplaneValue(p.t_wall + (p.t_melt - p.t_wall) * float(theta), used)


def midplane_curve(
    p: CoolingProblem, times, opts: SeriesOptions = SeriesOptions()
) -> np.ndarray:
    """Midplane temperatures [degC] at each of ``times`` [s]."""
    return np.array([midplane_temperature(p, float(t), opts).temperature for t in np.asarray(times)])


def cooling_time(p: CoolingProblem) -> float:
    """Time [s] for the midplane to reach ``t_eject``, one-term series inversion.

    ``t = L^2 / (pi^2 alpha) * ln(4/pi * (T_melt - T_wall) / (T_eject - T_wall))``

    Raises:
        DomainError: ``t_eject <= t_wall``; the midplane never gets there.
        AlreadyEjectableError: The log argument is below 1.
    """
    if p.t_eject <= p.t_wall:
        raise DomainError(
            f"t_eject ({p.t_eject} degC) must exceed t_wall ({p.t_wall} degC); log singularity"
        )
    arg = 4.0 / math.pi * (p.t_melt - p.t_wall) / (p.t_eject - p.t_wall)
    if arg < 1.0:
        raise AlreadyEjectableError(
            f"part is already ejectable in the one-term model (log argument {arg:.6g} < 1)"
        )
    return p.thickness**2 / (math.pi**2 * p.alpha_p) * math.log(arg)


def fd_cooling_oracle(p: CoolingProblem, nodes: int = 201, safety: float = 0.4) -> float:
    """Ejection time [s] from an explicit finite-difference solution.

    Forward Euler in time, central differences in space, on ``nodes`` equally
    spaced points across the full thickness (the midplane is the centre node).
    Walls are held at ``t_wall``; interior nodes start at ``t_melt``. The step
    is ``safety * dz^2 / alpha``; the scheme is stable for ``safety <= 0.5``.
    The crossing time is linearly interpolated between steps.

    Raises:
        ConvergenceError: The midplane does not reach ``t_eject`` within ten
            times the closed-form estimate.
    """
    if nodes < 11 or nodes % 2 == 0:
        raise ValidationError("nodes", "odd and >= 11", "fd_cooling_oracle")
    if not 0.0 < safety <= 0.5:
        raise ValidationError("safety", "0 < safety <= 0.5", "fd_cooling_oracle")
    if p.t_eject <= p.t_wall:
        raise DomainError("t_eject must exceed t_wall; the midplane never reaches it")
    if p.t_eject >= p.t_melt:
        return 0.0

    dz = p.thickness / (nodes - 1)
    dt = safety * dz**2 / p.alpha_p
    horizon = 10.0 * cooling_time(p)
    max_steps = int(math.ceil(horizon / dt))

    temp = np.full(nodes, float(p.t_melt))
    temp[0] = temp[-1] = p.t_wall
    mid = nodes // 2
    prev = temp[mid]
    for step in range(1, max_steps + 1):
        temp[1:-1] += safety * (temp[2:] - 2.0 * temp[1:-1] + temp[:-2])
        now = temp[mid]
        if now <= p.t_eject:
            return (step - 1) * dt + dt * (prev - p.t_eject) / (prev - now)
        prev = now
    raise ConvergenceError(
        f"midplane still at {prev:.4f} degC after {horizon:.1f} s (target {p.t_eject} degC)"
    )
