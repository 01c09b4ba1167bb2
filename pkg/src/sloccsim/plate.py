"""Tilted-plate geometry: drive displacement versus added optical phase.

A glass plate of given thickness rotates about an arm of given radius.
Pushing the drive by x tilts the plate so that sin(incidence) = x / radius;
the longer internal path adds phase relative to the untouched twin plate.
Zero displacement is calibrated to zero phase, and only the relative phase
modulo reflection matters downstream, so a wrapped value in [0, pi] is
reported next to the raw monotone one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PlateGeometry:
    """Plate and drive constants, all lengths in meters."""

    thickness: float = 199.94e-6
    index: float = 1.5
    ambient_index: float = 1.0
    radius: float = 102.36e-3
    wavelength: float = 800e-9

    def __post_init__(self) -> None:
        if self.thickness <= 0.0 or self.radius <= 0.0 or self.wavelength <= 0.0:
            raise ValueError("thickness, radius and wavelength must be positive")
        if not self.index > self.ambient_index >= 1.0:
            raise ValueError("plate index must exceed the ambient index (>= 1)")

    @property
    def max_displacement(self) -> float:
        """Displacement at which the refraction expression loses meaning."""
        return self.radius * self.index / self.ambient_index

    @property
    def phase_scale(self) -> float:
        """2*pi*index*thickness / wavelength, the phase unit of the plate."""
        return 2.0 * math.pi * self.index * self.thickness / self.wavelength


@dataclass(frozen=True)
class PlatePhase:
    wrapped: float  # in [0, pi]
    unwrapped: float  # monotone in |x|, unbounded
    small_angle: bool  # False once |x| exceeds half the rotation radius


def wrap_phase(phi: float) -> float:
    """Fold a phase into [0, pi] by reflection mod 2*pi; cosine is preserved."""
    reduced = float(phi) % (2.0 * math.pi)
    return 2.0 * math.pi - reduced if reduced > math.pi else reduced


def phase_from_displacement(x: float, geom: PlateGeometry) -> PlatePhase:
    """Closed-form phase for drive displacement x (meters)."""
    limit = geom.max_displacement
    if abs(x) >= limit:
        raise ValueError(
            f"|x| must stay below radius*index/ambient = {limit!r} m, got {x!r}"
        )
    ratio = x * geom.ambient_index / (geom.radius * geom.index)
    raw = geom.phase_scale * (1.0 / math.sqrt(1.0 - ratio * ratio) - 1.0)
    return PlatePhase(
        wrapped=wrap_phase(raw),
        unwrapped=raw,
        small_angle=abs(x) <= 0.5 * geom.radius,
    )


def phase_via_refraction(x: float, geom: PlateGeometry) -> float:
    """The same unwrapped phase computed through the explicit refraction angle.

    Kept as an independent code path: the tilt gives sin(incidence) = x/r,
    refraction scales it by the index ratio, and the phase follows from the
    secant of the internal angle.
    """
    if abs(x) >= geom.max_displacement:
        raise ValueError("displacement outside the refraction domain")
    sin_incident = x / geom.radius
    sin_refracted = geom.ambient_index * sin_incident / geom.index
    cos_refracted = math.sqrt(1.0 - sin_refracted * sin_refracted)
    return geom.phase_scale * (1.0 / cos_refracted - 1.0)


def displacement_from_phase(phi_raw: float, geom: PlateGeometry) -> float:
    """Drive displacement (meters) producing the given unwrapped phase."""
    if phi_raw < 0.0:
        raise ValueError("phi_raw must be nonnegative")
    inner = 1.0 / (1.0 + phi_raw / geom.phase_scale)
    return geom.max_displacement * math.sqrt(1.0 - inner * inner)
