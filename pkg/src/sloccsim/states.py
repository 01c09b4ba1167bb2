"""Amplitude algebra for two particles over the left/right x pseudospin basis.

Conventions fixed once for the whole package:

* pseudospin ``UP`` is horizontal polarization (H) and ``DOWN`` is vertical
  (V); the correspondence is global and never remapped;
* four-component kets and 4x4 matrices use the basis order
  ``[L-up R-up, L-up R-down, L-down R-up, L-down R-down]``;
* the global phase of a ket carries no physics, so ket comparisons test
  ``|<a|b>| = 1`` rather than componentwise equality.

The central object is :func:`joint_amplitude`, the no-label detection
amplitude for two independently prepared particles.  The statistics
parameter weights the exchanged term, and that single weight is the only
place where bosonic, fermionic or anyonic behaviour enters the package.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import DegenerateStateError

ATOL = 1e-12
PSD_ATOL = 1e-10
NORM_ATOL = 1e-9  # input normalisation guard; internally produced kets hold 1e-12

TWO_PI = 2.0 * math.pi


class Pseudospin(IntEnum):
    """Internal two-level label; UP maps to H, DOWN to V, globally fixed."""

    UP = 0
    DOWN = 1


class Region(IntEnum):
    """Detection region: the left or right output arm."""

    LEFT = 0
    RIGHT = 1


BASIS_LABELS = ("L-up R-up", "L-up R-down", "L-down R-up", "L-down R-down")


def basis_index(left_spin: Pseudospin, right_spin: Pseudospin) -> int:
    """Index of |L left_spin, R right_spin> in the fixed basis order."""
    return 2 * int(left_spin) + int(right_spin)


@dataclass(frozen=True)
class DetectionMode:
    """One detector port: a region and the pseudospin it selects."""

    region: Region
    spin: Pseudospin


@dataclass(frozen=True)
class StatisticsParameter:
    """Exchange phase phi, stored canonically in [0, 2*pi)."""

    phi: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    @property
    def eta(self) -> complex:
        """exp(i*phi), the weight attached to the exchanged amplitude."""
        return cmath.exp(1j * self.phi)

    @classmethod
    def bosonic(cls) -> "StatisticsParameter":
        return cls(0.0)

    @classmethod
    def fermionic(cls) -> "StatisticsParameter":
        return cls(math.pi)

    def conjugated(self) -> "StatisticsParameter":
        """Statistics parameter with the opposite phase sign."""
        return StatisticsParameter(-self.phi)


@dataclass(frozen=True)
class SingleParticleState:
    """One particle spread over the two regions with a definite pseudospin."""

    amp_l: complex
    amp_r: complex
    spin: Pseudospin

    def __post_init__(self) -> None:
        object.__setattr__(self, "amp_l", complex(self.amp_l))
        object.__setattr__(self, "amp_r", complex(self.amp_r))
        norm_sq = abs(self.amp_l) ** 2 + abs(self.amp_r) ** 2
        if abs(norm_sq - 1.0) > ATOL:
            raise ValueError(
                f"amplitude pair is not normalised: |l|^2 + |r|^2 = {norm_sq!r}"
            )

    def overlap(self, mode: DetectionMode) -> complex:
        """<mode|state>: the region amplitude, gated by spin agreement."""
        if mode.spin is not self.spin:
            return 0j
        return self.amp_l if mode.region is Region.LEFT else self.amp_r


def joint_amplitude(
    chi_l: DetectionMode,
    chi_r: DetectionMode,
    first: SingleParticleState,
    second: SingleParticleState,
    eta: StatisticsParameter,
) -> complex:
    """Unnormalised amplitude for one detection per region.

    The direct term sends ``first`` to the left port and ``second`` to the
    right one; the exchanged term swaps those roles and is weighted by
    ``eta.eta``.  The left port must sit in region L and the right port in
    region R.
    """
    if chi_l.region is not Region.LEFT or chi_r.region is not Region.RIGHT:
        raise ValueError("ports must be one in the left region, one in the right")
    direct = first.overlap(chi_l) * second.overlap(chi_r)
    exchanged = second.overlap(chi_l) * first.overlap(chi_r)
    return direct + eta.eta * exchanged


@dataclass(frozen=True, eq=False)
class JointKet:
    """Two-particle state, one particle per region, in the fixed basis order."""

    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amps, dtype=np.complex128).reshape(4)
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def overlap(self, other: "JointKet") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amps, other.amps))

    def agrees_up_to_phase(self, other: "JointKet", atol: float = ATOL) -> bool:
        """Physical equality of unit kets: |<self|other>| = 1 within atol."""
        return abs(abs(self.overlap(other)) - 1.0) <= atol


def normalize(ket: JointKet) -> JointKet:
    """Rescale to unit norm, leaving direction and global phase alone."""
    n = ket.norm()
    if n <= 1e-15:
        raise DegenerateStateError("cannot normalise a zero-norm ket")
    return JointKet(ket.amps / n)


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """4x4 density matrix in the fixed basis, validated on construction.

    Accepts Hermiticity and trace defects up to 1e-12 and eigenvalues down
    to -1e-10; anything worse raises.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128).reshape(4, 4)
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=ATOL):
            raise ValueError("density matrix is not Hermitian")
        tr = complex(m.trace())
        if abs(tr - 1.0) > ATOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        eigmin = float(np.linalg.eigvalsh(m)[0])
        if eigmin < -PSD_ATOL:
            raise ValueError(f"density matrix has negative eigenvalue {eigmin!r}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()


def ket_to_density(ket: JointKet) -> DensityMatrix4:
    """Rank-one projector |ket><ket| for a unit-norm ket."""
    norm_sq = float(np.vdot(ket.amps, ket.amps).real)
    if abs(norm_sq - 1.0) > 2.0 * NORM_ATOL:
        raise ValueError("ket_to_density expects a unit ket; call normalize first")
    return DensityMatrix4(np.outer(ket.amps, ket.amps.conj()) / norm_sq)


def fidelity_pure(rho: DensityMatrix4, target: JointKet) -> float:
    """<target|rho|target>, clipped into [0, 1] at the PSD tolerance."""
    if abs(target.norm() - 1.0) > NORM_ATOL:
        raise ValueError("fidelity target must be a unit ket")
    value = float(np.real(np.vdot(target.amps, rho.matrix @ target.amps)))
    if value < -PSD_ATOL or value > 1.0 + PSD_ATOL:
        raise ValueError(f"fidelity {value!r} is outside [0, 1] beyond tolerance")
    return min(max(value, 0.0), 1.0)
