"""Convex error model: the ideal state with probability F, spoiled otherwise.

The spoiled part splits between uniform white noise over the four coincidence
basis states and a dephased mixture of the two populated ones.  Both pieces
rotate into matrices with balanced diagonals, so they contribute nothing to
the z-basis correlation and a single visibility factor rescales every
expectation value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import AmbiguousFitError
from .measurement import expectation_zz, rotate_density
from .slocc import PreparationSettings, prepare_lr
from .states import DensityMatrix4, ket_to_density

WHITE_NOISE = np.eye(4, dtype=np.complex128) / 4.0
WHITE_NOISE.setflags(write=False)

DEPHASED = np.diag([0.0, 0.5, 0.5, 0.0]).astype(np.complex128)
DEPHASED.setflags(write=False)

# Fitted visibility within this distance of 1 leaves the noise split
# unconstrained; the default split is reported instead.
_VIS_SATURATED = 1e-9


@dataclass(frozen=True)
class NoiseModel:
    """visibility weights the ideal state; white/dephasing split the rest."""

    visibility: float = 0.977
    white_weight: float = 0.5
    dephasing_weight: float = 0.5

    def __post_init__(self) -> None:
        for name in ("visibility", "white_weight", "dephasing_weight"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
        if abs(self.white_weight + self.dephasing_weight - 1.0) > 1e-12:
            raise ValueError("white and dephasing weights must sum to 1")

    @classmethod
    def ideal(cls) -> "NoiseModel":
        return cls(visibility=1.0)


def noise_floor(model: NoiseModel) -> np.ndarray:
    """The spoiled component: white/dephased convex mix (a raw 4x4 array)."""
    return model.white_weight * WHITE_NOISE + model.dephasing_weight * DEPHASED


def noisy_state(ideal: DensityMatrix4, model: NoiseModel) -> DensityMatrix4:
    """visibility * ideal + (1 - visibility) * noise floor."""
    mixed = model.visibility * ideal.matrix + (1.0 - model.visibility) * noise_floor(model)
    return DensityMatrix4(mixed)


def noisy_expectation_scaling(ideal: DensityMatrix4, model: NoiseModel) -> float:
    """Correlation of the rotated noisy state, checked against the scaling law.

    The result must equal visibility times the ideal correlation because the
    noise floor is invisible to the rotated z-basis readout.  A violation
    would mean the fixed operators were edited inconsistently, so it raises
    instead of returning silently.
    """
    noisy = expectation_zz(rotate_density(noisy_state(ideal, model)))
    reference = model.visibility * expectation_zz(rotate_density(ideal))
    if abs(noisy - reference) > 1e-12:
        raise RuntimeError("visibility scaling law violated; operators inconsistent")
    return noisy


def fit_noise(
    reconstructions: list[tuple[DensityMatrix4, PreparationSettings]],
) -> NoiseModel:
    """Fit (visibility, white_weight) to reconstructed states by least squares.

    Each entry pairs a reconstructed density matrix with the preparation it
    came from; the ideal state is rebuilt from the settings and the model
    visibility * ideal + (1 - visibility) * floor is matched in Frobenius
    norm.  The model is linear in (F, (1 - F) * a), so the unconstrained
    optimum is solved directly; a bounded refinement runs only when that
    optimum leaves the physical box F, a in [0, 1].
    """
    if len(reconstructions) < 2:
        raise ValueError("need at least two reconstructed states to fit noise")
    ideals = [ket_to_density(prepare_lr(s)).matrix for _, s in reconstructions]
    targets = [rec.matrix for rec, _ in reconstructions]

    col_vis = np.concatenate([(m - DEPHASED).ravel() for m in ideals])
    col_white = np.tile((WHITE_NOISE - DEPHASED).ravel(), len(ideals))
    offset = np.concatenate([(m - DEPHASED).ravel() for m in targets])
    design = np.stack(
        [
            np.concatenate([col_vis.real, col_vis.imag]),
            np.concatenate([col_white.real, col_white.imag]),
        ],
        axis=1,
    )
    rhs = np.concatenate([offset.real, offset.imag])

    if float(np.linalg.norm(design[:, 0])) <= 1e-12:
        raise AmbiguousFitError("objective is flat in the visibility parameter")

    coeffs, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    c_vis, c_white = float(coeffs[0]), float(coeffs[1])

    slack = 1e-12
    inside = (
        -slack <= c_vis <= 1.0 + slack
        and -slack <= c_white <= (1.0 - c_vis) + slack
    )
    if inside:
        visibility = min(max(c_vis, 0.0), 1.0)
        remainder = 1.0 - visibility
        if remainder <= _VIS_SATURATED:
            white = 0.5
        else:
            white = min(max(c_white / remainder, 0.0), 1.0)
    else:
        ideals_arr = np.asarray(ideals)
        targets_arr = np.asarray(targets)

        def residuals(params):
            vis, white = params
            floor = white * WHITE_NOISE + (1.0 - white) * DEPHASED
            diff = vis * ideals_arr + (1.0 - vis) * floor - targets_arr
            return np.concatenate([diff.real.ravel(), diff.imag.ravel()])

        start = np.clip([c_vis, 0.5], 1e-6, 1.0 - 1e-6)
        result = least_squares(residuals, start, bounds=([0.0, 0.0], [1.0, 1.0]))
        visibility, white = float(result.x[0]), float(result.x[1])
        if 1.0 - visibility <= _VIS_SATURATED:
            white = 0.5
    return NoiseModel(
        visibility=visibility, white_weight=white, dephasing_weight=1.0 - white
    )
