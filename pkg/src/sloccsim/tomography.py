"""Nine-setting two-qubit state tomography with linear inversion.

Per setting the two pseudospins are measured along a pair of Pauli axes and
events are sorted into the four joint eigenvalue sectors.  Correlators feed
the reconstruction directly; single-side terms come from marginals averaged
over the partner axis, which keeps the inversion exact on infinite-shot
data.  Eigenvalue clipping plus trace renormalisation restores physicality
before any parameter is read off.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ExtractionError
from .slocc import PreparationSettings, prepare_lr
from .states import TWO_PI, DensityMatrix4, fidelity_pure

_SQRT_HALF = 1.0 / math.sqrt(2.0)

PAULI = {
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
}

# eigenvectors for the +1 and -1 outcomes of each axis
_EIGVECS = {
    "X": (
        np.array([_SQRT_HALF, _SQRT_HALF], dtype=np.complex128),
        np.array([_SQRT_HALF, -_SQRT_HALF], dtype=np.complex128),
    ),
    "Y": (
        np.array([_SQRT_HALF, 1.0j * _SQRT_HALF], dtype=np.complex128),
        np.array([_SQRT_HALF, -1.0j * _SQRT_HALF], dtype=np.complex128),
    ),
    "Z": (
        np.array([1.0, 0.0], dtype=np.complex128),
        np.array([0.0, 1.0], dtype=np.complex128),
    ),
}

AXES = ("X", "Y", "Z")

# joint outcome sectors, ordered (++, +-, -+, --)
OUTCOME_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class PauliSetting:
    """One measurement setting: a Pauli axis per side."""

    left: str
    right: str

    def __post_init__(self) -> None:
        if self.left not in AXES or self.right not in AXES:
            raise ValueError(f"axes must be in {AXES}, got {self.left!r}, {self.right!r}")


def all_settings() -> tuple[PauliSetting, ...]:
    """The nine settings in fixed row-major order."""
    return tuple(PauliSetting(a, b) for a in AXES for b in AXES)


def setting_probabilities(rho: DensityMatrix4, setting: PauliSetting) -> np.ndarray:
    """Probabilities of the four joint outcomes, in (++, +-, -+, --) order."""
    left_vecs = _EIGVECS[setting.left]
    right_vecs = _EIGVECS[setting.right]
    probs = np.empty(4)
    for k, (sl, sr) in enumerate(OUTCOME_SIGNS):
        vec = np.kron(left_vecs[0 if sl > 0 else 1], right_vecs[0 if sr > 0 else 1])
        probs[k] = max(float(np.real(np.vdot(vec, rho.matrix @ vec))), 0.0)
    return probs / probs.sum()


@dataclass(frozen=True)
class TomographyData:
    """Per-setting outcome weights in sector order (++, +-, -+, --).

    Weights are integer counts for sampled data; exact probabilities fit the
    same container for infinite-shot reconstructions.
    """

    counts: dict[PauliSetting, np.ndarray]

    def __post_init__(self) -> None:
        cleaned = {}
        for setting, values in self.counts.items():
            arr = np.array(values, dtype=np.float64).reshape(4)
            if np.any(arr < 0.0):
                raise ValueError("outcome weights must be nonnegative")
            if float(arr.sum()) <= 0.0:
                raise ValueError(f"setting {setting} has zero total weight")
            arr.setflags(write=False)
            cleaned[setting] = arr
        object.__setattr__(self, "counts", cleaned)

    def total(self, setting: PauliSetting) -> float:
        return float(self.counts[setting].sum())


def simulate_tomography(
    rho: DensityMatrix4, shots_per_setting: int, seed: int
) -> TomographyData:
    """Multinomial outcome tallies for all nine settings, one RNG stream."""
    if shots_per_setting < 1:
        raise ValueError("shots_per_setting must be at least 1")
    rng = np.random.default_rng(seed)
    counts = {}
    for setting in all_settings():
        probs = setting_probabilities(rho, setting)
        counts[setting] = rng.multinomial(shots_per_setting, probs).astype(np.float64)
    return TomographyData(counts)


def exact_tomography_data(rho: DensityMatrix4) -> TomographyData:
    """Infinite-shot data: exact outcome probabilities as weights."""
    return TomographyData(
        {setting: setting_probabilities(rho, setting) for setting in all_settings()}
    )


def _simplex_projection(values: np.ndarray) -> np.ndarray:
    """Nearest point on the probability simplex in Euclidean norm.

    Shift all entries by a common threshold and clip at zero so the kept
    mass renormalises to exactly 1.
    """
    ordered = np.sort(values)[::-1]
    cumulative = np.cumsum(ordered) - 1.0
    ranks = np.arange(1, values.size + 1)
    keep = ordered - cumulative / ranks > 0.0
    if not np.any(keep):
        raise ValueError("reconstruction collapsed to the zero matrix")
    threshold = cumulative[keep][-1] / float(ranks[keep][-1])
    return np.clip(values - threshold, 0.0, None)


def _project_physical(matrix: np.ndarray) -> DensityMatrix4:
    """Nearest PSD unit-trace matrix in Frobenius norm.

    The nearest such matrix shares the eigenvectors of the Hermitian part;
    only the eigenvalues move, onto the probability simplex.
    """
    herm = (matrix + matrix.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(herm)
    vals = _simplex_projection(vals)
    return DensityMatrix4((vecs * vals) @ vecs.conj().T)


def reconstruct(data: TomographyData) -> DensityMatrix4:
    """Linear inversion over the Pauli basis, then the physicality projection.

    Exact on infinite-shot data; on sampled data the inversion may leave the
    PSD cone, which the final projection repairs.
    """
    missing = [s for s in all_settings() if s not in data.counts]
    if missing:
        raise ValueError(f"missing settings: {missing}")

    corr = {}
    left_marginals = {axis: [] for axis in AXES}
    right_marginals = {axis: [] for axis in AXES}
    for setting in all_settings():
        weights = data.counts[setting]
        p = weights / weights.sum()
        corr[(setting.left, setting.right)] = float(
            sum(sl * sr * p[k] for k, (sl, sr) in enumerate(OUTCOME_SIGNS))
        )
        left_marginals[setting.left].append(float(p[0] + p[1] - p[2] - p[3]))
        right_marginals[setting.right].append(float(p[0] + p[2] - p[1] - p[3]))

    eye2 = np.eye(2, dtype=np.complex128)
    acc = np.eye(4, dtype=np.complex128)
    for axis in AXES:
        acc += float(np.mean(left_marginals[axis])) * np.kron(PAULI[axis], eye2)
        acc += float(np.mean(right_marginals[axis])) * np.kron(eye2, PAULI[axis])
    for left in AXES:
        for right in AXES:
            acc += corr[(left, right)] * np.kron(PAULI[left], PAULI[right])
    return _project_physical(acc / 4.0)


@dataclass(frozen=True)
class ExtractedParams:
    """Preparation parameters read off a reconstructed matrix."""

    phi: float
    beta: float
    fidelity_to_ideal: float
    low_coherence: bool = False


def extract_params(rho_hat: DensityMatrix4) -> ExtractedParams:
    """Read (phi, beta) off the one-per-region block and score the match.

    beta comes from the two populations, phi from the argument of the
    coherence between them.  Below 1e-6 coherence phi defaults to 0 and the
    low_coherence flag marks the value unreliable.
    """
    m = rho_hat.matrix
    pop_ud = max(float(m[1, 1].real), 0.0)
    pop_du = max(float(m[2, 2].real), 0.0)
    if pop_ud + pop_du <= 1e-6:
        raise ExtractionError("one-per-region sector is empty")
    beta = math.atan2(math.sqrt(pop_du), math.sqrt(pop_ud))
    coherence = complex(m[2, 1])  # carries exp(+i phi)
    low_coherence = abs(coherence) < 1e-6
    phi = 0.0 if low_coherence else cmath.phase(coherence) % TWO_PI
    ideal = prepare_lr(PreparationSettings(beta, phi))
    return ExtractedParams(
        phi=phi,
        beta=beta,
        fidelity_to_ideal=fidelity_pure(rho_hat, ideal),
        low_coherence=low_coherence,
    )
