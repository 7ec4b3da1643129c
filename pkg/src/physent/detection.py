"""Detector pairs, coincidence weights and the joint detection observable."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDetector, InvalidShape
from .linalg import HERMITIAN_TOL, IDENTITY_2, check_hermitian, expectation, tensor_product
from .states import normalized_vector

DETECTOR_TOL = 1e-10


@dataclass(frozen=True)
class Detector:
    projector: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.projector, dtype=complex)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise InvalidShape(f"projector must be square, got {p.shape}")
        if np.max(np.abs(p - p.conj().T)) > DETECTOR_TOL:
            raise InvalidDetector("detector projector is not Hermitian")
        if np.max(np.abs(p @ p - p)) > DETECTOR_TOL:
            raise InvalidDetector("detector projector is not idempotent")
        object.__setattr__(self, "projector", p)

    @classmethod
    def on_modes(cls, ext_dim: int, modes) -> "Detector":
        """Projector onto a subset of the external basis modes."""
        diag = np.zeros(ext_dim)
        diag[list(modes)] = 1.0
        return cls(np.diag(diag).astype(complex))

    @property
    def dim(self) -> int:
        return self.projector.shape[0]


@dataclass(frozen=True)
class DetectorPair:
    left: Detector
    right: Detector

    def __post_init__(self):
        if self.left.dim != self.right.dim:
            raise InvalidShape("left and right detectors act on different spaces")
        if np.max(np.abs(self.left.projector @ self.right.projector)) > DETECTOR_TOL:
            raise InvalidDetector("left and right detector supports overlap")

    @property
    def ext_dim(self) -> int:
        return self.left.dim


@dataclass(frozen=True)
class CoincidenceWeights:
    d_lr: float
    d_rl: float
    gamma: complex

    @property
    def gamma_max(self) -> float:
        return float(np.sqrt(self.d_lr * self.d_rl))


def coincidence_weights(pair: DetectorPair, ext_a, ext_b) -> CoincidenceWeights:
    a = normalized_vector(ext_a, "external state A")
    b = normalized_vector(ext_b, "external state B")
    if a.size != pair.ext_dim or b.size != pair.ext_dim:
        raise InvalidShape("external states do not match the detector space")
    ol, orr = pair.left.projector, pair.right.projector

    def braket(x, op, y):
        return np.vdot(x, op @ y)

    d_lr = braket(a, ol, a).real * braket(b, orr, b).real
    d_rl = braket(a, orr, a).real * braket(b, ol, b).real
    gamma = complex(braket(a, ol, b) * braket(b, orr, a))
    return CoincidenceWeights(float(d_lr), float(d_rl), gamma)


def joint_observable(pair: DetectorPair, alpha, beta) -> np.ndarray:
    """``O_L⊗α ⊗ O_R⊗β + O_R⊗β ⊗ O_L⊗α`` on the two-particle space.

    ``alpha`` is measured on whichever particle lands in the left detector,
    ``beta`` on the one in the right detector.
    """
    alpha = check_hermitian(alpha, HERMITIAN_TOL)
    beta = check_hermitian(beta, HERMITIAN_TOL)
    if alpha.shape != (2, 2) or beta.shape != (2, 2):
        raise InvalidShape("internal observables must be 2x2")
    left = tensor_product(pair.left.projector, alpha)
    right = tensor_product(pair.right.projector, beta)
    return tensor_product(left, right) + tensor_product(right, left)


def coincidence_rate(rho_a: np.ndarray, pair: DetectorPair) -> float:
    return expectation(joint_observable(pair, IDENTITY_2, IDENTITY_2), rho_a)
