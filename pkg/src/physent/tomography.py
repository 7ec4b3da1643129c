"""Detector-level state reconstruction from simulated joint measurements.

For each pair of internal observables ``(chi_i, chi_j)`` from the Pauli set,
the expectation of the joint detection observable on the two-particle state
gives one tomographic coefficient. Recombining the coefficients on the
two-qubit Pauli basis yields the (unnormalized) state of the particles as the
left and right detectors see them; its trace is the coincidence rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .detection import DetectorPair, joint_observable
from .errors import ConsistencyError, InvalidShape, NoCoincidences
from .linalg import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z, expectation, hermitian_eigenvalues, tensor_product

PAULI_BASIS = (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z)
# Tr(chi_i chi_j) = 2 delta_ij, so each qubit slot carries 1/2 in the expansion.
BASIS_WEIGHT = 1.0 / 4.0
COINCIDENCE_THRESHOLD = 1e-12
STATE_TOL = 1e-10

DETECTOR_BASIS_LABELS = ("L↑,R↑", "L↑,R↓", "L↓,R↑", "L↓,R↓")


@dataclass(frozen=True)
class DetectorLevelState:
    """Two-qubit state in the basis ``|L↑,R↑>, |L↑,R↓>, |L↓,R↑>, |L↓,R↓>``."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise InvalidShape(f"detector-level state must be 4x4, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > STATE_TOL:
            raise ConsistencyError("detector-level state is not Hermitian")
        if abs(np.trace(rho) - 1.0) > STATE_TOL:
            raise ConsistencyError(f"detector-level state has trace {np.trace(rho).real:.15g}")
        lowest = hermitian_eigenvalues(rho)[-1]
        if lowest < -STATE_TOL:
            raise ConsistencyError(f"detector-level state has eigenvalue {lowest:.3e}")
        object.__setattr__(self, "rho", rho)


def tomographic_coefficients(rho_a: np.ndarray, pair: DetectorPair) -> np.ndarray:
    """4x4 real table of ``Tr(O_d(chi_i, chi_j) rho_a)``; entry (0, 0) is the coincidence rate."""
    n = (2 * pair.ext_dim) ** 2
    if rho_a.shape != (n, n):
        raise InvalidShape(f"two-particle density matrix must be {n}x{n}, got {rho_a.shape}")
    coeffs = np.empty((4, 4))
    for i, chi_i in enumerate(PAULI_BASIS):
        for j, chi_j in enumerate(PAULI_BASIS):
            coeffs[i, j] = expectation(joint_observable(pair, chi_i, chi_j), rho_a)
    return coeffs


def unnormalized_reconstruction(rho_a: np.ndarray, pair: DetectorPair) -> np.ndarray:
    """Detector-level operator before post-selection; its trace equals the coincidence rate."""
    coeffs = tomographic_coefficients(rho_a, pair)
    out = np.zeros((4, 4), dtype=complex)
    for i, chi_i in enumerate(PAULI_BASIS):
        for j, chi_j in enumerate(PAULI_BASIS):
            out += coeffs[i, j] * tensor_product(chi_i, chi_j)
    return BASIS_WEIGHT * out


def reconstruct(rho_a: np.ndarray, pair: DetectorPair) -> DetectorLevelState:
    raw = unnormalized_reconstruction(rho_a, pair)
    rate = float(np.trace(raw).real)
    if rate < COINCIDENCE_THRESHOLD:
        raise NoCoincidences(rate)
    rho = raw / rate
    return DetectorLevelState(0.5 * (rho + rho.conj().T))
