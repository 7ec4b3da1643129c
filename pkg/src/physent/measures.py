"""Entanglement and complementarity diagnostics of a detector-level state."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import SIGMA_Y, SIGMA_Z, dagger, hermitian_eigenvalues, partial_trace, psd_sqrt
from .tomography import STATE_TOL, DetectorLevelState

_SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)
_DIMS = (2, 2)
LEFT, RIGHT = 0, 1


@dataclass(frozen=True)
class MeasureReport:
    t: float
    c_d: float
    p_d: float
    s_d: float

    @property
    def residual(self) -> float:
        """``1 - C^2 - P^2 - 2S``; zero on the paradigmatic family."""
        return 1.0 - self.c_d**2 - self.p_d**2 - 2.0 * self.s_d

    def as_dict(self) -> dict:
        return {"t": self.t, "c_d": self.c_d, "p_d": self.p_d, "s_d": self.s_d, "residual": self.residual}


def _rho(state) -> np.ndarray:
    return state.rho if isinstance(state, DetectorLevelState) else np.asarray(state, dtype=complex)


def spin_flip(rho: np.ndarray) -> np.ndarray:
    return _SPIN_FLIP @ np.conj(rho) @ _SPIN_FLIP


def wootters_lambdas(state) -> np.ndarray:
    """Descending square roots of the spectrum of ``sqrt(rho) rho~ sqrt(rho)``.

    These are the singular values of ``X = sqrt(rho) sqrt(rho~)``, where
    ``sqrt(rho~)`` is the spin flip of ``sqrt(rho)``. They are read
    off as the non-negative eigenvalues of the Hermitian block matrix
    ``[[0, X], [X^dagger, 0]]`` so that small values keep absolute accuracy
    instead of passing through a square root of roundoff.
    """
    rho = _rho(state)
    root = psd_sqrt(rho, STATE_TOL)
    # sqrt(rho~) taken from the same root keeps roundoff consistent between the two factors
    x = root @ spin_flip(root)
    n = x.shape[0]
    block = np.zeros((2 * n, 2 * n), dtype=complex)
    block[:n, n:] = x
    block[n:, :n] = dagger(x)
    return np.clip(hermitian_eigenvalues(block)[:n], 0.0, None)


def wootters_concurrence(state) -> float:
    lam = wootters_lambdas(state)
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def linear_entropy(state) -> float:
    rho = _rho(state)
    return float(1.0 - np.einsum("ij,ji->", rho, rho).real)


def reduced_state(state, traced=LEFT) -> np.ndarray:
    return partial_trace(_rho(state), _DIMS, traced)


def predictability(state, traced=LEFT) -> float:
    """``|<σ_z>|`` of the single particle left after tracing out ``traced`` (left by default)."""
    return float(abs(np.trace(SIGMA_Z @ reduced_state(state, traced)).real))


def measure_report(state, t: float) -> MeasureReport:
    return MeasureReport(
        t=float(t),
        c_d=wootters_concurrence(state),
        p_d=predictability(state),
        s_d=linear_entropy(state),
    )
