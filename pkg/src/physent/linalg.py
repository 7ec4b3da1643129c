"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Only the pieces
numpy does not already give us in the form we need are written out here: a
cyclic Jacobi eigensolver for Hermitian matrices, a PSD square root built on
it, and a partial trace over an arbitrary tensor slot.
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

from .errors import InvalidShape, NotHermitian, NotPSD

HERMITIAN_TOL = 1e-10
PSD_CLAMP_TOL = 1e-12
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise InvalidShape(f"expected a non-empty 2-d array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(m)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and np.max(np.abs(a - dagger(a)), initial=0.0) <= tol


def check_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise InvalidShape(f"matrix must be square, got {a.shape}")
    dev = np.max(np.abs(a - dagger(a)))
    if dev > tol:
        raise NotHermitian(f"max |M - M^dagger| = {dev:.3e} exceeds {tol:.0e}")
    return a


def tensor_product(*factors) -> np.ndarray:
    """Kronecker product, first factor most significant in the index ordering."""
    if not factors:
        raise InvalidShape("tensor_product needs at least one factor")
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def partial_trace(m, dims: Sequence[int], traced_slot: int | Sequence[int]) -> np.ndarray:
    """Trace out one (or several) tensor slots of a square matrix.

    ``dims`` lists the subsystem dimensions, most significant first, so that
    ``m`` has size ``prod(dims)``. The result acts on the remaining slots in
    their original order; tracing every slot yields a 1x1 matrix.
    """
    a = as_matrix(m)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise InvalidShape(f"subsystem dimensions must be positive, got {dims}")
    n = int(np.prod(dims))
    if a.shape != (n, n):
        raise InvalidShape(f"matrix shape {a.shape} does not match dims {dims}")
    slots = [traced_slot] if np.isscalar(traced_slot) else list(traced_slot)
    k = len(dims)
    for s in slots:
        if not 0 <= s < k:
            raise InvalidShape(f"slot {s} out of range for {k} subsystems")
    if len(set(slots)) != len(slots):
        raise InvalidShape(f"repeated slot in {slots}")

    t = a.reshape(dims + dims)
    # Contract highest slots first so lower axis numbers stay valid.
    for s in sorted(slots, reverse=True):
        kk = t.ndim // 2
        t = np.trace(t, axis1=s, axis2=s + kk)
    kept = [d for i, d in enumerate(dims) if i not in slots]
    r = int(np.prod(kept)) if kept else 1
    return t.reshape(r, r)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigh(m, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with real eigenvalues ``w`` in descending order and
    unitary ``v`` whose columns are the matching eigenvectors, so that
    ``m = v @ diag(w) @ v^dagger``.
    """
    a = check_hermitian(m, tol).copy()
    n = a.shape[0]
    a = 0.5 * (a + dagger(a))
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    target = JACOBI_TOL * scale

    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_norm(a) < target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]] on (p, q); A <- J^dagger A J
                ph = np.conj(phase)
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * ph * col_q
                a[:, q] = s * col_p + c * ph * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * ph * vq
                v[:, q] = s * vp + c * ph * vq
    else:
        if _off_norm(a) >= target:
            raise ArithmeticError("Jacobi iteration did not converge")

    w = np.real(np.diag(a))
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    return hermitian_eigh(m, tol)[0]


def psd_sqrt(m, clamp_tol: float = PSD_CLAMP_TOL) -> np.ndarray:
    """Hermitian positive square root; eigenvalues in ``[-clamp_tol, 0)`` are treated as zero."""
    w, v = hermitian_eigh(m)
    if w.size and w[-1] < -clamp_tol:
        raise NotPSD(f"smallest eigenvalue {w[-1]:.3e} below -{clamp_tol:.0e}")
    root = np.sqrt(np.clip(w, 0.0, None))
    s = (v * root) @ dagger(v)
    return 0.5 * (s + dagger(s))


def expectation(observable: np.ndarray, rho: np.ndarray, imag_tol: float = HERMITIAN_TOL) -> float:
    """``Tr(observable @ rho)`` for Hermitian arguments, returned as a real number."""
    from .errors import ConsistencyError

    val = np.einsum("ij,ji->", observable, rho)
    if abs(val.imag) > imag_tol:
        raise ConsistencyError(f"expectation value has imaginary part {val.imag:.3e}")
    return float(val.real)
