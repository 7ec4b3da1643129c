"""Single- and two-particle states of identical particles.

Each particle lives in ``external (dim M) ⊗ qubit``. The two-particle space is
ordered particle-1-major, and within a particle external-major, so a basis
index is ``((e1 * 2 + s1) * 2M) + (e2 * 2 + s2)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolated, InvalidShape, PauliExclusion
from .linalg import tensor_product

NORM_TOL = 1e-12

UP = np.array([1.0, 0.0], dtype=complex)
DOWN = np.array([0.0, 1.0], dtype=complex)


class Statistics(enum.IntEnum):
    BOSON = 1
    FERMION = -1

    @property
    def delta(self) -> int:
        return int(self)

    @classmethod
    def parse(cls, value) -> "Statistics":
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            try:
                return cls[value.strip().upper()]
            except KeyError:
                pass
        elif value in (1, -1):
            return cls(int(value))
        raise ValueError(f"unknown statistics {value!r}; expected boson/fermion or +1/-1")


def normalized_vector(vec, name: str = "state") -> np.ndarray:
    v = np.asarray(vec, dtype=complex).ravel()
    if v.size == 0 or not np.all(np.isfinite(v)):
        raise InvalidShape(f"{name} must be a non-empty finite vector")
    if abs(np.linalg.norm(v) - 1.0) > NORM_TOL:
        raise ValueError(f"{name} is not normalized (norm {np.linalg.norm(v):.15g})")
    return v


def internal_state(vec) -> np.ndarray:
    v = normalized_vector(vec, "internal state")
    if v.size != 2:
        raise InvalidShape(f"internal state must be a qubit, got dimension {v.size}")
    return v


def swap_operator(ext_dim: int) -> np.ndarray:
    """Permutation matrix exchanging the two particles."""
    d = 2 * ext_dim
    idx = np.arange(d * d).reshape(d, d).T.ravel()
    return np.eye(d * d, dtype=complex)[idx]


def swap_particles(vec: np.ndarray, ext_dim: int) -> np.ndarray:
    d = 2 * ext_dim
    return np.asarray(vec).reshape(d, d).T.ravel()


@dataclass(frozen=True)
class TwoParticleState:
    vec: np.ndarray
    ext_dim: int
    statistics: Statistics

    def __post_init__(self):
        d = 2 * self.ext_dim
        if self.vec.shape != (d * d,):
            raise InvalidShape(f"state vector has shape {self.vec.shape}, expected ({d * d},)")
        if abs(np.linalg.norm(self.vec) - 1.0) > NORM_TOL:
            raise ValueError("two-particle state is not normalized")
        swapped = swap_particles(self.vec, self.ext_dim)
        if np.max(np.abs(swapped - self.statistics.delta * self.vec)) > NORM_TOL:
            raise ValueError("state does not have the exchange symmetry of its statistics")

    @property
    def dim(self) -> int:
        return self.vec.size


def symmetrized_product(ext_a, int_a, ext_b, int_b, stats) -> TwoParticleState:
    """(Anti)symmetrized product of the single-particle states ``|A,a>`` and ``|B,b>``."""
    stats = Statistics.parse(stats)
    ext_a = normalized_vector(ext_a, "external state A")
    ext_b = normalized_vector(ext_b, "external state B")
    if ext_a.size != ext_b.size:
        raise InvalidShape("external states live in different spaces")
    one_a = tensor_product(ext_a, internal_state(int_a))
    one_b = tensor_product(ext_b, internal_state(int_b))
    vec = tensor_product(one_a, one_b) + stats.delta * tensor_product(one_b, one_a)
    norm = np.linalg.norm(vec)
    if norm < NORM_TOL:
        raise PauliExclusion("fermions cannot occupy the same single-particle state")
    return TwoParticleState(vec / norm, ext_a.size, stats)


def paradigmatic_state(ext_a, ext_b, epsilon: float, stats) -> TwoParticleState:
    """The family ``cos(eps)|A↑,B↓> + sin(eps)|A↓,B↑>`` plus its exchange partner, over sqrt(2).

    Requires ``<A|B> = 0``; the state is then normalized without rescaling.
    """
    stats = Statistics.parse(stats)
    ext_a = normalized_vector(ext_a, "external state A")
    ext_b = normalized_vector(ext_b, "external state B")
    if ext_a.size != ext_b.size:
        raise InvalidShape("external states live in different spaces")
    overlap = np.vdot(ext_a, ext_b)
    if abs(overlap) > NORM_TOL:
        raise AssumptionViolated(f"external states must be orthogonal, <A|B> = {overlap:.3e}")
    if not np.isfinite(epsilon):
        raise ValueError("epsilon must be finite")

    c, s = np.cos(epsilon), np.sin(epsilon)
    a_up, a_dn = tensor_product(ext_a, UP), tensor_product(ext_a, DOWN)
    b_up, b_dn = tensor_product(ext_b, UP), tensor_product(ext_b, DOWN)
    direct = c * tensor_product(a_up, b_dn) + s * tensor_product(a_dn, b_up)
    exchanged = c * tensor_product(b_dn, a_up) + s * tensor_product(b_up, a_dn)
    vec = (direct + stats.delta * exchanged) / np.sqrt(2.0)
    return TwoParticleState(vec, ext_a.size, stats)


def a_priori_concurrence(epsilon: float) -> float:
    return float(2.0 * abs(np.cos(epsilon) * np.sin(epsilon)))


def density_matrix(state: TwoParticleState) -> np.ndarray:
    v = state.vec
    return np.outer(v, np.conj(v))
