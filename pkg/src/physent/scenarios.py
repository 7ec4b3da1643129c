"""Beam-splitter geometry and the two distinguishability sweeps.

External space has four modes ``(L1, L2, R1, R2)``: two time bins behind
each detector. The bias angle ``theta`` sets how the particles split between
the detectors, the overlap angle ``eta`` moves part of ``|B>`` into the second
time bin, making the particles partially distinguishable by arrival time.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .closed_form import ScenarioParams, closed_form_measures, closed_form_rho_d
from .detection import Detector, DetectorPair, coincidence_rate, coincidence_weights
from .errors import InvalidParams, NoCoincidences
from .measures import MeasureReport, measure_report
from .states import Statistics, density_matrix, paradigmatic_state
from .tomography import reconstruct

L1, L2, R1, R2 = range(4)
EXT_DIM = 4
ANGLE_TOL = 1e-12
DEFAULT_GRID = 201
INSET_EPSILONS = (3 * np.pi / 8, 0.0, 5 * np.pi / 8)

OK = "ok"
NO_COINCIDENCES = "no_coincidences"


@dataclass(frozen=True)
class SplitterGeometry:
    theta: float = np.pi / 4
    eta: float = 0.0

    def __post_init__(self):
        for name in ("theta", "eta"):
            v = getattr(self, name)
            if not np.isfinite(v) or not (-ANGLE_TOL <= v <= np.pi / 2 + ANGLE_TOL):
                raise InvalidParams(f"{name}={v} outside [0, pi/2]")

    @classmethod
    def balanced(cls, gamma_fraction: float = 1.0) -> "SplitterGeometry":
        """50:50 splitting with ``gamma = -gamma_fraction * gamma_max``."""
        if not 0.0 <= gamma_fraction <= 1.0:
            raise InvalidParams(f"gamma_fraction={gamma_fraction} outside [0, 1]")
        return cls(np.pi / 4, float(np.arccos(np.sqrt(gamma_fraction))))

    @classmethod
    def biased(cls, d_lr: float) -> "SplitterGeometry":
        """Perfect temporal overlap with ``D_LR = d_lr`` and ``D_RL = (1 - sqrt(d_lr))^2``."""
        if not 0.0 <= d_lr <= 1.0:
            raise InvalidParams(f"d_lr={d_lr} outside [0, 1]")
        return cls(float(np.arccos(d_lr**0.25)), 0.0)


def build_geometry(g: SplitterGeometry) -> tuple[np.ndarray, np.ndarray, DetectorPair]:
    ct, st = np.cos(g.theta), np.sin(g.theta)
    ce, se = np.cos(g.eta), np.sin(g.eta)
    a = np.zeros(EXT_DIM, dtype=complex)
    a[L1], a[R1] = ct, st
    b = np.zeros(EXT_DIM, dtype=complex)
    b[L1], b[R1] = ce * st, -ce * ct
    b[L2], b[R2] = se * st, -se * ct
    pair = DetectorPair(Detector.on_modes(EXT_DIM, (L1, L2)), Detector.on_modes(EXT_DIM, (R1, R2)))
    return a, b, pair


@dataclass
class SweepPoint:
    """One evaluated parameter point: tomography result next to the analytic one."""

    theta: float
    eta: float
    params: ScenarioParams
    pipeline: MeasureReport | None
    oracle: MeasureReport | None
    oracle_delta_max: float | None
    rate: float
    status: str = OK

    @property
    def ok(self) -> bool:
        return self.status == OK


def evaluate_point(geometry: SplitterGeometry, epsilon: float, stats) -> SweepPoint:
    stats = Statistics.parse(stats)
    ext_a, ext_b, pair = build_geometry(geometry)
    weights = coincidence_weights(pair, ext_a, ext_b)
    params = ScenarioParams(weights.d_lr, weights.d_rl, weights.gamma, float(epsilon), stats.delta)
    rho_a = density_matrix(paradigmatic_state(ext_a, ext_b, epsilon, stats))
    rate = coincidence_rate(rho_a, pair)
    try:
        rho_d = reconstruct(rho_a, pair)
        expected = closed_form_rho_d(params)
    except NoCoincidences:
        return SweepPoint(geometry.theta, geometry.eta, params, None, None, None, rate, NO_COINCIDENCES)
    return SweepPoint(
        theta=geometry.theta,
        eta=geometry.eta,
        params=params,
        pipeline=measure_report(rho_d, rate),
        oracle=closed_form_measures(params),
        oracle_delta_max=float(np.max(np.abs(rho_d.rho - expected.rho))),
        rate=rate,
    )


class SweepKind(enum.Enum):
    EPSILON = "sweep-epsilon"
    DLR = "sweep-dlr"


@dataclass(frozen=True)
class SweepSpec:
    kind: SweepKind
    statistics: Statistics = Statistics.BOSON
    gamma_fraction: float = 1.0
    epsilons: tuple[float, ...] = INSET_EPSILONS
    grid: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.grid:
            raise InvalidParams("sweep grid is empty")
        if self.kind is SweepKind.DLR:
            if min(self.grid) < 0.0 or max(self.grid) > 0.25:
                raise InvalidParams("D_LR grid must lie within [0, 1/4]")
            if not self.epsilons:
                raise InvalidParams("D_LR sweep needs at least one epsilon")
        elif not 0.0 <= self.gamma_fraction <= 1.0:
            raise InvalidParams(f"gamma_fraction={self.gamma_fraction} outside [0, 1]")


def epsilon_grid(n: int = DEFAULT_GRID) -> np.ndarray:
    return np.linspace(0.0, np.pi, n)


def dlr_grid(n: int = DEFAULT_GRID) -> np.ndarray:
    return np.linspace(0.0, 0.25, n)


def epsilon_sweep(gamma_fraction: float, stats, grid: Sequence[float] | None = None) -> list[SweepPoint]:
    grid = epsilon_grid() if grid is None else grid
    geometry = SplitterGeometry.balanced(gamma_fraction)
    return [evaluate_point(geometry, eps, stats) for eps in grid]


def dlr_sweep(epsilons: Sequence[float], stats, grid: Sequence[float] | None = None) -> list[SweepPoint]:
    """Points ordered epsilon-major, then by ``D_LR``."""
    grid = dlr_grid() if grid is None else grid
    geometries = [SplitterGeometry.biased(d) for d in grid]
    return [evaluate_point(g, eps, stats) for eps in epsilons for g in geometries]


def run_sweep(spec: SweepSpec) -> list[SweepPoint]:
    if spec.kind is SweepKind.EPSILON:
        return epsilon_sweep(spec.gamma_fraction, spec.statistics, spec.grid)
    return dlr_sweep(spec.epsilons, spec.statistics, spec.grid)
