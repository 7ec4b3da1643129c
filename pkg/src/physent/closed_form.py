"""Analytic detector-level state and measures for the paradigmatic family.

Serves as a fast path and as the independent check on the tomography
pipeline. Only real effective indistinguishability is supported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, NoCoincidences
from .measures import MeasureReport
from .states import Statistics
from .tomography import COINCIDENCE_THRESHOLD, DetectorLevelState

PARAM_TOL = 1e-12
# relative slack on a^2 + b^2 <= T^2 (equality holds for pure detector-level states)
PSD_REL_TOL = 1e-8


@dataclass(frozen=True)
class ScenarioParams:
    d_lr: float
    d_rl: float
    gamma: float
    epsilon: float
    delta: int = 1

    def __post_init__(self):
        if isinstance(self.gamma, complex):
            if abs(self.gamma.imag) > PARAM_TOL:
                raise InvalidParams("closed form only covers real gamma")
            object.__setattr__(self, "gamma", self.gamma.real)
        for name in ("d_lr", "d_rl"):
            v = getattr(self, name)
            if not (-PARAM_TOL <= v <= 1.0 + PARAM_TOL):
                raise InvalidParams(f"{name}={v} outside [0, 1]")
        if not all(np.isfinite([self.gamma, self.epsilon])):
            raise InvalidParams("gamma and epsilon must be finite")
        if abs(self.gamma) > self.gamma_max + PARAM_TOL:
            raise InvalidParams(f"|gamma|={abs(self.gamma)} exceeds gamma_max={self.gamma_max}")
        object.__setattr__(self, "delta", Statistics.parse(self.delta).delta)

    @property
    def gamma_max(self) -> float:
        return float(np.sqrt(max(self.d_lr, 0.0) * max(self.d_rl, 0.0)))

    def flipped(self) -> "ScenarioParams":
        """Same tuple with the exchange sign and gamma both reversed."""
        return ScenarioParams(self.d_lr, self.d_rl, -self.gamma, self.epsilon, -self.delta)


def closed_form_T(p: ScenarioParams) -> float:
    sc = np.sin(p.epsilon) * np.cos(p.epsilon)
    return float(max(0.0, p.d_lr + p.d_rl + 4.0 * p.delta * p.gamma * sc))


def _a_b(p: ScenarioParams) -> tuple[float, float]:
    a = (p.d_lr - p.d_rl) * np.cos(2.0 * p.epsilon)
    b = 2.0 * p.delta * p.gamma + 2.0 * (p.d_lr + p.d_rl) * np.sin(p.epsilon) * np.cos(p.epsilon)
    return float(a), float(b)


def _checked(p: ScenarioParams) -> tuple[float, float, float]:
    t = closed_form_T(p)
    if t <= COINCIDENCE_THRESHOLD:
        raise NoCoincidences(t)
    a, b = _a_b(p)
    if a * a + b * b > t * t * (1.0 + PSD_REL_TOL):
        raise InvalidParams(f"parameters give no density matrix: a^2 + b^2 = {a * a + b * b:.6g} > T^2 = {t * t:.6g}")
    return t, a, b


def closed_form_rho_d(p: ScenarioParams) -> DetectorLevelState:
    t, a, b = _checked(p)
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = t + a
    rho[2, 2] = t - a
    rho[1, 2] = rho[2, 1] = b
    return DetectorLevelState(rho / (2.0 * t))


def closed_form_measures(p: ScenarioParams) -> MeasureReport:
    t, a, b = _checked(p)
    rho = closed_form_rho_d(p).rho
    purity = float(np.einsum("ij,ji->", rho, rho).real)
    return MeasureReport(t=t, c_d=abs(b) / t, p_d=abs(a) / t, s_d=1.0 - purity)
