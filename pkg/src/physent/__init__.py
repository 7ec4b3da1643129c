"""Entanglement of two identical particles as registered by a pair of detectors."""

__version__ = "0.1.0"

from .closed_form import ScenarioParams, closed_form_T, closed_form_measures, closed_form_rho_d
from .detection import Detector, DetectorPair, coincidence_rate, coincidence_weights, joint_observable
from .errors import (
    AssumptionViolated,
    InvalidParams,
    InvalidShape,
    NoCoincidences,
    NotHermitian,
    NotPSD,
    PauliExclusion,
    PhysentError,
)
from .measures import MeasureReport, linear_entropy, measure_report, predictability, wootters_concurrence
from .scenarios import SplitterGeometry, build_geometry, dlr_sweep, epsilon_sweep, evaluate_point
from .states import Statistics, a_priori_concurrence, density_matrix, paradigmatic_state, symmetrized_product
from .tomography import DetectorLevelState, reconstruct
