"""
Experiment models: configurations, transference models and reports
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from core.models import frozen_array
from paraproduct.operators import EM


THEOREM_PQ_RANGE = (Fraction(4, 3), Fraction(4))
THEOREM_R_RANGE = (Fraction(1), Fraction(4, 3))
HOLDER_TOLERANCE = 1e-12

# (p, q, r) with 1/r = 1/p + 1/q inside the proven range
HOLDER_TRIPLES = (
    (2.0, 2.0, 1.0),
    (4.0, 2.0, 4 / 3),
    (2.0, 4.0, 4 / 3),
    (4.0, 4 / 3, 1.0),
    (4 / 3, 4.0, 1.0),
    (8 / 3, 8 / 3, 4 / 3),
)

NORMAL = 'normal'
STUDENT_T = 'student_t'
DISTRIBUTIONS = (NORMAL, STUDENT_T)


def _within(value, bounds):
    low, high = bounds
    return float(low) - HOLDER_TOLERANCE <= value \
        <= float(high) + HOLDER_TOLERANCE


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of a constant-estimation run"""
    a: float
    p: float
    q: float
    r: float
    horizon_n: int
    seed: int
    trials: int
    system: str = 'cyclic:10'
    distribution: str = NORMAL
    kind: str = EM

    @property
    def in_theorem_range(self):
        return (_within(self.p, THEOREM_PQ_RANGE)
                and _within(self.q, THEOREM_PQ_RANGE)
                and _within(self.r, THEOREM_R_RANGE))


@dataclass(frozen=True, eq=False)
class IntegerModel:
    """F(m, w) = f(T^m w) for 0 <= m < track_length, zero elsewhere"""
    track_length: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'values', frozen_array(self.values))

    @property
    def atom_count(self):
        return self.values.shape[1]


@dataclass(frozen=True)
class OscillationStats:
    """Pointwise oscillation over a window of a sequence"""
    epsilon: float
    exceptional_weight: float
    oscillation: tuple
    max_oscillation: float
    mean_oscillation: float


@dataclass(frozen=True)
class ConvergenceReport:
    """Outputs of profiles, probes and constant estimation.

    Fields a run does not produce keep their empty defaults.
    """
    norms: tuple = ()
    increments: tuple = ()
    stabilization_index: int = None
    ratio_envelope: tuple = ()
    trial_ratios: tuple = ()
    level_maxima: tuple = ()
    resampled: int = 0
    oscillation: OscillationStats = None
    limit_distance: float = None


@dataclass(frozen=True)
class TransferenceCheck:
    """Both sides of the integer-model transference inequality"""
    n: int
    r: float
    direct: float
    transferred: float
    restriction_residual: float

    @property
    def holds(self):
        return self.direct <= self.transferred * (1 + 1e-12) + 1e-300


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one identity suite"""
    name: str
    passed: bool
    worst: float
    tolerance: float
    draws: int


@dataclass(frozen=True)
class SweepPoint:
    """Summary of one system in a growing-system sweep"""
    m: int
    atom_count: int
    max_ratio: float
    exceptional_weight: float
    max_oscillation: float


@dataclass(frozen=True)
class HolderRangePoint:
    """Largest observed ratio for one exponent triple"""
    p: float
    q: float
    r: float
    max_ratio: float


@dataclass(frozen=True)
class SquareFunctionMonitor:
    """Largest observed square-function ratios per exponent"""
    trials: int
    martingale: dict = field(default_factory=dict)
    ergodic: dict = field(default_factory=dict)
    sampled: dict = field(default_factory=dict)
