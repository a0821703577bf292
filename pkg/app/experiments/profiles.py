"""
Convergence diagnostics: Cauchy profiles, oscillation probes and
double-average profiles.
"""
import logging

import numpy as np

from core.exceptions import InvalidInputError
from core.models import INFINITY, AtomSpace, Observable
from core.space import lp_array_norm
from experiments.models import ConvergenceReport, OscillationStats
from paraproduct.operators import (
    EM,
    double_average,
    double_average_limit,
    paraproduct_sequence,
)


logger = logging.getLogger(__name__)

STABILIZATION_TOLERANCE = 1e-14


def stabilization_index(increments, tolerance=STABILIZATION_TOLERANCE):
    """First n after which every increment is below tolerance"""
    index = 0
    for n, increment in enumerate(increments, start=1):
        if increment >= tolerance:
            index = n
    return index


def oscillation_stats(stack, weights, epsilon):
    """Pointwise range of the rows of stack and the weight where it
    exceeds epsilon"""
    if np.isnan(epsilon) or epsilon < 0:
        raise InvalidInputError(f'Threshold must be >= 0, got {epsilon}')
    oscillation = np.ptp(stack, axis=0)
    exceptional = 0.0
    if epsilon != INFINITY:
        exceptional = float(np.sum(weights[oscillation > epsilon]))
    return OscillationStats(
        epsilon=float(epsilon),
        exceptional_weight=exceptional,
        oscillation=tuple(float(x) for x in oscillation),
        max_oscillation=float(oscillation.max()),
        mean_oscillation=float(np.dot(weights, oscillation)),
    )


def _sequence_with_zero(kind, f, g, system, a, horizon):
    sequence = paraproduct_sequence(kind, f, g, system, a, horizon)
    return [Observable.zero(f.atom_count)] + sequence


def cauchy_profile(f, g, system, a, r, horizon, kind=EM):
    """||Pi_n||_r and ||Pi_n - Pi_(n-1)||_r for n = 1..horizon"""
    if horizon < 1:
        raise InvalidInputError(f'Horizon must be >= 1, got {horizon}')
    sequence = _sequence_with_zero(kind, f, g, system, a, horizon)
    weights = system.space.weights
    norms = [float(lp_array_norm(pi.values, r, weights))
             for pi in sequence[1:]]
    increments = [
        float(lp_array_norm(upper.values - lower.values, r, weights))
        for lower, upper in zip(sequence, sequence[1:])
    ]
    index = stabilization_index(increments)
    logger.info('Cauchy profile of %s over %d steps stabilizes at %d',
                system.name or 'system', horizon, index)
    return ConvergenceReport(norms=tuple(norms),
                             increments=tuple(increments),
                             stabilization_index=index)


def oscillation_probe(f, g, system, a, n0, horizon, epsilon, kind=EM):
    """Pointwise oscillation of Pi_m over n0 <= m <= horizon.

    epsilon = INFINITY is accepted and gives exceptional weight 0.
    """
    if not 0 <= n0 < horizon:
        raise InvalidInputError(f'Need 0 <= n0 < horizon, got n0={n0}, '
                                f'horizon={horizon}')
    sequence = _sequence_with_zero(kind, f, g, system, a, horizon)
    stack = np.array([pi.values for pi in sequence[n0:]])
    stats = oscillation_stats(stack, system.space.weights, epsilon)
    return ConvergenceReport(oscillation=stats)


def double_average_profile(f, g, first, second, counts, epsilon=1e-2,
                           space=None):
    """L^2 norms and increments of B_N(f, g) along increasing counts.

    The space defaults to the uniform one. When both maps are bijections
    the distance from the last average to the limit is reported too.
    """
    counts = [int(count) for count in counts]
    if not counts:
        raise InvalidInputError('Need at least one averaging time')
    if any(later <= earlier for earlier, later in zip(counts, counts[1:])):
        raise InvalidInputError('Averaging times must strictly increase')
    space = AtomSpace.uniform(f.atom_count) if space is None else space
    weights = space.weights

    averages = [double_average(f, g, first, second, count)
                for count in counts]
    stack = np.array([average.values for average in averages])
    norms = lp_array_norm(stack, 2, weights)
    increments = lp_array_norm(np.diff(stack, axis=0), 2, weights)

    limit_distance = None
    if first.is_permutation and second.is_permutation:
        limit = double_average_limit(f, g, first, second)
        limit_distance = float(np.max(np.abs(stack[-1] - limit.values)))
    return ConvergenceReport(
        norms=tuple(float(x) for x in norms),
        increments=tuple(float(x) for x in increments),
        stabilization_index=stabilization_index(increments),
        oscillation=oscillation_stats(stack, weights, epsilon),
        limit_distance=limit_distance,
    )
