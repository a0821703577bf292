"""
Operators on atomized probability spaces: integrals, L^p norms and
conditional expectations.
"""
import math

import numpy as np

from core.exceptions import InvalidInputError
from core.models import INFINITY, Observable


def require_compatible(space, *observables):
    """Raise unless every observable lives on space"""
    for obs in observables:
        if obs.atom_count != space.atom_count:
            raise InvalidInputError(
                f'Observable has {obs.atom_count} atoms, '
                f'space has {space.atom_count}'
            )


def expectation(obs, space):
    """Integral of obs against the atom weights"""
    require_compatible(space, obs)
    return float(np.dot(space.weights, obs.values))


def lp_array_norm(values, p, weights):
    """Weighted L^p norm along the last axis of values"""
    magnitudes = np.abs(values)
    if p == INFINITY:
        return np.max(magnitudes, axis=-1)
    return np.sum(weights * magnitudes ** p, axis=-1) ** (1.0 / p)


def lp_norm(obs, p, space):
    """(sum_i w_i |f_i|^p)^(1/p), or the max-norm for p = INFINITY.

    Exponents below 1 give the usual quasi-norm.
    """
    require_compatible(space, obs)
    if math.isnan(p) or p <= 0:
        raise InvalidInputError(f'Exponent must be positive, got {p}')
    return float(lp_array_norm(obs.values, p, space.weights))


def part_weights(part, weights):
    """Total weight of each block"""
    return np.bincount(part.block_of, weights=weights,
                       minlength=part.block_count)


def block_average(values, part, weights):
    """Weighted block means of values along its last (atom) axis"""
    if values.ndim == 1:
        sums = np.bincount(part.block_of, weights=weights * values,
                           minlength=part.block_count)
        return (sums / part_weights(part, weights))[part.block_of]
    order = part.order
    starts = part.starts
    sorted_weights = weights[order]
    sums = np.add.reduceat(values[..., order] * sorted_weights, starts,
                           axis=-1)
    means = sums / np.add.reduceat(sorted_weights, starts)
    return means[..., part.block_of]


def is_measurable(obs, part):
    """True iff obs is constant on every block of part"""
    if part.atom_count != obs.atom_count:
        raise InvalidInputError('Partition and observable differ in atom '
                                'count')
    representative = np.empty(part.block_count)
    representative[part.block_of] = obs.values
    return np.array_equal(representative[part.block_of], obs.values)


def conditional_expectation(obs, part, space):
    """E(obs | part): weighted average of obs over each block.

    An observable that is already constant on the blocks comes back
    unchanged, so repeated conditioning is exact.
    """
    require_compatible(space, obs)
    if part.atom_count != space.atom_count:
        raise InvalidInputError('Partition and space differ in atom count')
    if part.is_discrete or is_measurable(obs, part):
        return obs
    return Observable(block_average(obs.values, part, space.weights))


def is_coarsening(coarse, fine):
    """True iff every block of fine is contained in a block of coarse"""
    if coarse.atom_count != fine.atom_count:
        raise InvalidInputError('Partitions differ in atom count')
    return coarse.coarsens(fine)
