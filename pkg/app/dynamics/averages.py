"""
Ergodic averages and the lacunary index machinery
"""
import math
from fractions import Fraction

import numpy as np

from core.exceptions import InvalidInputError, RangeError
from core.models import Observable
from dynamics.models import Transformation
from dynamics.orbits import lifted_sums


EXACT_INTEGER_LIMIT = 2 ** 53
NEAR_INTEGER_TOLERANCE = 1e-9


def iterate(transformation, k):
    """k-fold composition T^k; T^0 is the identity"""
    if k < 0:
        raise InvalidInputError(f'Iterate index must be nonnegative, got {k}')
    result = np.arange(transformation.atom_count)
    power = transformation.image_of
    while k:
        if k & 1:
            result = power[result]
        k >>= 1
        if k:
            power = power[power]
    return Transformation(result)


def average_arrays(values, transformation, counts):
    """A_N along the last (atom) axis of values, for every N in counts"""
    counts = [int(count) for count in counts]
    if any(count < 1 for count in counts):
        raise InvalidInputError('Averages need N >= 1')

    orbits = transformation.orbits
    prefix = orbits.prefix_sums(values) if orbits is not None else None
    averages = {}
    for count in counts:
        if count in averages:
            continue
        if count == 1:
            averages[count] = values
        elif orbits is not None:
            averages[count] = orbits.orbit_sums(prefix, count) / count
        else:
            averages[count] = lifted_sums(
                values, transformation.image_of, count
            ) / count
    return [averages[count] for count in counts]


def ergodic_averages(f, transformation, counts):
    """A_N f for every N in counts, sharing one orbit prefix-sum pass"""
    if f.atom_count != transformation.atom_count:
        raise InvalidInputError('Observable and map differ in atom count')
    return [
        Observable(values)
        for values in average_arrays(f.values, transformation, counts)
    ]


def ergodic_average(f, transformation, N):
    """A_N f = (1/N) sum_{k<N} f o T^k"""
    if N < 1:
        raise InvalidInputError(f'Averages need N >= 1, got {N}')
    return ergodic_averages(f, transformation, [N])[0]


def orbit_mean(f, transformation):
    """Mean of f over each orbit: the limit of A_N f on a finite system"""
    orbits = transformation.orbits
    if orbits is None:
        raise InvalidInputError('Orbit means need a bijective map')
    return Observable(orbits.orbit_means(f.values))


def floor_pow(a, k):
    """floor(a**k), exact for double-precision a while a**k < 2**53.

    The floating-point power decides the result unless it lands within
    rounding distance of an integer; then the exact rational power of the
    double a settles it.
    """
    if not a > 1:
        raise InvalidInputError(f'Base must exceed 1, got {a}')
    if k < 0:
        raise InvalidInputError(f'Exponent must be nonnegative, got {k}')
    if k * math.log2(a) > 54:
        raise RangeError(f'{a}**{k} exceeds 2**53')
    estimate = a ** k
    if abs(estimate - round(estimate)) <= NEAR_INTEGER_TOLERANCE * estimate:
        value = math.floor(Fraction(a) ** k)
    else:
        value = math.floor(estimate)
    if value > EXACT_INTEGER_LIMIT:
        raise RangeError(f'{a}**{k} exceeds 2**53')
    return value


def lacunary_counts(a, n):
    """floor(a**k) for k = 0..n"""
    return [floor_pow(a, k) for k in range(n + 1)]


def _power_reaches(a, k, level):
    """a**k >= 2**level, exact near the boundary"""
    if k * math.log2(a) > level + 1:
        return True
    target = 2.0 ** level
    estimate = a ** k
    if abs(estimate - target) > NEAR_INTEGER_TOLERANCE * target:
        return estimate > target
    return Fraction(a) ** k >= 2 ** level


def K_table(a, L):
    """K(l) for l = 0..L: least k with floor(a**k) >= 2**l"""
    if 2 ** L > EXACT_INTEGER_LIMIT:
        raise RangeError(f'2**{L} exceeds 2**53')
    if not a > 1:
        raise InvalidInputError(f'Base must exceed 1, got {a}')
    table = []
    k = 0
    for level in range(L + 1):
        while not _power_reaches(a, k, level):
            k += 1
        table.append(k)
    return table


def K_index(a, l):
    """Least nonnegative k with floor(a**k) >= 2**l"""
    if l < 0:
        raise InvalidInputError(f'Level must be nonnegative, got {l}')
    return K_table(a, l)[-1]


def lacunary_block_counts(a, L):
    """How many floor(a**k) fall in [2**l, 2**(l+1)), for l = 0..L"""
    table = K_table(a, L + 1)
    return [upper - lower for lower, upper in zip(table, table[1:])]


def lacunary_averages(f, transformation, a, n):
    """A_{floor(a**k)} f for k = 0..n"""
    return ergodic_averages(f, transformation, lacunary_counts(a, n))
