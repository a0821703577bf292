"""
Martingale and ergodic square functions
"""
import numpy as np

from core.exceptions import InvalidInputError
from core.models import Observable
from dynamics.averages import (
    K_table,
    ergodic_averages,
    floor_pow,
    lacunary_counts,
)
from martingale.martingales import martingale_differences


def square_function(martingale):
    """(sum_k |E_{k+1} g - E_k g|^2)^(1/2) pointwise"""
    squares = np.zeros(martingale.levels[0].atom_count)
    for difference in martingale_differences(martingale):
        squares += difference.values ** 2
    return Observable(np.sqrt(squares))


def ergodic_square_function(f, transformation, counts):
    """(sum_i |A_{N_{i+1}} f - A_{N_i} f|^2)^(1/2) over consecutive N_i"""
    counts = [int(count) for count in counts]
    if len(counts) < 2:
        raise InvalidInputError('Need at least two averaging times')
    if any(later <= earlier for earlier, later in zip(counts, counts[1:])):
        raise InvalidInputError('Averaging times must strictly increase')
    averages = ergodic_averages(f, transformation, counts)
    squares = np.zeros(f.atom_count)
    for lower, upper in zip(averages, averages[1:]):
        squares += (upper.values - lower.values) ** 2
    return Observable(np.sqrt(squares))


def lacunary_ergodic_square_function(f, transformation, a, n):
    """Square function along N_i = floor(a**i), i <= n, repeats dropped"""
    counts = sorted(set(lacunary_counts(a, n)))
    if len(counts) < 2:
        return Observable.zero(f.atom_count)
    return ergodic_square_function(f, transformation, counts)


def sampled_ergodic_square_function(f, transformation, a, L):
    """Square function along N_l = floor(a**K(l)), l <= L, repeats dropped"""
    counts = sorted({floor_pow(a, k) for k in K_table(a, L)})
    if len(counts) < 2:
        return Observable.zero(f.atom_count)
    return ergodic_square_function(f, transformation, counts)
