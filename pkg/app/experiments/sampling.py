"""
Seeded random draws of observables, filtrations and systems.

Trial i of a run with seed s draws from SeedSequence([s, i]), so a trial's
inputs do not depend on how many workers run or in which order.
"""
import numpy as np

from core.exceptions import InvalidInputError
from core.models import BackwardFiltration, Observable, Partition
from dynamics.catalog import cyclic_rotation, group_translation, product_torus
from experiments.models import NORMAL, STUDENT_T


STUDENT_T_DEGREES = 3


def trial_rng(seed, index):
    """Generator for trial index of a run seeded with seed"""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def random_values(rng, atom_count, distribution=NORMAL):
    if distribution == NORMAL:
        return rng.standard_normal(atom_count)
    if distribution == STUDENT_T:
        return rng.standard_t(STUDENT_T_DEGREES, atom_count)
    raise InvalidInputError(f'Unknown distribution {distribution!r}')


def random_observable(rng, atom_count, distribution=NORMAL):
    return Observable(random_values(rng, atom_count, distribution))


def random_coarsening(rng, part):
    """Merge the blocks of part in random pairs"""
    parent = rng.permutation(part.block_count) // 2
    return Partition.from_labels(parent[part.block_of])


def random_backward_filtration(rng, atom_count, depth):
    levels = [Partition.discrete(atom_count)]
    for _ in range(depth):
        levels.append(random_coarsening(rng, levels[-1]))
    return BackwardFiltration(tuple(levels))


def random_system(rng, max_exponent=12):
    """A catalog system with at most 2^max_exponent atoms"""
    choice = rng.integers(3)
    if choice == 0:
        m = int(rng.integers(1, max_exponent + 1))
        return cyclic_rotation(m, int(rng.integers(0, m + 1)))
    if choice == 1:
        orders = []
        budget = 2 ** max_exponent
        while len(orders) < 3:
            order = int(rng.integers(2, 6))
            if np.prod(orders + [order]) > budget:
                break
            orders.append(order)
        return group_translation(orders or [2])
    m1 = int(rng.integers(1, max_exponent // 2 + 1))
    m2 = int(rng.integers(1, max_exponent - m1 + 1))
    return product_torus(m1, m2)
