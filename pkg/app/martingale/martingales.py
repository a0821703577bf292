"""
Backward martingales and their differences
"""
from core.exceptions import InvalidInputError
from core.space import conditional_expectation, require_compatible
from martingale.models import MartingaleSequence


def backward_martingale(g, filtration, space, depth=None):
    """E_n g for n = 0..depth, each level conditioned from the previous.

    depth defaults to the depth of the filtration.
    """
    require_compatible(space, g)
    if filtration.atom_count != space.atom_count:
        raise InvalidInputError('Filtration and space differ in atom count')
    depth = filtration.depth if depth is None else depth
    if not 0 <= depth <= filtration.depth:
        raise InvalidInputError(
            f'Depth {depth} outside 0..{filtration.depth}'
        )
    levels = [g]
    for part in filtration.levels[1:depth + 1]:
        levels.append(conditional_expectation(levels[-1], part, space))
    return MartingaleSequence(tuple(levels))


def martingale_differences(martingale):
    """d_k = E_{k+1} g - E_k g for k = 0..depth-1"""
    return [
        upper - lower
        for lower, upper in zip(martingale.levels, martingale.levels[1:])
    ]


def subsampled(martingale, indices):
    """The martingale read at the given increasing times"""
    indices = list(indices)
    if any(b < a for a, b in zip(indices, indices[1:])):
        raise InvalidInputError('Sampling times must be nondecreasing')
    if indices and indices[-1] > martingale.depth:
        raise InvalidInputError(
            f'Sampling time {indices[-1]} exceeds depth {martingale.depth}'
        )
    return MartingaleSequence(tuple(martingale.levels[i] for i in indices))
