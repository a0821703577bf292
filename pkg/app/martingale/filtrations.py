"""
Filtration surgery: refining a forward filtration so that every step
splits each block into at most two.
"""
import logging
import math
from functools import lru_cache

import numpy as np

from core.models import ForwardFiltration, Partition


logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _balanced_groups(size, depth):
    """Group index of each of size siblings after depth balanced halvings"""
    if size <= 1 or depth == 0:
        return (0,) * size
    half = math.ceil(size / 2)
    left = _balanced_groups(half, depth - 1)
    right = _balanced_groups(size - half, depth - 1)
    offset = max(left) + 1
    return left + tuple(offset + group for group in right)


def _intermediate_levels(coarse, fine):
    """Levels strictly between coarse and fine, halving every block"""
    pairs = np.unique(fine.block_of * coarse.block_count + coarse.block_of)
    child, parent = np.divmod(pairs, coarse.block_count)
    by_parent = np.lexsort((child, parent))
    child, parent = child[by_parent], parent[by_parent]
    arity = np.bincount(parent, minlength=coarse.block_count)
    steps = math.ceil(math.log2(arity.max())) if arity.max() > 1 else 0
    if steps <= 1:
        return []

    rank = np.arange(child.size) - np.repeat(
        np.concatenate(([0], np.cumsum(arity)[:-1])), arity
    )
    levels = []
    for depth in range(1, steps):
        group_of_child = np.empty(fine.block_count, dtype=np.int64)
        for index in range(child.size):
            groups = _balanced_groups(int(arity[parent[index]]), depth)
            group_of_child[child[index]] = groups[rank[index]]
        labels = parent * fine.block_count + group_of_child[child]
        block_label = np.empty(fine.block_count, dtype=np.int64)
        block_label[child] = labels
        levels.append(Partition.from_labels(block_label[fine.block_of]))
    return levels


def binarize_filtration(filtration):
    """Insert levels so each step splits every block in at most two.

    A block split into s pieces is halved into ceil(s/2) and floor(s/2)
    pieces, repeatedly, so a step whose widest split has arity s gains
    ceil(log2 s) - 1 levels. The original levels stay in place.
    """
    if filtration.binary_splitting:
        return filtration
    if filtration.splits_in_two():
        return ForwardFiltration(filtration.levels, binary_splitting=True)

    levels = [filtration.levels[0]]
    for coarse, fine in zip(filtration.levels, filtration.levels[1:]):
        inserted = _intermediate_levels(coarse, fine)
        logger.debug('Inserted %d levels between %d and %d blocks',
                     len(inserted), coarse.block_count, fine.block_count)
        levels.extend(inserted)
        levels.append(fine)
    return ForwardFiltration(tuple(levels), binary_splitting=True)
