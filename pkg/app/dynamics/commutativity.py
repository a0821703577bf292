"""
The commutativity condition E(f o T | G_n) = E(f | G_n) o T.

The check is exact on the basis of atom indicators. It never forms the
operators: for each level it compares, for every source block b, the
weight that b sends to each atom j with w_j W(b) / W(beta(b)), where
beta(b) is the block T maps b into. The condition holds on the indicator
of j exactly when every such comparison involving j succeeds.
"""
import logging
from dataclasses import dataclass

import numpy as np

from core.space import block_average
from dynamics.averages import average_arrays


logger = logging.getLogger(__name__)

COMMUTATIVITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CommutativityResult:
    """Outcome of a commutativity check with the first failure, if any"""
    passed: bool
    level: int = None
    atom: int = None

    def __bool__(self):
        return self.passed


def _failing_atoms(part, image_of, weights, injective):
    """Atoms whose indicator violates the condition at one level"""
    atom_count = image_of.size
    block_of = part.block_of
    target = block_of[image_of]
    image_block = np.empty(part.block_count, dtype=np.int64)
    image_block[block_of] = target
    scattered = np.bincount(block_of, weights=target != image_block[block_of],
                            minlength=part.block_count) > 0

    failing = np.zeros(atom_count, dtype=bool)
    if scattered.any():
        hit = np.unique(target[scattered[block_of]])
        failing |= np.isin(block_of, hit)

    block_weight = np.bincount(block_of, weights=weights,
                               minlength=part.block_count)
    if injective:
        # every atom is the only preimage of its image
        source, atom, sent = block_of, image_of, weights
    else:
        pairs, inverse = np.unique(block_of * atom_count + image_of,
                                   return_inverse=True)
        sent = np.bincount(inverse.reshape(-1), weights=weights)
        source, atom = np.divmod(pairs, atom_count)
    kept = ~scattered[source]
    expected = weights[atom] / block_weight[image_block[source]]
    mismatch = kept & (
        np.abs(sent / block_weight[source] - expected)
        > COMMUTATIVITY_TOLERANCE
    )
    failing[atom[mismatch]] = True

    reached = np.bincount(source[kept], minlength=part.block_count)
    short = ~scattered & (reached < part.sizes[image_block])
    if short.any():
        blocks = part.blocks()
        for b in np.flatnonzero(short):
            missing = np.setdiff1d(blocks[image_block[b]], atom[source == b])
            failing[missing] = True
    return failing


def commutativity_check(system):
    """Check the condition at every level on every atom indicator"""
    weights = system.space.weights
    image_of = system.map.image_of
    injective = system.map.is_permutation
    for level, part in enumerate(system.filtration.levels):
        if part.is_discrete:
            continue
        failing = np.flatnonzero(
            _failing_atoms(part, image_of, weights, injective)
        )
        if failing.size:
            logger.debug('Commutativity fails at level %d, atom %d',
                         level, failing[0])
            return CommutativityResult(False, level, int(failing[0]))
    return CommutativityResult(True)


def averages_commute_with_expectations(system, counts):
    """Largest entry of E_n A_N - A_N E_n over indicators, levels and N"""
    basis = np.eye(system.atom_count)
    weights = system.space.weights
    worst = 0.0
    averaged = average_arrays(basis, system.map, counts)
    for part in system.filtration.levels:
        conditioned = block_average(basis, part, weights)
        for count, average in zip(counts, averaged):
            left = block_average(average, part, weights)
            right = average_arrays(conditioned, system.map, [count])[0]
            worst = max(worst, float(np.max(np.abs(left - right))))
    return worst
