"""
Orbit structure of finite maps and the summation kernels built on it
"""
import logging

import numpy as np


logger = logging.getLogger(__name__)


class OrbitDecomposition:
    """Cycle decomposition of a permutation of the atoms.

    Atoms are laid out cycle by cycle in ``order`` (each cycle listed along
    the orbit x, Tx, T^2x, ...), so any orbit sum of consecutive iterates
    is a difference of two entries of one prefix-sum array.
    """

    def __init__(self, image_of):
        image = image_of.tolist()
        seen = bytearray(len(image))
        order = []
        lengths = []
        for start in range(len(image)):
            if seen[start]:
                continue
            begin = len(order)
            atom = start
            while not seen[atom]:
                seen[atom] = 1
                order.append(atom)
                atom = image[atom]
            lengths.append(len(order) - begin)

        self.order = np.array(order, dtype=np.int64)
        self.lengths = np.array(lengths, dtype=np.int64)
        self.starts = np.concatenate(([0], np.cumsum(self.lengths)[:-1]))

        cycle_sorted = np.repeat(np.arange(self.lengths.size), self.lengths)
        self.cycle_of = np.empty_like(self.order)
        self.cycle_of[self.order] = cycle_sorted
        self.position = np.empty_like(self.order)
        self.position[self.order] = (
            np.arange(self.order.size) - self.starts[cycle_sorted]
        )
        logger.debug('Decomposed %d atoms into %d orbits',
                     self.order.size, self.lengths.size)

    @property
    def cycle_count(self):
        return self.lengths.size

    def period(self):
        """Least common multiple of the cycle lengths"""
        return int(np.lcm.reduce(self.lengths))

    def prefix_sums(self, values):
        """Prefix sums along the orbits, over the last (atom) axis"""
        laid_out = np.cumsum(values[..., self.order], axis=-1)
        zeros = np.zeros(laid_out.shape[:-1] + (1,))
        return np.concatenate((zeros, laid_out), axis=-1)

    def orbit_sums(self, prefix, count):
        """sum_{k<count} f(T^k x) for every atom x, from prefix_sums(f)"""
        base = self.starts[self.cycle_of]
        length = self.lengths[self.cycle_of]
        laps, rest = np.divmod(count, length)
        begin = base + self.position
        end = self.position + rest
        wraps = end > length
        lap_sum = prefix[..., base + length] - prefix[..., base]
        window = np.where(
            wraps,
            prefix[..., base + length] - prefix[..., begin]
            + prefix[..., base + np.where(wraps, end - length, 0)]
            - prefix[..., base],
            prefix[..., base + np.minimum(end, length)] - prefix[..., begin],
        )
        return laps * lap_sum + window

    def orbit_means(self, values):
        """Mean of values over the orbit of each atom"""
        sums = np.add.reduceat(values[..., self.order], self.starts, axis=-1)
        return (sums / self.lengths)[..., self.cycle_of]


def lifted_sums(values, image_of, count):
    """sum_{k<count} f(T^k x) by binary lifting, for any map"""
    total = np.zeros_like(values)
    reached = np.arange(image_of.size)
    block_sum = values.copy()
    jump = image_of
    remaining = count
    while remaining:
        if remaining & 1:
            total += block_sum[..., reached]
            reached = jump[reached]
        remaining >>= 1
        if remaining:
            block_sum = block_sum + block_sum[..., jump]
            jump = jump[jump]
    return total
