"""
Domain models: finite probability spaces, partitions, filtrations and
observables.

Every model is immutable after construction. Array fields are numpy arrays
with the write flag cleared so they can be shared between threads.
"""
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from core.exceptions import InvalidInputError


INFINITY = math.inf
WEIGHT_TOLERANCE = 1e-12


def frozen_array(values, dtype=np.float64):
    """Return a read-only copy of values"""
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class AtomSpace:
    """Finite probability space given by strictly positive atom weights"""
    weights: np.ndarray

    def __post_init__(self):
        weights = frozen_array(self.weights)
        if weights.ndim != 1 or weights.size == 0:
            raise InvalidInputError('Weights must be a non-empty vector')
        if not np.all(weights > 0):
            raise InvalidInputError('Atom weights must be strictly positive')
        if abs(math.fsum(weights) - 1.0) > WEIGHT_TOLERANCE:
            raise InvalidInputError('Atom weights must sum to 1')
        object.__setattr__(self, 'weights', weights)

    @classmethod
    def uniform(cls, atom_count):
        """Uniform space on atom_count atoms"""
        if atom_count < 1:
            raise InvalidInputError('A space needs at least one atom')
        return cls(np.full(atom_count, 1.0 / atom_count))

    @property
    def atom_count(self):
        return self.weights.size

    @cached_property
    def is_uniform(self):
        return bool(np.all(self.weights == self.weights[0]))


@dataclass(frozen=True, eq=False)
class Partition:
    """A sigma-algebra on the atoms, stored as atom -> block index"""
    block_of: np.ndarray

    def __post_init__(self):
        block_of = frozen_array(self.block_of, dtype=np.int64)
        if block_of.ndim != 1 or block_of.size == 0:
            raise InvalidInputError('Partition needs at least one atom')
        if block_of.min() < 0:
            raise InvalidInputError('Block indices must be nonnegative')
        present = np.bincount(block_of)
        if np.any(present == 0):
            raise InvalidInputError(
                'Block indices must form a contiguous range from 0'
            )
        object.__setattr__(self, 'block_of', block_of)

    @classmethod
    def discrete(cls, atom_count):
        """Every atom is its own block"""
        return cls(np.arange(atom_count))

    @classmethod
    def trivial(cls, atom_count):
        """A single block holding every atom"""
        return cls(np.zeros(atom_count, dtype=np.int64))

    @classmethod
    def from_labels(cls, labels):
        """Relabel arbitrary block labels to the contiguous range"""
        _, block_of = np.unique(np.asarray(labels), return_inverse=True)
        return cls(block_of.reshape(-1))

    @property
    def atom_count(self):
        return self.block_of.size

    @cached_property
    def block_count(self):
        return int(self.block_of.max()) + 1

    @cached_property
    def sizes(self):
        return np.bincount(self.block_of, minlength=self.block_count)

    @cached_property
    def order(self):
        """Atoms sorted by block, stable within a block"""
        return np.argsort(self.block_of, kind='stable')

    @cached_property
    def starts(self):
        """Offsets of each block inside order"""
        return np.concatenate(([0], np.cumsum(self.sizes)[:-1]))

    def blocks(self):
        """Atom index arrays, one per block"""
        return np.split(self.order, np.cumsum(self.sizes)[:-1])

    @property
    def is_discrete(self):
        return self.block_count == self.atom_count

    def coarsens(self, fine):
        """True iff every block of fine lies inside one block of self"""
        pairs = np.unique(fine.block_of * self.block_count + self.block_of)
        return pairs.size == fine.block_count

    def split_counts(self, fine):
        """Number of fine blocks inside each block of self"""
        pairs = np.unique(fine.block_of * self.block_count + self.block_of)
        return np.bincount(pairs % self.block_count,
                           minlength=self.block_count)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.block_of, other.block_of)

    def __hash__(self):
        return hash(self.block_of.tobytes())


def _check_atom_counts(levels):
    if not levels:
        raise InvalidInputError('A filtration needs at least one level')
    counts = {level.atom_count for level in levels}
    if len(counts) != 1:
        raise InvalidInputError('Filtration levels disagree on atom count')


@dataclass(frozen=True, eq=False)
class BackwardFiltration:
    """Decreasing chain of sigma-algebras G_0 = F, G_1, G_2, ..."""
    levels: tuple

    def __post_init__(self):
        levels = tuple(self.levels)
        _check_atom_counts(levels)
        if not levels[0].is_discrete:
            raise InvalidInputError('Level 0 must be the discrete partition')
        for n, (fine, coarse) in enumerate(zip(levels, levels[1:])):
            if not coarse.coarsens(fine):
                raise InvalidInputError(
                    f'Level {n + 1} does not coarsen level {n}'
                )
        object.__setattr__(self, 'levels', levels)

    @property
    def depth(self):
        return len(self.levels) - 1

    @property
    def atom_count(self):
        return self.levels[0].atom_count

    @cached_property
    def stabilization_depth(self):
        """First level from which the filtration stays constant"""
        depth = self.depth
        while depth > 0 and self.levels[depth - 1] == self.levels[depth]:
            depth -= 1
        return depth


@dataclass(frozen=True, eq=False)
class ForwardFiltration:
    """Increasing chain of sigma-algebras, optionally splitting in two"""
    levels: tuple
    binary_splitting: bool = False

    def __post_init__(self):
        levels = tuple(self.levels)
        _check_atom_counts(levels)
        for i, (coarse, fine) in enumerate(zip(levels, levels[1:])):
            if not coarse.coarsens(fine):
                raise InvalidInputError(
                    f'Level {i + 1} does not refine level {i}'
                )
            if self.binary_splitting and coarse.split_counts(fine).max() > 2:
                raise InvalidInputError(
                    f'Level {i + 1} splits a block of level {i} '
                    'into more than two'
                )
        object.__setattr__(self, 'levels', levels)

    @classmethod
    def dyadic(cls, m):
        """Dyadic intervals of length 2**-j on 2**m uniform atoms"""
        atoms = np.arange(2 ** m)
        return cls(
            tuple(Partition(atoms >> (m - j)) for j in range(m + 1)),
            binary_splitting=True,
        )

    @property
    def depth(self):
        return len(self.levels) - 1

    @property
    def atom_count(self):
        return self.levels[0].atom_count

    def splits_in_two(self):
        """Whether every step splits each block into at most two"""
        return all(
            coarse.split_counts(fine).max() <= 2
            for coarse, fine in zip(self.levels, self.levels[1:])
        )


@dataclass(frozen=True, eq=False)
class Observable:
    """A real function on the atoms"""
    values: np.ndarray

    def __post_init__(self):
        values = frozen_array(self.values)
        if values.ndim != 1:
            raise InvalidInputError('Observable values must be a vector')
        object.__setattr__(self, 'values', values)

    @classmethod
    def constant(cls, c, atom_count):
        return cls(np.full(atom_count, float(c)))

    @classmethod
    def zero(cls, atom_count):
        return cls.constant(0.0, atom_count)

    @classmethod
    def indicator(cls, atom, atom_count):
        if not 0 <= atom < atom_count:
            raise InvalidInputError(f'Atom {atom} outside 0..{atom_count - 1}')
        values = np.zeros(atom_count)
        values[atom] = 1.0
        return cls(values)

    @property
    def atom_count(self):
        return self.values.size

    def _other_values(self, other):
        if isinstance(other, Observable):
            if other.atom_count != self.atom_count:
                raise InvalidInputError('Observables differ in atom count')
            return other.values
        return float(other)

    def __add__(self, other):
        return Observable(self.values + self._other_values(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Observable(self.values - self._other_values(other))

    def __rsub__(self, other):
        return Observable(self._other_values(other) - self.values)

    def __mul__(self, other):
        return Observable(self.values * self._other_values(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Observable(-self.values)

    def __truediv__(self, scalar):
        return Observable(self.values / float(scalar))

    def max_abs(self):
        return float(np.max(np.abs(self.values)))
