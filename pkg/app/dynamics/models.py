"""
Dynamics models: measure-preserving atom maps and dynamical systems
"""
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from core.exceptions import InvalidInputError, NonCommutingMapsError
from core.models import (
    WEIGHT_TOLERANCE,
    AtomSpace,
    BackwardFiltration,
    Observable,
    frozen_array,
)
from dynamics.orbits import OrbitDecomposition


@dataclass(frozen=True, eq=False)
class Transformation:
    """A map of the atoms, stored as atom -> image atom"""
    image_of: np.ndarray

    def __post_init__(self):
        image_of = frozen_array(self.image_of, dtype=np.int64)
        if image_of.ndim != 1 or image_of.size == 0:
            raise InvalidInputError('Transformation needs at least one atom')
        if image_of.min() < 0 or image_of.max() >= image_of.size:
            raise InvalidInputError('Images must be atoms of the same space')
        object.__setattr__(self, 'image_of', image_of)

    @classmethod
    def identity(cls, atom_count):
        return cls(np.arange(atom_count))

    @property
    def atom_count(self):
        return self.image_of.size

    @cached_property
    def is_permutation(self):
        return bool(np.all(np.bincount(self.image_of,
                                       minlength=self.atom_count) == 1))

    @cached_property
    def orbits(self):
        """Orbit decomposition, or None when the map is not a bijection"""
        if not self.is_permutation:
            return None
        return OrbitDecomposition(self.image_of)

    def compose(self, other):
        """self o other: first apply other, then self"""
        if other.atom_count != self.atom_count:
            raise InvalidInputError('Transformations differ in atom count')
        return Transformation(self.image_of[other.image_of])

    def pullback(self, obs):
        """f o T"""
        if obs.atom_count != self.atom_count:
            raise InvalidInputError('Observable and map differ in atom count')
        return Observable(obs.values[self.image_of])

    def preserves(self, space):
        """Whether every atom's preimage carries the atom's own weight"""
        if space.atom_count != self.atom_count:
            return False
        pushed = np.bincount(self.image_of, weights=space.weights,
                             minlength=self.atom_count)
        return bool(np.all(np.abs(pushed - space.weights)
                           <= WEIGHT_TOLERANCE))

    def first_noncommuting_atom(self, other):
        """Smallest atom where self o other and other o self differ"""
        mismatch = np.flatnonzero(
            self.image_of[other.image_of] != other.image_of[self.image_of]
        )
        return int(mismatch[0]) if mismatch.size else None

    def __eq__(self, other):
        if not isinstance(other, Transformation):
            return NotImplemented
        return np.array_equal(self.image_of, other.image_of)

    def __hash__(self):
        return hash(self.image_of.tobytes())


@dataclass(frozen=True, eq=False)
class DynamicalSystem:
    """A space, a measure-preserving map and a backward filtration.

    ``commuting_map`` is a second measure-preserving map commuting with
    ``map`` exactly; it is set by systems built for double averages.
    """
    space: AtomSpace
    map: Transformation
    filtration: BackwardFiltration
    commutativity_checked: bool = False
    commuting_map: Transformation = None
    name: str = ''

    def __post_init__(self):
        if self.map.atom_count != self.space.atom_count:
            raise InvalidInputError('Map and space differ in atom count')
        if self.filtration.atom_count != self.space.atom_count:
            raise InvalidInputError(
                'Filtration and space differ in atom count')
        if not self.map.preserves(self.space):
            raise InvalidInputError('Map does not preserve the measure')
        if self.commuting_map is not None:
            if not self.commuting_map.preserves(self.space):
                raise InvalidInputError(
                    'Second map does not preserve the measure'
                )
            atom = self.map.first_noncommuting_atom(self.commuting_map)
            if atom is not None:
                raise NonCommutingMapsError(atom)
        if self.commutativity_checked:
            from dynamics.commutativity import commutativity_check

            result = commutativity_check(self)
            if not result.passed:
                raise InvalidInputError(
                    'Commutativity condition fails at level '
                    f'{result.level}, atom {result.atom}'
                )

    @property
    def atom_count(self):
        return self.space.atom_count

    @property
    def depth(self):
        return self.filtration.depth

    def certified(self):
        """Copy carrying a passed commutativity certificate"""
        return replace(self, commutativity_checked=True)
