"""
Product-space models for the martingale-martingale paraproduct
"""
from dataclasses import dataclass

import numpy as np

from core.exceptions import InvalidInputError
from core.models import AtomSpace, ForwardFiltration, frozen_array
from core.space import block_average, lp_array_norm


@dataclass(frozen=True, eq=False)
class ProductSpace:
    """Omega_1 x Omega_2 with a forward filtration on each coordinate"""
    space1: AtomSpace
    space2: AtomSpace
    forward1: ForwardFiltration
    forward2: ForwardFiltration

    def __post_init__(self):
        if self.forward1.atom_count != self.space1.atom_count:
            raise InvalidInputError('First filtration does not fit space 1')
        if self.forward2.atom_count != self.space2.atom_count:
            raise InvalidInputError('Second filtration does not fit space 2')

    @property
    def shape(self):
        return (self.space1.atom_count, self.space2.atom_count)

    @property
    def weights(self):
        return np.outer(self.space1.weights, self.space2.weights)

    @property
    def depth(self):
        return min(self.forward1.depth, self.forward2.depth)

    def require(self, *observables):
        for obs in observables:
            if obs.values.shape != self.shape:
                raise InvalidInputError(
                    f'Product observable of shape {obs.values.shape} '
                    f'does not fit {self.shape}'
                )

    def first_expectation(self, obs, i):
        """E_1(F | U_i): condition the first coordinate only"""
        return block_average(obs.values.T, self.forward1.levels[i],
                             self.space1.weights).T

    def second_expectation(self, obs, i):
        """E_2(G | V_i): condition the second coordinate only"""
        return block_average(obs.values, self.forward2.levels[i],
                             self.space2.weights)

    def lp_norm(self, obs, p):
        self.require(obs)
        return float(lp_array_norm(obs.values.reshape(-1), p,
                                   self.weights.reshape(-1)))


@dataclass(frozen=True, eq=False)
class ProductObservable:
    """A real function on Omega_1 x Omega_2"""
    values: np.ndarray

    def __post_init__(self):
        values = frozen_array(self.values)
        if values.ndim != 2:
            raise InvalidInputError('Product observables are matrices')
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_function(cls, function, shape):
        """Tabulate function(x, y) on the index grid"""
        rows, columns = np.indices(shape)
        return cls(np.vectorize(function, otypes=[float])(rows, columns))

    def __add__(self, other):
        return ProductObservable(self.values + other.values)

    def __mul__(self, scalar):
        return ProductObservable(self.values * float(scalar))

    __rmul__ = __mul__
