"""
Ergodic-martingale, martingale-ergodic and martingale-martingale
paraproducts, and double ergodic averages.

Sums over k are accumulated in increasing k, so results do not depend on
how the terms were produced.
"""
import math
from fractions import Fraction

import numpy as np

from core.exceptions import InvalidInputError, NonCommutingMapsError
from core.models import Observable
from core.space import require_compatible
from dynamics.averages import K_table, ergodic_averages, lacunary_averages
from martingale.martingales import (
    backward_martingale,
    martingale_differences,
    subsampled,
)
from paraproduct.models import ProductObservable


EM = 'em'
ME = 'me'
KINDS = (EM, ME)


def _check_horizon(system, n):
    if n < 0:
        raise InvalidInputError(f'Paraproduct index must be >= 0, got {n}')
    if n > system.depth:
        raise InvalidInputError(
            f'Index {n} exceeds filtration depth {system.depth}'
        )


def _ingredients(f, g, system, a, n):
    """A_{floor(a^k)} f for k <= n and E_k g for k <= n"""
    require_compatible(system.space, f, g)
    _check_horizon(system, n)
    if not a > 1:
        raise InvalidInputError(f'Base must exceed 1, got {a}')
    averages = lacunary_averages(f, system.map, a, n)
    martingale = backward_martingale(g, system.filtration, system.space,
                                     depth=n)
    return averages, martingale.levels


def paraproduct_terms(kind, f, g, system, a, n):
    """The n summands of the paraproduct of the given kind"""
    if kind not in KINDS:
        raise InvalidInputError(f'Unknown paraproduct kind {kind!r}')
    averages, levels = _ingredients(f, g, system, a, n)
    if kind == EM:
        return [
            averages[k].values * (levels[k + 1].values - levels[k].values)
            for k in range(n)
        ]
    return [
        (averages[k + 1].values - averages[k].values) * levels[k + 1].values
        for k in range(n)
    ]


def paraproduct_sequence(kind, f, g, system, a, n):
    """Pi_1, ..., Pi_n of the given kind"""
    partial = np.zeros(f.atom_count)
    sequence = []
    for term in paraproduct_terms(kind, f, g, system, a, n):
        partial = partial + term
        sequence.append(Observable(partial))
    return sequence


def _last(sequence, atom_count):
    return sequence[-1] if sequence else Observable.zero(atom_count)


def pi_em(f, g, system, a, n):
    """sum_{k<n} (A_{floor(a^k)} f)(E_{k+1} g - E_k g)"""
    return _last(paraproduct_sequence(EM, f, g, system, a, n), f.atom_count)


def pi_me(f, g, system, a, n):
    """sum_{k<n} (A_{floor(a^(k+1))} f - A_{floor(a^k)} f)(E_{k+1} g)"""
    return _last(paraproduct_sequence(ME, f, g, system, a, n), f.atom_count)


def product_term(f, g, system, a, n):
    """(A_{floor(a^n)} f)(E_n g)"""
    averages, levels = _ingredients(f, g, system, a, n)
    return averages[n] * levels[n]


def dyadic_top_level(a, n):
    """floor((n - 1) log2 a), computed exactly"""
    if n < 1:
        return -1
    return math.floor(Fraction(a) ** (n - 1)).bit_length() - 1


def sampled_pi_em(f, g, system, a, n):
    """sum_{l<=L} (A_{2^l} f)(E_{K(l+1)} g - E_{K(l)} g)

    L = floor((n - 1) log2 a) is the dyadic top level.

    The martingale is read at the times K(l), so the sum is the a = 2
    paraproduct along a subsequence of the filtration.
    """
    require_compatible(system.space, f, g)
    if not a > 1:
        raise InvalidInputError(f'Base must exceed 1, got {a}')
    top = dyadic_top_level(a, n)
    if top < 0:
        return Observable.zero(f.atom_count)
    times = K_table(a, top + 1)
    if times[-1] > system.depth:
        raise InvalidInputError(
            f'Sampling time K({top + 1}) = {times[-1]} exceeds filtration '
            f'depth {system.depth}'
        )
    averages = ergodic_averages(f, system.map,
                                [2 ** l for l in range(top + 1)])
    martingale = backward_martingale(g, system.filtration, system.space,
                                     depth=times[-1])
    differences = martingale_differences(subsampled(martingale, times))
    total = np.zeros(f.atom_count)
    for average, difference in zip(averages, differences):
        total = total + average.values * difference.values
    return Observable(total)


def mm_paraproduct(F, G, product_space, n):
    """sum_{k<n} E_1(F|U_k)(E_2(G|V_{k+1}) - E_2(G|V_k))"""
    product_space.require(F, G)
    if not 0 <= n <= product_space.depth:
        raise InvalidInputError(
            f'Index {n} outside 0..{product_space.depth}'
        )
    total = np.zeros(product_space.shape)
    lower = product_space.second_expectation(G, 0)
    for k in range(n):
        upper = product_space.second_expectation(G, k + 1)
        total = total + product_space.first_expectation(F, k) \
            * (upper - lower)
        lower = upper
    return ProductObservable(total)


def _require_commuting(f, g, first, second):
    if not (f.atom_count == g.atom_count == first.atom_count
            == second.atom_count):
        raise InvalidInputError('Observables and maps differ in atom count')
    atom = first.first_noncommuting_atom(second)
    if atom is not None:
        raise NonCommutingMapsError(atom)


def _orbit_product_sums(f, g, first, second, counts):
    """sum_{k<N} f(S^k x) g(T^k x) for each N in increasing counts"""
    sums = []
    total = np.zeros(f.atom_count)
    along_first = np.arange(f.atom_count)
    along_second = np.arange(f.atom_count)
    wanted = iter(counts)
    target = next(wanted, None)
    k = 0
    while target is not None:
        while k < target:
            total = total + f.values[along_first] * g.values[along_second]
            along_first = first.image_of[along_first]
            along_second = second.image_of[along_second]
            k += 1
        sums.append(total)
        target = next(wanted, None)
    return sums


def _joint_period(first, second):
    if first.orbits is None or second.orbits is None:
        return None
    return math.lcm(first.orbits.period(), second.orbits.period())


def double_average(f, g, first, second, N):
    """B_N(f, g) = (1/N) sum_{k<N} (f o S^k)(g o T^k) for commuting S, T"""
    if N < 1:
        raise InvalidInputError(f'Averages need N >= 1, got {N}')
    _require_commuting(f, g, first, second)
    period = _joint_period(first, second)
    if period is None or N <= period:
        return Observable(_orbit_product_sums(f, g, first, second, [N])[0]
                          / N)
    # the pair (S^k x, T^k x) repeats with the joint period
    laps, rest = divmod(N, period)
    if rest:
        partial, full = _orbit_product_sums(f, g, first, second,
                                            [rest, period])
    else:
        partial = 0.0
        full, = _orbit_product_sums(f, g, first, second, [period])
    return Observable((laps * full + partial) / N)


def double_average_limit(f, g, first, second):
    """lim B_N(f, g): the average over one joint period of two bijections"""
    _require_commuting(f, g, first, second)
    period = _joint_period(first, second)
    if period is None:
        raise InvalidInputError('The limit needs two bijective maps')
    return double_average(f, g, first, second, period)
