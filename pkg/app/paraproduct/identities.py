"""
Exact identities tying the paraproducts together, as residuals.

Each residual is the max-norm of a difference that vanishes in exact
arithmetic; the two sides are always evaluated independently.
"""
import numpy as np

from core.exceptions import InvalidInputError
from core.models import Observable
from dynamics.averages import ergodic_average, floor_pow
from martingale.martingales import backward_martingale
from paraproduct.operators import (
    EM,
    ME,
    mm_paraproduct,
    paraproduct_sequence,
    pi_em,
)


def _max_norm(values):
    return float(np.max(np.abs(values))) if np.size(values) else 0.0


def summation_by_parts_sides(f, g, system, a, n):
    """(Pi^em_n + Pi^me_n, (A_{floor(a^n)} f)(E_n g) - fg)"""
    left = np.zeros(f.atom_count)
    for kind in (EM, ME):
        sequence = paraproduct_sequence(kind, f, g, system, a, n)
        if sequence:
            left = left + sequence[-1].values
    average = ergodic_average(f, system.map, floor_pow(a, n))
    level = backward_martingale(g, system.filtration, system.space,
                                depth=n).limit
    right = average.values * level.values - f.values * g.values
    return Observable(left), Observable(right)


def summation_by_parts_residual(f, g, system, a, n):
    """max |Pi^em_n + Pi^me_n - (A_{floor(a^n)} f)(E_n g) + fg|"""
    left, right = summation_by_parts_sides(f, g, system, a, n)
    return _max_norm(left.values - right.values)


def cauchy_substitution_residual(f, g, system, a, n, m):
    """max |Pi_n(f, g) - Pi_m(f, g) - Pi_n(f, E_m g - E_n g)|

    With this substitution the main estimate bounds the Cauchy increments
    of Pi^em by the increments of the backward martingale.
    """
    if not 0 <= m <= n:
        raise InvalidInputError(f'Need 0 <= m <= n, got m={m}, n={n}')
    levels = backward_martingale(g, system.filtration, system.space,
                                 depth=n).levels
    increment = pi_em(f, g, system, a, n) - pi_em(f, g, system, a, m)
    substituted = pi_em(f, levels[m] - levels[n], system, a, n)
    return _max_norm(increment.values - substituted.values)


def mm_summation_by_parts_residual(F, G, product_space, n):
    """Residual of the product-space summation by parts.

    sum_k E_1(F|U_k) (E_2(G|V_{k+1}) - E_2(G|V_k))
    + sum_k (E_1(F|U_{k+1}) - E_1(F|U_k)) E_2(G|V_{k+1})
    = E_1(F|U_n) E_2(G|V_n) - E_1(F|U_0) E_2(G|V_0)
    """
    product_space.require(F, G)
    if not 0 <= n <= product_space.depth:
        raise InvalidInputError(
            f'Index {n} outside 0..{product_space.depth}'
        )
    first = [product_space.first_expectation(F, k) for k in range(n + 1)]
    second = [product_space.second_expectation(G, k) for k in range(n + 1)]
    left = mm_paraproduct(F, G, product_space, n).values
    for k in range(n):
        left = left + (first[k + 1] - first[k]) * second[k + 1]
    right = first[n] * second[n] - first[0] * second[0]
    return _max_norm(left - right)
