"""
Transference of the dyadic paraproduct to the integer model Z x Omega.

Row m of an integer model holds f o T^m. Shift averages run along the
rows, and conditional expectations act on each row separately.
"""
import logging

import numpy as np

from core.exceptions import InvalidInputError, RangeError
from core.models import Observable
from core.space import block_average, expectation, lp_array_norm
from experiments.models import IntegerModel, TransferenceCheck
from paraproduct.operators import pi_em


logger = logging.getLogger(__name__)

MAX_MODEL_ENTRIES = 2 ** 27


def _check_size(system, n):
    if n < 0:
        raise InvalidInputError(f'Index must be >= 0, got {n}')
    if n + 1 >= 63 or 2 ** (n + 1) * system.atom_count > MAX_MODEL_ENTRIES:
        raise RangeError(
            f'Integer model of 2^{n + 1} rows over {system.atom_count} '
            'atoms is too large'
        )


def transfer_to_integer_model(f, system, n):
    """F(m, w) = f(T^m w) for 0 <= m < 2^(n+1)"""
    _check_size(system, n)
    if f.atom_count != system.atom_count:
        raise InvalidInputError('Observable and system differ in atom count')
    track_length = 2 ** (n + 1)
    rows = np.empty((track_length, f.atom_count))
    position = np.arange(f.atom_count)
    for m in range(track_length):
        rows[m] = f.values[position]
        position = system.map.image_of[position]
    return IntegerModel(track_length=track_length, values=rows)


def transference_norm_residual(model, f, space, p):
    """Relative gap between ||f||_p^p and 2^-(n+1) ||F||_p^p"""
    if not p > 0 or p == np.inf:
        raise InvalidInputError(f'Need a finite exponent > 0, got {p}')
    direct = expectation(Observable(np.abs(f.values) ** p), space)
    model_total = float(np.sum(np.abs(model.values) ** p * space.weights))
    transferred = model_total / model.track_length
    return abs(direct - transferred) / max(direct, np.finfo(float).tiny)


def _check_horizon(system, n):
    if n > system.depth:
        raise InvalidInputError(f'Index {n} outside 0..{system.depth}')
    _check_size(system, n)


def _shift_averages(values, width):
    """Row m: mean of rows m..m+width-1, rows past the end being zero"""
    track_length = values.shape[0]
    cumulative = np.vstack([np.zeros((1, values.shape[1])),
                            np.cumsum(values, axis=0)])
    start = np.arange(track_length)
    stop = np.minimum(start + width, track_length)
    return (cumulative[stop] - cumulative[start]) / width


def integer_model_paraproduct(F, G, system, n):
    """sum_{k<n} (shift average of F over 2^k)(E_{k+1} G - E_k G) rowwise"""
    _check_horizon(system, n)
    if F.values.shape != G.values.shape:
        raise InvalidInputError('Integer models differ in shape')
    weights = system.space.weights
    levels = system.filtration.levels
    total = np.zeros(F.values.shape)
    lower = G.values
    for k in range(n):
        upper = block_average(G.values, levels[k + 1], weights)
        total += _shift_averages(F.values, 2 ** k) * (upper - lower)
        lower = upper
    return total


def transference_inequality(f, g, system, n, r):
    """Compare ||Pi^em_n(f, g)||_r^r with 2^-n ||integer model||_r^r.

    The restriction residual is the largest gap between row m of the
    integer-model paraproduct and Pi^em_n o T^m over m < 2^n; it vanishes
    when the commutativity condition holds.
    """
    if not r > 0 or r == np.inf:
        raise InvalidInputError(f'Need a finite exponent > 0, got {r}')
    weights = system.space.weights
    direct_paraproduct = pi_em(f, g, system, 2, n)
    F = transfer_to_integer_model(f, system, n)
    G = transfer_to_integer_model(g, system, n)
    model = integer_model_paraproduct(F, G, system, n)

    direct = float(lp_array_norm(direct_paraproduct.values, r, weights)) ** r
    transferred = float(np.sum(np.abs(model) ** r * weights)) / 2 ** n

    residual = 0.0
    position = np.arange(system.atom_count)
    for m in range(2 ** n):
        moved = direct_paraproduct.values[position]
        position = system.map.image_of[position]
        residual = max(residual, float(np.max(np.abs(model[m] - moved))))
    logger.debug('Transference at n=%d: direct %g, transferred %g', n,
                 direct, transferred)
    return TransferenceCheck(n=n, r=r, direct=direct,
                             transferred=transferred,
                             restriction_residual=residual)
