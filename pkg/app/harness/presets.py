"""
Command-line presets for observables, exponents and averaging times
"""
from fractions import Fraction

import numpy as np

from core.exceptions import InvalidInputError
from core.models import INFINITY, Observable
from experiments.models import NORMAL, STUDENT_T
from experiments.sampling import random_observable


RANDOM_PRESETS = {'randn': NORMAL, 'randt': STUDENT_T}


def is_random(preset):
    return preset in RANDOM_PRESETS


def observable_from_preset(preset, atom_count, rng=None):
    """unit:<i>, ramp, const:<c>, randn or randt on atom_count atoms"""
    name, _, argument = preset.partition(':')
    if preset in RANDOM_PRESETS:
        if rng is None:
            raise InvalidInputError(f'Preset {preset!r} needs --seed')
        return random_observable(rng, atom_count, RANDOM_PRESETS[preset])
    if name == 'ramp' and not argument:
        return Observable(np.arange(1, atom_count + 1, dtype=float))
    try:
        if name == 'unit':
            return Observable.indicator(int(argument), atom_count)
        if name == 'const':
            return Observable.constant(float(argument), atom_count)
    except ValueError:
        pass
    raise InvalidInputError(f'Unknown function preset {preset!r}')


def parse_exponent(text):
    """A positive real, a fraction like 4/3, or inf"""
    text = str(text).strip()
    if text.lower() in ('inf', 'infinity'):
        return INFINITY
    try:
        value = float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f'Invalid exponent {text!r}') from None
    if value <= 0:
        raise InvalidInputError(f'Exponent must be positive, got {text}')
    return value


def parse_counts(text):
    """pow2:<k> for 1, 2, 4, ..., 2^k, or a comma-separated list"""
    text = str(text).strip()
    try:
        if text.startswith('pow2:'):
            return [2 ** i for i in range(int(text[5:]) + 1)]
        return [int(part) for part in text.split(',')]
    except ValueError:
        raise InvalidInputError(f'Invalid averaging times {text!r}') \
            from None
