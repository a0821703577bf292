"""
Randomized identity suites run by the verify command.

Every suite draws from trial_rng(seed, draw) with its own seed offset, so
adding a suite does not change what the others draw.
"""
import logging
import math

import numpy as np

from core.models import Observable
from core.space import lp_norm
from dynamics.averages import lacunary_block_counts
from dynamics.catalog import transposition_example
from dynamics.commutativity import (
    averages_commute_with_expectations,
    commutativity_check,
)
from experiments.models import HOLDER_TRIPLES, ExperimentConfig, SuiteResult
from experiments.profiles import cauchy_profile
from experiments.sampling import random_observable, random_system, trial_rng
from experiments.estimates import (
    holder_range_monitor,
    monitor_square_functions,
)
from experiments.transference import (
    transfer_to_integer_model,
    transference_inequality,
    transference_norm_residual,
)
from martingale.martingales import backward_martingale, martingale_differences
from paraproduct.identities import (
    cauchy_substitution_residual,
    summation_by_parts_residual,
)
from paraproduct.operators import pi_em, pi_me


logger = logging.getLogger(__name__)

IDENTITY_TOLERANCE = 1e-12
PYTHAGORAS_TOLERANCE = 1e-10
BASES = (1.5, 2.0, 3.0)
LACUNARY_BASES = (1.1, 1.5, 2.0, 3.0)
EXPONENTS = (1.0, 4 / 3, 2.0, 4.0)
AVERAGE_COUNTS = (1, 2, 3, 5, 8)
DENSE_ATOM_LIMIT = 1024
MODEL_ENTRY_LIMIT = 2 ** 22
SQUARE_FUNCTION_EXPONENTS = (4 / 3, 2.0, 4.0)


def _scale(f, g):
    return max(1.0, f.max_abs() * g.max_abs())


def _max_norm(obs):
    return obs.max_abs() if obs.atom_count else 0.0


def _draws(seed, offset, draws, system):
    for draw in range(draws):
        rng = trial_rng(seed + offset, draw)
        yield rng, random_observable(rng, system.atom_count), \
            random_observable(rng, system.atom_count)


def _lacunary_horizon(system, a):
    """Largest n <= depth with floor(a^n) in the exact range"""
    n = system.depth
    while n > 0 and n * np.log2(a) > 52:
        n -= 1
    return n


def _model_horizon(system):
    """Largest n <= min(depth, 10) keeping integer models small"""
    top = 0
    while top < min(system.depth, 10) \
            and 2 ** (top + 2) * system.atom_count <= MODEL_ENTRY_LIMIT:
        top += 1
    return top


def commutativity_suite(system):
    passed = commutativity_check(system).passed
    return SuiteResult('commutativity', passed, 0.0 if passed else 1.0,
                       0.0, 1)


def counterexample_suite():
    """The swapped rotation on Z_4 must fail at level 1, atom 0"""
    result = commutativity_check(transposition_example())
    passed = (not result.passed and result.level == 1
              and result.atom == 0)
    return SuiteResult('commutativity_counterexample', passed,
                       0.0 if passed else 1.0, 0.0, 1)


def averages_commute_suite(system):
    worst = averages_commute_with_expectations(system, AVERAGE_COUNTS)
    return SuiteResult('averages_commute', worst <= IDENTITY_TOLERANCE,
                       worst, IDENTITY_TOLERANCE, len(AVERAGE_COUNTS))


def measure_preservation_suite(system, seed, draws):
    worst = 0.0
    for _, f, _ in _draws(seed, 1, draws, system):
        moved = system.map.pullback(f)
        for p in EXPONENTS:
            norm = lp_norm(f, p, system.space)
            gap = abs(lp_norm(moved, p, system.space) - norm)
            worst = max(worst, gap / max(1.0, norm))
    return SuiteResult('measure_preservation', worst <= IDENTITY_TOLERANCE,
                       worst, IDENTITY_TOLERANCE, draws)


def summation_by_parts_suite(system, seed, draws, bases=BASES):
    worst = 0.0
    for rng, f, g in _draws(seed, 2, draws, system):
        a = bases[rng.integers(len(bases))]
        n = int(rng.integers(0, _lacunary_horizon(system, a) + 1))
        residual = summation_by_parts_residual(f, g, system, a, n)
        worst = max(worst, residual / _scale(f, g))
    return SuiteResult('summation_by_parts', worst <= IDENTITY_TOLERANCE,
                       worst, IDENTITY_TOLERANCE, draws)


def random_summation_by_parts_suite(seed, draws, bases=BASES,
                                    max_exponent=12):
    """Summation by parts over random (system, f, g, a, n) draws"""
    worst = 0.0
    for draw in range(draws):
        rng = trial_rng(seed + 11, draw)
        system = random_system(rng, max_exponent)
        f = random_observable(rng, system.atom_count)
        g = random_observable(rng, system.atom_count)
        a = bases[rng.integers(len(bases))]
        n = int(rng.integers(0, _lacunary_horizon(system, a) + 1))
        residual = summation_by_parts_residual(f, g, system, a, n)
        worst = max(worst, residual / _scale(f, g))
    return SuiteResult('summation_by_parts_random',
                       worst <= IDENTITY_TOLERANCE, worst,
                       IDENTITY_TOLERANCE, draws)


def cauchy_substitution_suite(system, seed, draws, bases=BASES):
    worst = 0.0
    for rng, f, g in _draws(seed, 3, draws, system):
        a = bases[rng.integers(len(bases))]
        n = int(rng.integers(0, _lacunary_horizon(system, a) + 1))
        m = int(rng.integers(0, n + 1))
        residual = cauchy_substitution_residual(f, g, system, a, n, m)
        worst = max(worst, residual / _scale(f, g))
    return SuiteResult('cauchy_substitution', worst <= IDENTITY_TOLERANCE,
                       worst, IDENTITY_TOLERANCE, draws)


def pythagoras_suite(system, seed, draws):
    """||g||^2 - ||E_D g||^2 = sum ||d_k||^2, relative to ||g||^2"""
    worst = 0.0
    for _, _, g in _draws(seed, 4, draws, system):
        martingale = backward_martingale(g, system.filtration, system.space)
        total = lp_norm(g, 2, system.space) ** 2
        limit = lp_norm(martingale.limit, 2, system.space) ** 2
        pieces = sum(lp_norm(d, 2, system.space) ** 2
                     for d in martingale_differences(martingale))
        worst = max(worst, abs(total - limit - pieces) / max(total, 1e-300))
    return SuiteResult('pythagoras', worst <= PYTHAGORAS_TOLERANCE, worst,
                       PYTHAGORAS_TOLERANCE, draws)


def transference_norm_suite(system, seed, draws):
    worst = 0.0
    top = _model_horizon(system)
    for rng, f, _ in _draws(seed, 5, draws, system):
        model = transfer_to_integer_model(f, system,
                                          int(rng.integers(0, top + 1)))
        for p in EXPONENTS:
            worst = max(worst, transference_norm_residual(
                model, f, system.space, p
            ))
    return SuiteResult('transference_norm', worst <= IDENTITY_TOLERANCE,
                       worst, IDENTITY_TOLERANCE, draws)


def transference_inequality_suite(system, seed, draws):
    """Pi^em at a = 2 against its integer model: the inequality holds and
    rows m < 2^n reproduce Pi^em o T^m"""
    worst = 0.0
    top = _model_horizon(system)
    for rng, f, g in _draws(seed, 8, draws, system):
        n = int(rng.integers(0, top + 1))
        r = (1.0, 4 / 3)[rng.integers(2)]
        check = transference_inequality(f, g, system, n, r)
        excess = max(0.0, check.direct - check.transferred)
        worst = max(worst, check.restriction_residual / _scale(f, g),
                    excess / max(1.0, check.transferred))
    return SuiteResult('transference_inequality',
                       worst <= IDENTITY_TOLERANCE, worst,
                       IDENTITY_TOLERANCE, draws)


def square_function_suite(seed, draws, cap):
    """Square-function ratios stay below cap"""
    monitor = monitor_square_functions(seed + 9, draws,
                                       SQUARE_FUNCTION_EXPONENTS)
    worst = max(list(monitor.martingale.values())
                + list(monitor.ergodic.values())
                + list(monitor.sampled.values()))
    return SuiteResult('square_functions', worst < cap, worst, cap, draws)


def lacunary_counting_suite(bases=LACUNARY_BASES):
    """At most floor(log_a 2) + 1 of the floor(a^k) fall in each dyadic
    block [2^l, 2^(l+1)) below 2^53"""
    worst = 0.0
    for a in bases:
        bound = math.floor(math.log(2, a)) + 1
        worst = max(worst, max(lacunary_block_counts(a, 52)) / bound)
    return SuiteResult('lacunary_counting', worst <= 1.0, worst, 1.0,
                       len(bases))


def holder_range_suite(system, seed, draws, cap):
    """Paraproduct ratios over the proven exponent range stay below cap"""
    horizon = _lacunary_horizon(system, 2.0)
    if horizon < 1:
        return SuiteResult('holder_range', True, 0.0, cap, 0)
    p, q, r = HOLDER_TRIPLES[0]
    config = ExperimentConfig(a=2.0, p=p, q=q, r=r, horizon_n=horizon,
                              seed=seed + 10, trials=draws)
    points = holder_range_monitor(config, system=system)
    worst = max(point.max_ratio for point in points)
    return SuiteResult('holder_range', worst <= cap, worst, cap, draws)


def degenerate_suite(system, seed, draws):
    """Pi^em(f, c) = 0, Pi^me(c, g) = 0 and Pi^em(1, g) = E_n g - g"""
    worst = 0.0
    one = Observable.constant(1.0, system.atom_count)
    for rng, f, g in _draws(seed, 6, draws, system):
        n = int(rng.integers(0, _lacunary_horizon(system, 2.0) + 1))
        constant = Observable.constant(float(rng.integers(-8, 9)),
                                       system.atom_count)
        worst = max(worst, _max_norm(pi_em(f, constant, system, 2.0, n)))
        worst = max(worst, _max_norm(pi_me(constant, g, system, 2.0, n)))
        level = backward_martingale(g, system.filtration, system.space,
                                    depth=n).limit
        gap = pi_em(one, g, system, 2.0, n) - (level - g)
        worst = max(worst, _max_norm(gap) / _scale(one, g))
    return SuiteResult('degenerate_inputs', worst <= IDENTITY_TOLERANCE,
                       worst, IDENTITY_TOLERANCE, draws)


def stabilization_suite(system, seed, draws):
    """Increments of Pi^em vanish past the filtration's stabilization"""
    worst = 0.0
    horizon = _lacunary_horizon(system, 2.0)
    if horizon < 1:
        return SuiteResult('stabilization', True, 0.0, 0.0, 0)
    threshold = system.filtration.stabilization_depth
    for _, f, g in _draws(seed, 7, draws, system):
        report = cauchy_profile(f, g, system, 2.0, 2.0, horizon)
        worst = max(worst, float(report.stabilization_index > threshold))
    return SuiteResult('stabilization', worst == 0.0, worst, 0.0, draws)


def run_identity_suites(system, seed, draws, bases=BASES, cap=10.0):
    """Run every suite on system; exact-arithmetic identities are checked
    to floating-point tolerance"""
    results = [
        commutativity_suite(system),
        counterexample_suite(),
    ]
    if system.atom_count <= DENSE_ATOM_LIMIT:
        results.append(averages_commute_suite(system))
    else:
        logger.info('Skipping averages_commute on %d atoms',
                    system.atom_count)
    results.append(measure_preservation_suite(system, seed, draws))
    results.append(summation_by_parts_suite(system, seed, draws, bases))
    results.append(random_summation_by_parts_suite(seed, draws, bases))
    results.append(cauchy_substitution_suite(system, seed, draws, bases))
    for suite in (
        pythagoras_suite,
        transference_norm_suite,
        transference_inequality_suite,
        degenerate_suite,
        stabilization_suite,
    ):
        results.append(suite(system, seed, draws))
    results.append(square_function_suite(seed, draws, cap))
    results.append(lacunary_counting_suite())
    results.append(holder_range_suite(system, seed, draws, cap))
    for result in results:
        log = logger.info if result.passed else logger.error
        log('Suite %s: worst %.3g (tolerance %.3g)', result.name,
            result.worst, result.tolerance)
    return results
