"""
Monte Carlo estimates of the paraproduct constant and related ratios
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from django.conf import settings

from core.exceptions import InvalidInputError
from core.space import lp_norm
from dynamics.averages import floor_pow
from dynamics.catalog import cyclic_rotation, system_from_spec
from experiments.models import (
    ConvergenceReport,
    HOLDER_TRIPLES,
    HolderRangePoint,
    SquareFunctionMonitor,
    SweepPoint,
)
from experiments.profiles import oscillation_probe
from experiments.sampling import (
    random_backward_filtration,
    random_observable,
    trial_rng,
)
from martingale.martingales import backward_martingale
from martingale.square import (
    lacunary_ergodic_square_function,
    sampled_ergodic_square_function,
    square_function,
)
from paraproduct.operators import EM, paraproduct_sequence


logger = logging.getLogger(__name__)

MAX_RESAMPLES = 100


@dataclass(frozen=True)
class TrialOutcome:
    ratios: tuple
    resampled: int


def paraproduct_ratios(f, g, system, a, n, p, q, r, kind=EM):
    """||Pi_k(f, g)||_r / (||f||_p ||g||_q) for k = 1..n"""
    scale = lp_norm(f, p, system.space) * lp_norm(g, q, system.space)
    if scale == 0:
        raise InvalidInputError('Ratios need nonzero ||f||_p and ||g||_q')
    return [
        lp_norm(pi, r, system.space) / scale
        for pi in paraproduct_sequence(kind, f, g, system, a, n)
    ]


def _draw_pair(rng, config, system):
    """Draw (f, g), redrawing while either norm vanishes"""
    for resampled in range(MAX_RESAMPLES):
        f = random_observable(rng, system.atom_count, config.distribution)
        g = random_observable(rng, system.atom_count, config.distribution)
        if lp_norm(f, config.p, system.space) > 0 \
                and lp_norm(g, config.q, system.space) > 0:
            return f, g, resampled
    raise InvalidInputError(
        f'Drew a zero observable {MAX_RESAMPLES} times in a row'
    )


def _run_trial(config, system, index):
    rng = trial_rng(config.seed, index)
    f, g, resampled = _draw_pair(rng, config, system)
    ratios = paraproduct_ratios(f, g, system, config.a, config.horizon_n,
                                config.p, config.q, config.r,
                                kind=config.kind)
    return TrialOutcome(ratios=tuple(ratios), resampled=resampled)


def estimate_constant(config, system=None, workers=None):
    """Largest observed ||Pi_n||_r / (||f||_p ||g||_q) over random trials.

    Trials run in a thread pool; outcomes keep trial order so the report
    is the same for every worker count.
    """
    system = system_from_spec(config.system) if system is None else system
    if not 1 <= config.horizon_n <= system.depth:
        raise InvalidInputError(
            f'Horizon {config.horizon_n} outside 1..{system.depth}'
        )
    workers = workers or settings.HARNESS['WORKERS']
    logger.info('Estimating constant on %s with %d trials', system.name,
                config.trials)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(
            lambda index: _run_trial(config, system, index),
            range(config.trials),
        ))

    ratios = np.array([outcome.ratios for outcome in outcomes])
    trial_ratios = ratios.max(axis=1)
    envelope = np.maximum.accumulate(trial_ratios)
    resampled = sum(outcome.resampled for outcome in outcomes)
    if resampled:
        logger.info('Resampled %d zero-norm draws', resampled)
    if envelope[-1] > settings.HARNESS['RATIO_CAP']:
        logger.warning('Largest ratio %g exceeds the cap %g', envelope[-1],
                       settings.HARNESS['RATIO_CAP'])
    return ConvergenceReport(
        ratio_envelope=tuple(float(x) for x in envelope),
        trial_ratios=tuple(float(x) for x in trial_ratios),
        level_maxima=tuple(float(x) for x in ratios.max(axis=0)),
        resampled=resampled,
    )


def holder_range_monitor(config, system=None, triples=HOLDER_TRIPLES,
                         workers=None):
    """estimate_constant for each exponent triple, other fields from config.

    Every triple sees the same seeded draws.
    """
    system = system_from_spec(config.system) if system is None else system
    points = []
    for p, q, r in triples:
        report = estimate_constant(replace(config, p=p, q=q, r=r),
                                   system=system, workers=workers)
        points.append(HolderRangePoint(p=p, q=q, r=r,
                                       max_ratio=report.ratio_envelope[-1]))
    logger.info('Holder range on %s: max ratio %g', system.name,
                max(point.max_ratio for point in points))
    return points


def monitor_square_functions(seed, trials, exponents, a=2.0, m=6):
    """Largest ||Sg||_q/||g||_q and ||S_erg f||_q/||f||_q over trials.

    Martingale ratios use a fresh random filtration of depth m on 2^m atoms
    per trial; ergodic ratios use the rotation on Z_{2^m} along floor(a^i).
    Sampled ratios use the same rotation along floor(a^K(l)), l <= m.
    """
    system = cyclic_rotation(m)
    horizon = 0
    while floor_pow(a, horizon + 1) <= system.atom_count:
        horizon += 1
    martingale_max = dict.fromkeys(exponents, 0.0)
    ergodic_max = dict.fromkeys(exponents, 0.0)
    sampled_max = dict.fromkeys(exponents, 0.0)
    for index in range(trials):
        rng = trial_rng(seed, index)
        filtration = random_backward_filtration(rng, system.atom_count, m)
        f = random_observable(rng, system.atom_count)
        g = random_observable(rng, system.atom_count)
        martingale = backward_martingale(g, filtration, system.space)
        martingale_square = square_function(martingale)
        ergodic_square = lacunary_ergodic_square_function(
            f, system.map, a, horizon
        )
        sampled_square = sampled_ergodic_square_function(f, system.map, a, m)
        for q in exponents:
            martingale_max[q] = max(
                martingale_max[q],
                lp_norm(martingale_square, q, system.space)
                / lp_norm(g, q, system.space),
            )
            ergodic_max[q] = max(
                ergodic_max[q],
                lp_norm(ergodic_square, q, system.space)
                / lp_norm(f, q, system.space),
            )
            sampled_max[q] = max(
                sampled_max[q],
                lp_norm(sampled_square, q, system.space)
                / lp_norm(f, q, system.space),
            )
    return SquareFunctionMonitor(trials=trials, martingale=martingale_max,
                                 ergodic=ergodic_max, sampled=sampled_max)


def sweep_cyclic(config, exponents, epsilon=1e-3, workers=None):
    """Constant estimate and oscillation on cyclic_rotation(m) for each m.

    The oscillation of Pi^em is probed for one seeded pair over the second
    half of the filtration.
    """
    points = []
    for m in exponents:
        if m < 2:
            raise InvalidInputError(f'Sweeps need m >= 2, got {m}')
        system = cyclic_rotation(m)
        run = replace(config, system=system.name, horizon_n=m)
        report = estimate_constant(run, system=system, workers=workers)
        f, g, _ = _draw_pair(trial_rng(config.seed, config.trials), run,
                             system)
        probe = oscillation_probe(f, g, system, config.a, m // 2, m, epsilon)
        points.append(SweepPoint(
            m=m,
            atom_count=system.atom_count,
            max_ratio=report.ratio_envelope[-1],
            exceptional_weight=probe.oscillation.exceptional_weight,
            max_oscillation=probe.oscillation.max_oscillation,
        ))
        logger.info('Swept m=%d: max ratio %g', m, points[-1].max_ratio)
    return points
