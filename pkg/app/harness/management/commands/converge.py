"""
Django command profiling the convergence of a paraproduct
"""
from core.exceptions import InvalidInputError
from dynamics.catalog import system_from_spec
from experiments.profiles import cauchy_profile, oscillation_probe
from harness.base import CommandOutput, HarnessCommand
from harness.presets import (
    is_random,
    observable_from_preset,
    parse_exponent,
)
from harness.serializers import OscillationStatsSerializer, ProfileSerializer
from paraproduct.operators import EM, KINDS


class Command(HarnessCommand):
    """Cauchy profile plus an oscillation probe of Pi_n"""
    help = 'Profile the convergence of a paraproduct sequence'
    csv_header = ['n', 'norm', 'increment']

    def add_arguments(self, parser):
        parser.add_argument('--system', default='cyclic:10')
        parser.add_argument('--a', type=float, default=2.0)
        parser.add_argument('--r', default='1', help='Exponent, e.g. 4/3')
        parser.add_argument('--horizon', type=int,
                            help='Defaults to the filtration depth')
        parser.add_argument('--n0', type=int,
                            help='Start of the oscillation window')
        parser.add_argument('--eps', default='1e-3',
                            help='Oscillation threshold, or inf')
        parser.add_argument('--kind', choices=KINDS, default=EM)
        parser.add_argument('--f', default='randn')
        parser.add_argument('--g', default='randn')
        parser.add_argument('--seed', type=int)
        self.add_output_arguments(parser)

    def run(self, **options):
        if (is_random(options['f']) or is_random(options['g'])) \
                and options['seed'] is None:
            raise InvalidInputError('Random presets need --seed')
        system = system_from_spec(options['system'])
        rng = self.rng(options['seed'])
        f = observable_from_preset(options['f'], system.atom_count, rng)
        g = observable_from_preset(options['g'], system.atom_count, rng)
        r = parse_exponent(options['r'])
        epsilon = parse_exponent(options['eps'])
        horizon = options['horizon']
        horizon = system.depth if horizon is None else horizon
        n0 = horizon // 2 if options['n0'] is None else options['n0']
        a, kind = options['a'], options['kind']

        profile = cauchy_profile(f, g, system, a, r, horizon, kind=kind)
        probe = oscillation_probe(f, g, system, a, n0, horizon, epsilon,
                                  kind=kind)
        table = [
            (n, norm, increment)
            for n, (norm, increment) in enumerate(
                zip(profile.norms, profile.increments), start=1
            )
        ]
        return CommandOutput(
            parameters={'system': system.name, 'a': a, 'r': options['r'],
                        'horizon': horizon, 'n0': n0, 'eps': options['eps'],
                        'kind': kind, 'f': options['f'], 'g': options['g'],
                        'seed': options['seed']},
            results={
                'profile': ProfileSerializer(profile).data,
                'oscillation': OscillationStatsSerializer(
                    probe.oscillation
                ).data,
            },
            table=table,
        )
