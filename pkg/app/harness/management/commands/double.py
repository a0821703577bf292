"""
Django command profiling double ergodic averages
"""
from core.exceptions import InvalidInputError
from dynamics.catalog import system_from_spec
from experiments.profiles import double_average_profile
from harness.base import CommandOutput, HarnessCommand
from harness.presets import (
    is_random,
    observable_from_preset,
    parse_counts,
    parse_exponent,
)
from harness.serializers import ProfileSerializer


class Command(HarnessCommand):
    """Norms, increments and oscillation of B_N(f, g) along N"""
    help = 'Profile double ergodic averages on a two-map system'
    csv_header = ['n', 'norm', 'increment']

    def add_arguments(self, parser):
        parser.add_argument('--system', default='torus:4:4')
        parser.add_argument('--ns', default='pow2:10',
                            help='pow2:<k> or a comma-separated list')
        parser.add_argument('--eps', default='1e-2',
                            help='Oscillation threshold, or inf')
        parser.add_argument('--f', default='randn')
        parser.add_argument('--g', default='randn')
        parser.add_argument('--seed', type=int)
        self.add_output_arguments(parser)

    def run(self, **options):
        if (is_random(options['f']) or is_random(options['g'])) \
                and options['seed'] is None:
            raise InvalidInputError('Random presets need --seed')
        system = system_from_spec(options['system'])
        if system.commuting_map is None:
            raise InvalidInputError(
                f'{system.name} has no second map; use a torus system'
            )
        rng = self.rng(options['seed'])
        f = observable_from_preset(options['f'], system.atom_count, rng)
        g = observable_from_preset(options['g'], system.atom_count, rng)
        counts = parse_counts(options['ns'])

        profile = double_average_profile(
            f, g, system.map, system.commuting_map, counts,
            epsilon=parse_exponent(options['eps']), space=system.space,
        )
        increments = ('',) + profile.increments
        table = list(zip(counts, profile.norms, increments))
        return CommandOutput(
            parameters={'system': system.name, 'ns': counts,
                        'eps': options['eps'], 'f': options['f'],
                        'g': options['g'], 'seed': options['seed']},
            results={'profile': ProfileSerializer(profile).data},
            table=table,
        )
