"""
Django command running the identity suites on a system
"""
from django.conf import settings

from core.exceptions import InvalidInputError
from dynamics.catalog import system_from_spec
from experiments.suites import BASES, run_identity_suites
from harness.base import CommandOutput, HarnessCommand
from harness.serializers import SuiteResultSerializer, SystemSummarySerializer


class Command(HarnessCommand):
    """Run every identity suite; exit 2 if one fails"""
    help = 'Verify the exact identities on a catalog system'

    def add_arguments(self, parser):
        parser.add_argument('--system', default='cyclic:4')
        parser.add_argument('--seed', type=int, required=True)
        parser.add_argument('--draws', type=int,
                            default=settings.HARNESS['DEFAULT_DRAWS'])
        parser.add_argument('--bases', default=','.join(
            str(base) for base in BASES
        ))
        self.add_output_arguments(parser)

    def run(self, **options):
        seed, draws = options['seed'], options['draws']
        if seed < 0 or draws < 1:
            raise InvalidInputError('Need --seed >= 0 and --draws >= 1')
        try:
            bases = tuple(float(base) for base in options['bases'].split(','))
        except ValueError:
            raise InvalidInputError(
                f'Invalid bases {options["bases"]!r}'
            ) from None
        if min(bases) <= 1:
            raise InvalidInputError('Every base must exceed 1')

        system = system_from_spec(options['system'])
        results = run_identity_suites(system, seed, draws, bases,
                                      cap=settings.HARNESS['RATIO_CAP'])
        passed = all(result.passed for result in results)
        return CommandOutput(
            parameters={'system': options['system'], 'seed': seed,
                        'draws': draws, 'bases': list(bases)},
            results={
                'system': SystemSummarySerializer(system).data,
                'passed': passed,
                'suites': SuiteResultSerializer(results, many=True).data,
            },
            failed=not passed,
        )
