"""
Django command estimating the paraproduct constant
"""
import json
from pathlib import Path

from django.conf import settings

from core.exceptions import InvalidInputError
from experiments.estimates import estimate_constant, sweep_cyclic
from experiments.serializers import ExperimentConfigSerializer
from harness.base import CommandOutput, HarnessCommand
from harness.serializers import (
    ConstantEstimateSerializer,
    SweepPointSerializer,
)


CONFIG_FLAGS = ('a', 'p', 'q', 'r', 'horizon_n', 'trials', 'system',
                'distribution', 'kind')


def read_config_file(path):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise InvalidInputError(f'Cannot read config {path}: {exc}') \
            from exc
    if not isinstance(data, dict):
        raise InvalidInputError(f'Config {path} must hold a JSON object')
    return data


def parse_sweep(text):
    """<low>:<high>, both inclusive"""
    try:
        low, high = (int(part) for part in text.split(':'))
    except ValueError:
        raise InvalidInputError(f'Invalid sweep range {text!r}') from None
    if not 2 <= low <= high:
        raise InvalidInputError(f'Need 2 <= low <= high, got {text}')
    return list(range(low, high + 1))


class Command(HarnessCommand):
    """Monte Carlo estimate of ||Pi^em_n||_r / (||f||_p ||g||_q)"""
    help = 'Estimate the paraproduct constant over random trials'
    csv_header = ['trial', 'ratio']

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON experiment config')
        parser.add_argument('--a', type=float)
        parser.add_argument('--p')
        parser.add_argument('--q')
        parser.add_argument('--r')
        parser.add_argument('--horizon', dest='horizon_n', type=int)
        parser.add_argument('--trials', type=int)
        parser.add_argument('--system')
        parser.add_argument('--distribution')
        parser.add_argument('--kind', help='Paraproduct kind, em or me')
        parser.add_argument('--seed', type=int, required=True)
        parser.add_argument('--workers', type=int,
                            default=settings.HARNESS['WORKERS'])
        parser.add_argument('--sweep', nargs='?', const='default',
                            help='Also sweep cyclic systems, <low>:<high>')
        self.add_output_arguments(parser)

    def run(self, **options):
        data = read_config_file(options['config']) \
            if options['config'] else {}
        data.update({flag: options[flag] for flag in CONFIG_FLAGS
                     if options[flag] is not None})
        data['seed'] = options['seed']
        serializer = ExperimentConfigSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        config = serializer.save()
        if options['workers'] < 1:
            raise InvalidInputError('Need --workers >= 1')

        report = estimate_constant(config, workers=options['workers'])
        results = {
            'in_theorem_range': config.in_theorem_range,
            'estimate': ConstantEstimateSerializer(report).data,
        }
        if options['sweep']:
            low, high = settings.HARNESS['SWEEP_RANGE']
            exponents = list(range(low, high + 1)) \
                if options['sweep'] == 'default' \
                else parse_sweep(options['sweep'])
            points = sweep_cyclic(config, exponents,
                                  workers=options['workers'])
            results['sweep'] = SweepPointSerializer(points, many=True).data
        return CommandOutput(
            parameters=ExperimentConfigSerializer(config).data,
            results=results,
            table=list(enumerate(report.trial_ratios)),
        )
