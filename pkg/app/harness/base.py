"""
Base class for harness management commands.

Exit codes: 0 on success, 1 on invalid input or bad arguments, 2 when an
assertion suite fails. Invalid input is also reported on stderr as one
line of JSON.
"""
import json
import sys
import time
from dataclasses import dataclass
from functools import partial

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from core.exceptions import InvalidInputError, RangeError
from experiments.sampling import trial_rng
from harness.reports import (
    build_report,
    now,
    render_json,
    write_csv,
    write_json,
    write_manifest,
)


INVALID_INPUT = 1
SUITE_FAILED = 2


@dataclass
class CommandOutput:
    """What a harness command produced"""
    parameters: dict
    results: dict
    table: tuple = None
    failed: bool = False


def error_line(message):
    return json.dumps({'error': message, 'exit_code': INVALID_INPUT})


class HarnessCommand(BaseCommand):
    """Shared argument handling, report output and exit codes"""
    requires_system_checks = []
    csv_header = None

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = partial(self._usage_error, parser)
        return parser

    def _usage_error(self, parser, message):
        if not parser.called_from_command_line:
            raise CommandError(f'Error: {message}')
        parser.print_usage(sys.stderr)
        sys.stderr.write(error_line(message) + '\n')
        sys.exit(INVALID_INPUT)

    def add_output_arguments(self, parser):
        parser.add_argument('--out', help='Write the JSON report here')
        if self.csv_header:
            parser.add_argument('--csv', help='Write the CSV table here')

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def rng(self, seed):
        """Generator for the command's own draws, or None without a seed"""
        if seed is None:
            return None
        if seed < 0:
            raise InvalidInputError(f'Seeds must be >= 0, got {seed}')
        return trial_rng(seed, 0)

    def run(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        started = now()
        clock = time.perf_counter()
        try:
            output = self.run(**options)
        except serializers.ValidationError as exc:
            self.stderr.write(error_line(exc.detail))
            raise CommandError(f'Invalid configuration: {exc.detail}',
                               returncode=INVALID_INPUT) from exc
        except (InvalidInputError, RangeError) as exc:
            self.stderr.write(error_line(str(exc)))
            raise CommandError(str(exc), returncode=INVALID_INPUT) from exc

        report = build_report(self.command_name, output.parameters,
                              output.results)
        outputs = []
        if options.get('out'):
            outputs.append(write_json(options['out'], report))
        else:
            self.stdout.write(render_json(report).decode(), ending='')
        if options.get('csv') and output.table is not None:
            outputs.append(write_csv(options['csv'], self.csv_header,
                                     output.table))
        write_manifest(output.parameters, started,
                       time.perf_counter() - clock, outputs)
        for path in outputs:
            self.stderr.write(self.style.SUCCESS(f'Wrote {path}'))

        if output.failed:
            self.stderr.write(self.style.ERROR('Assertion suite failed'))
            raise CommandError('Assertion suite failed',
                               returncode=SUITE_FAILED)
