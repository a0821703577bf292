"""
Django command listing the catalog of dynamical systems
"""
from dynamics.catalog import system_from_spec
from harness.base import CommandOutput, HarnessCommand
from harness.serializers import SystemSummarySerializer


SPEC_FORMS = {
    'cyclic_rotation': 'cyclic:<m>[:<depth>]',
    'group_translation': 'group:<o1>x<o2>x...',
    'product_torus': 'torus:<m1>:<m2>[:<s1>,<s2>:<t1>,<t2>]',
}
DEFAULT_SYSTEMS = [
    'cyclic:2', 'cyclic:10', 'group:2x2', 'group:2x3x4', 'torus:4:4',
    'transposition',
]


class Command(HarnessCommand):
    """List system kinds and summarize example systems"""
    help = 'List the catalog of dynamical systems'

    def add_arguments(self, parser):
        parser.add_argument('systems', nargs='*', default=DEFAULT_SYSTEMS,
                            help='System specs to summarize')
        self.add_output_arguments(parser)

    def run(self, **options):
        systems = [system_from_spec(spec) for spec in options['systems']]
        return CommandOutput(
            parameters={'systems': options['systems']},
            results={
                'kinds': [{'kind': kind, 'spec': form}
                          for kind, form in SPEC_FORMS.items()],
                'systems': SystemSummarySerializer(systems, many=True).data,
            },
        )
