"""
Django command evaluating the paraproducts once
"""
from dynamics.catalog import system_from_spec
from harness.base import CommandOutput, HarnessCommand
from harness.presets import observable_from_preset
from harness.serializers import ParaproductSerializer
from martingale.martingales import backward_martingale, martingale_differences
from martingale.square import square_function
from paraproduct.identities import (
    summation_by_parts_residual,
    summation_by_parts_sides,
)
from paraproduct.operators import pi_em, pi_me, product_term, sampled_pi_em


class Command(HarnessCommand):
    """Evaluate Pi^em_n and Pi^me_n for preset observables"""
    help = 'Evaluate the paraproducts of two observables'
    csv_header = ['atom', 'pi_em', 'pi_me', 'product_term', 'square_function',
                  'summation_by_parts_rhs']

    def add_arguments(self, parser):
        parser.add_argument('--system', required=True)
        parser.add_argument('--a', type=float, default=2.0)
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--f', required=True, help='Function preset')
        parser.add_argument('--g', required=True, help='Function preset')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--sampled', action='store_true',
                            help='Also evaluate the K(l)-sampled sum')
        self.add_output_arguments(parser)

    def run(self, **options):
        system = system_from_spec(options['system'])
        rng = self.rng(options['seed'])
        f = observable_from_preset(options['f'], system.atom_count, rng)
        g = observable_from_preset(options['g'], system.atom_count, rng)
        a, n = options['a'], options['n']
        left, right = summation_by_parts_sides(f, g, system, a, n)
        martingale = backward_martingale(g, system.filtration, system.space,
                                         depth=n)

        values = {
            'pi_em': pi_em(f, g, system, a, n),
            'pi_me': pi_me(f, g, system, a, n),
            'product_term': product_term(f, g, system, a, n),
            'sampled_pi_em': (sampled_pi_em(f, g, system, a, n)
                              if options['sampled'] else None),
            'martingale_differences': martingale_differences(martingale),
            'square_function': square_function(martingale),
            'summation_by_parts_lhs': left,
            'summation_by_parts_rhs': right,
            'summation_by_parts_residual': summation_by_parts_residual(
                f, g, system, a, n
            ),
        }
        table = [
            (atom, *row)
            for atom, row in enumerate(zip(
                values['pi_em'].values.tolist(),
                values['pi_me'].values.tolist(),
                values['product_term'].values.tolist(),
                values['square_function'].values.tolist(),
                right.values.tolist(),
            ))
        ]
        return CommandOutput(
            parameters={'system': system.name, 'a': a, 'n': n,
                        'f': options['f'], 'g': options['g'],
                        'seed': options['seed']},
            results=ParaproductSerializer(values).data,
            table=table,
        )
