"""
Tests for the randomized identity suites
"""
from django.test import SimpleTestCase

from dynamics.catalog import (
    cyclic_rotation,
    group_translation,
    transposition_example,
)
from experiments.suites import (
    counterexample_suite,
    degenerate_suite,
    lacunary_counting_suite,
    pythagoras_suite,
    random_summation_by_parts_suite,
    run_identity_suites,
    square_function_suite,
    stabilization_suite,
    summation_by_parts_suite,
)


SUITE_NAMES = [
    'commutativity',
    'commutativity_counterexample',
    'averages_commute',
    'measure_preservation',
    'summation_by_parts',
    'summation_by_parts_random',
    'cauchy_substitution',
    'pythagoras',
    'transference_norm',
    'transference_inequality',
    'degenerate_inputs',
    'stabilization',
    'square_functions',
    'lacunary_counting',
    'holder_range',
]


class IdentitySuiteTests(SimpleTestCase):
    """Test the identity suites"""

    def test_all_pass_on_cyclic(self):
        """Test every suite passes on Z_16"""
        results = run_identity_suites(cyclic_rotation(4), seed=7, draws=5)

        self.assertEqual([result.name for result in results], SUITE_NAMES)
        for result in results:
            with self.subTest(suite=result.name):
                self.assertTrue(result.passed, result)

    def test_all_pass_on_group(self):
        """Test every suite passes on a product of cyclic groups"""
        results = run_identity_suites(group_translation((2, 3, 4)), seed=1,
                                      draws=3, bases=(2.0,))

        self.assertTrue(all(result.passed for result in results))

    def test_counterexample_fails_commutativity(self):
        """Test the swapped rotation fails the condition but not the
        algebraic identities"""
        results = {
            result.name: result
            for result in run_identity_suites(transposition_example(),
                                              seed=7, draws=3)
        }

        self.assertFalse(results['commutativity'].passed)
        self.assertFalse(results['averages_commute'].passed)
        self.assertTrue(results['commutativity_counterexample'].passed)
        self.assertTrue(results['summation_by_parts'].passed)
        self.assertTrue(results['pythagoras'].passed)

    def test_counterexample_suite(self):
        """Test the counterexample suite on its own"""
        result = counterexample_suite()

        self.assertTrue(result.passed)
        self.assertEqual(result.draws, 1)

    def test_suites_are_seeded(self):
        """Test the same seed gives the same worst residual"""
        system = cyclic_rotation(3)

        first = summation_by_parts_suite(system, 11, 4)
        again = summation_by_parts_suite(system, 11, 4)

        self.assertEqual(first, again)

    def test_degenerate_inputs(self):
        """Test constant arguments give vanishing paraproducts"""
        result = degenerate_suite(cyclic_rotation(5), 3, 6)

        self.assertTrue(result.passed)
        self.assertEqual(result.draws, 6)

    def test_stabilization_on_shallow_filtration(self):
        """Test a depth-zero system skips the stabilization check"""
        result = stabilization_suite(cyclic_rotation(3, depth=0), 1, 3)

        self.assertTrue(result.passed)
        self.assertEqual(result.draws, 0)


class SuiteScaleTests(SimpleTestCase):
    """Test suites at their full draw counts"""

    def test_summation_by_parts_on_random_systems(self):
        """Test 100 random systems up to 4096 atoms at 1e-12"""
        result = random_summation_by_parts_suite(seed=3, draws=100)

        self.assertEqual(result.draws, 100)
        self.assertTrue(result.passed, result)
        self.assertLessEqual(result.worst, 1e-12)

    def test_pythagoras(self):
        """Test the energy identity on 100 draws over Z_256"""
        result = pythagoras_suite(cyclic_rotation(8), seed=5, draws=100)

        self.assertTrue(result.passed, result)
        self.assertLessEqual(result.worst, 1e-10)

    def test_square_functions(self):
        """Test 1000 square-function samples stay below the cap"""
        result = square_function_suite(seed=9, draws=1000, cap=10.0)

        self.assertEqual(result.draws, 1000)
        self.assertTrue(result.passed, result)

    def test_lacunary_counting(self):
        """Test the dyadic block counts of floor(a^k)"""
        result = lacunary_counting_suite()

        self.assertTrue(result.passed, result)
        self.assertLessEqual(result.worst, 1.0)
        self.assertEqual(result.draws, 4)
