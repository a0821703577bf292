"""
Tests for seeded random draws
"""
import numpy as np
from django.test import SimpleTestCase

from core.exceptions import InvalidInputError
from core.models import Partition
from experiments.models import STUDENT_T
from experiments.sampling import (
    random_backward_filtration,
    random_coarsening,
    random_system,
    random_values,
    trial_rng,
)


class SamplingTests(SimpleTestCase):
    """Test random draws"""

    def test_trial_rng_is_reproducible(self):
        """Test the same seed and index give the same stream"""
        first = trial_rng(9, 3).standard_normal(5)
        again = trial_rng(9, 3).standard_normal(5)
        other = trial_rng(9, 4).standard_normal(5)

        np.testing.assert_array_equal(first, again)
        self.assertFalse(np.array_equal(first, other))

    def test_distributions(self):
        """Test normal and Student t draws and unknown names"""
        rng = trial_rng(0, 0)

        self.assertEqual(random_values(rng, 7).shape, (7,))
        self.assertEqual(random_values(rng, 7, STUDENT_T).shape, (7,))
        with self.assertRaises(InvalidInputError):
            random_values(rng, 7, 'cauchy')

    def test_random_coarsening(self):
        """Test pairs of blocks are merged"""
        coarse = random_coarsening(trial_rng(1, 0), Partition.discrete(7))

        self.assertEqual(coarse.block_count, 4)
        self.assertTrue(coarse.coarsens(Partition.discrete(7)))

    def test_random_backward_filtration(self):
        """Test a random filtration halves the block count per level"""
        filtration = random_backward_filtration(trial_rng(2, 0), 16, 5)

        self.assertEqual(filtration.depth, 5)
        self.assertEqual(
            [level.block_count for level in filtration.levels],
            [16, 8, 4, 2, 1, 1],
        )

    def test_random_system(self):
        """Test random systems are certified and within the atom budget"""
        for index in range(20):
            with self.subTest(index=index):
                system = random_system(trial_rng(3, index), max_exponent=6)
                self.assertLessEqual(system.atom_count, 2 ** 6)
                self.assertTrue(system.commutativity_checked)
