"""
Tests for convergence profiles and oscillation probes
"""
import numpy as np
from django.test import SimpleTestCase

from core.exceptions import InvalidInputError
from core.models import (
    INFINITY,
    BackwardFiltration,
    Observable,
    Partition,
)
from core.space import lp_array_norm
from dynamics.catalog import cyclic_rotation, product_torus
from dynamics.models import DynamicalSystem, Transformation
from experiments.profiles import (
    cauchy_profile,
    double_average_profile,
    oscillation_probe,
    oscillation_stats,
    stabilization_index,
)
from experiments.sampling import random_observable, trial_rng
from paraproduct.operators import EM, ME, paraproduct_terms, pi_em


class CauchyProfileTests(SimpleTestCase):
    """Test Cauchy profiles on Z_4"""

    def setUp(self):
        self.system = cyclic_rotation(2)
        self.f = Observable([1.0, 0, 0, 0])
        self.g = Observable([1.0, 2.0, 3.0, 4.0])

    def test_profile(self):
        """Test L^1 norms and increments of Pi^em"""
        report = cauchy_profile(self.f, self.g, self.system, 2.0, 1, 2)

        np.testing.assert_allclose(report.norms, [0.25, 0.375])
        np.testing.assert_allclose(report.increments, [0.25, 0.125])
        self.assertEqual(report.stabilization_index, 2)

    def test_martingale_ergodic_kind(self):
        """Test the profile of Pi^me ends at its last partial sum norm"""
        report = cauchy_profile(self.f, self.g, self.system, 2.0, 1, 2,
                                kind=ME)

        self.assertAlmostEqual(report.norms[-1], 3.75 / 4)

    def test_horizon_must_be_positive(self):
        """Test an empty profile is rejected"""
        with self.assertRaises(InvalidInputError):
            cauchy_profile(self.f, self.g, self.system, 2.0, 1, 0)

    def test_stabilization_index(self):
        """Test the last increment above the tolerance"""
        self.assertEqual(stabilization_index([1.0, 0.5, 0.0, 0.0]), 2)
        self.assertEqual(stabilization_index([0.0, 1e-16]), 0)
        self.assertEqual(stabilization_index([]), 0)

    def test_constant_g_is_stable_from_start(self):
        """Test a constant g gives zero increments"""
        report = cauchy_profile(self.f, Observable.constant(3, 4),
                                self.system, 2.0, 2, 2)

        self.assertEqual(report.stabilization_index, 0)


class OscillationTests(SimpleTestCase):
    """Test oscillation probes"""

    def setUp(self):
        self.system = cyclic_rotation(2)
        self.f = Observable([1.0, 0, 0, 0])
        self.g = Observable([1.0, 2.0, 3.0, 4.0])

    def test_oscillation_report(self):
        """Test the range of Pi_1, Pi_2 at each atom"""
        report = oscillation_probe(self.f, self.g, self.system, 2.0, 1, 2,
                                   0.1)
        stats = report.oscillation

        np.testing.assert_allclose(stats.oscillation, [0.25, 0, 0, 0.25])
        self.assertAlmostEqual(stats.exceptional_weight, 0.5)
        self.assertAlmostEqual(stats.max_oscillation, 0.25)
        self.assertAlmostEqual(stats.mean_oscillation, 0.125)

    def test_probe_from_zero(self):
        """Test n0 = 0 includes the empty sum"""
        report = oscillation_probe(self.f, self.g, self.system, 2.0, 0, 2,
                                   0.1)

        self.assertAlmostEqual(report.oscillation.max_oscillation, 1.25)

    def test_infinite_threshold(self):
        """Test epsilon = infinity has no exceptional set"""
        report = oscillation_probe(self.f, self.g, self.system, 2.0, 1, 2,
                                   INFINITY)

        self.assertEqual(report.oscillation.exceptional_weight, 0.0)

    def test_window_checked(self):
        """Test n0 must lie below the horizon"""
        with self.assertRaises(InvalidInputError):
            oscillation_probe(self.f, self.g, self.system, 2.0, 2, 2, 0.1)

    def test_threshold_checked(self):
        """Test negative and NaN thresholds are rejected"""
        weights = np.full(2, 0.5)
        for epsilon in (-1.0, float('nan')):
            with self.assertRaises(InvalidInputError):
                oscillation_stats(np.zeros((2, 2)), weights, epsilon)


class DoubleAverageProfileTests(SimpleTestCase):
    """Test double-average profiles"""

    def setUp(self):
        self.system = product_torus(2, 1)
        rng = trial_rng(4, 0)
        self.f = random_observable(rng, self.system.atom_count)
        self.g = random_observable(rng, self.system.atom_count)

    def test_profile(self):
        """Test norms, increments and the distance to the limit"""
        report = double_average_profile(
            self.f, self.g, self.system.map, self.system.commuting_map,
            [1, 2, 4, 8],
        )

        self.assertEqual(len(report.norms), 4)
        self.assertEqual(len(report.increments), 3)
        self.assertLess(report.limit_distance, 1e-12)
        self.assertEqual(len(report.oscillation.oscillation), 8)

    def test_single_count(self):
        """Test one averaging time has no increments"""
        report = double_average_profile(
            self.f, self.g, self.system.map, self.system.commuting_map, [3],
        )

        self.assertEqual(report.increments, ())
        self.assertEqual(report.stabilization_index, 0)

    def test_counts_must_increase(self):
        """Test repeated and empty averaging times are rejected"""
        for counts in ([], [2, 2], [4, 1]):
            with self.assertRaises(InvalidInputError):
                double_average_profile(self.f, self.g, self.system.map,
                                       self.system.commuting_map, counts)


class ProfilePropertyTests(SimpleTestCase):
    """Test profile properties on random draws"""

    def setUp(self):
        self.system = cyclic_rotation(5)
        rng = trial_rng(6, 0)
        self.f = random_observable(rng, self.system.atom_count)
        self.g = random_observable(rng, self.system.atom_count)

    def test_increments_are_single_terms(self):
        """Test ||Pi_n - Pi_(n-1)||_r = ||(A f) d_(n-1)||_r"""
        report = cauchy_profile(self.f, self.g, self.system, 1.5, 4 / 3, 5)
        terms = paraproduct_terms(EM, self.f, self.g, self.system, 1.5, 5)

        for increment, term in zip(report.increments, terms):
            self.assertAlmostEqual(
                increment,
                float(lp_array_norm(term, 4 / 3, self.system.space.weights)),
                delta=1e-12,
            )

    def test_exceptional_weight_monotone(self):
        """Test the exceptional weight shrinks as epsilon and n0 grow"""
        weights = [
            [
                oscillation_probe(self.f, self.g, self.system, 2.0, n0, 5,
                                  epsilon).oscillation.exceptional_weight
                for epsilon in (0.0, 0.01, 0.1, 1.0)
            ]
            for n0 in range(5)
        ]

        for row in weights:
            self.assertEqual(row, sorted(row, reverse=True))
        for column in zip(*weights):
            self.assertEqual(list(column), sorted(column, reverse=True))

    def test_constant_levels_stop_the_sequence(self):
        """Test nothing moves once the filtration stops coarsening"""
        z4 = cyclic_rotation(2)
        system = DynamicalSystem(
            space=z4.space,
            map=z4.map,
            filtration=BackwardFiltration(
                z4.filtration.levels + (Partition.trivial(4),) * 2
            ),
            commutativity_checked=True,
        )
        g = Observable([1.0, 2.0, 3.0, 4.0])
        f = random_observable(trial_rng(6, 1), 4)

        report = cauchy_profile(f, g, system, 2.0, 2, 4)
        probe = oscillation_probe(f, g, system, 2.0, 2, 4, 1e-12)

        self.assertEqual(system.filtration.stabilization_depth, 2)
        self.assertLessEqual(report.stabilization_index, 2)
        self.assertEqual(probe.oscillation.exceptional_weight, 0.0)

    def test_identity_maps(self):
        """Test B_N = fg for S = T = identity"""
        identity = Transformation.identity(self.system.atom_count)
        report = double_average_profile(self.f, self.g, identity, identity,
                                        [1, 2, 4])

        self.assertEqual(report.increments, (0.0, 0.0))
        self.assertLess(report.limit_distance, 1e-12)


class RepeatedLevelTests(SimpleTestCase):
    """Test repeated filtration levels on random normal inputs"""

    def setUp(self):
        base = cyclic_rotation(6, 3)
        self.system = DynamicalSystem(
            space=base.space,
            map=base.map,
            filtration=BackwardFiltration(
                base.filtration.levels + (base.filtration.levels[-1],) * 3
            ),
            commutativity_checked=True,
        )
        self.depth = self.system.filtration.stabilization_depth

    def _draws(self, scale=1.0, shift=0.0):
        for draw in range(50):
            rng = trial_rng(31, draw)
            f = random_observable(rng, self.system.atom_count)
            g = random_observable(rng, self.system.atom_count)
            yield f, scale * g + shift

    def test_paraproduct_frozen_past_stabilization(self):
        """Test Pi^em(f, g, n) equals Pi^em(f, g, D) exactly for n >= D"""
        self.assertEqual(self.depth, 3)
        for f, g in self._draws():
            settled = pi_em(f, g, self.system, 2.0, self.depth)
            for n in range(self.depth + 1, 7):
                np.testing.assert_array_equal(
                    pi_em(f, g, self.system, 2.0, n).values, settled.values
                )

    def test_no_exceptional_weight(self):
        """Test the oscillation past D is zero for every epsilon > 0"""
        for f, g in self._draws():
            probe = oscillation_probe(f, g, self.system, 2.0, self.depth, 6,
                                      1e-300)

            self.assertEqual(probe.oscillation.exceptional_weight, 0.0)
            self.assertEqual(probe.oscillation.max_oscillation, 0.0)

    def test_large_inputs_stabilize_at_depth(self):
        """Test the stabilization index for inputs far from O(1)"""
        for f, g in self._draws(scale=1000.0, shift=12345.678):
            report = cauchy_profile(f, g, self.system, 2.0, 2, 6)

            self.assertLessEqual(report.stabilization_index, self.depth)
            self.assertEqual(report.increments[self.depth:], (0.0,) * 3)
