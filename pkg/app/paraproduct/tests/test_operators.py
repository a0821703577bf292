"""
Tests for paraproducts and double averages
"""
import numpy as np
from django.test import SimpleTestCase

from core.exceptions import InvalidInputError, NonCommutingMapsError
from core.models import AtomSpace, ForwardFiltration, Observable, Partition
from dynamics.averages import ergodic_average
from dynamics.catalog import cyclic_rotation, product_torus
from dynamics.models import Transformation
from paraproduct.models import ProductObservable, ProductSpace
from paraproduct.operators import (
    EM,
    ME,
    double_average,
    double_average_limit,
    dyadic_top_level,
    mm_paraproduct,
    paraproduct_sequence,
    pi_em,
    pi_me,
    product_term,
    sampled_pi_em,
)


def naive_double_average(f, g, first, second, count):
    total = np.zeros(f.atom_count)
    along_first = np.arange(f.atom_count)
    along_second = np.arange(f.atom_count)
    for _ in range(count):
        total += f.values[along_first] * g.values[along_second]
        along_first = first.image_of[along_first]
        along_second = second.image_of[along_second]
    return total / count


class ParaproductTests(SimpleTestCase):
    """Test the ergodic-martingale and martingale-ergodic paraproducts"""

    def setUp(self):
        self.system = cyclic_rotation(2)
        self.f = Observable([1.0, 0, 0, 0])
        self.g = Observable([1.0, 2.0, 3.0, 4.0])

    def test_pi_em(self):
        """Test Pi^em_2 on Z_4 with a = 2"""
        result = pi_em(self.f, self.g, self.system, 2.0, 2)

        np.testing.assert_allclose(result.values, [1.25, 0, 0, -0.25])

    def test_pi_me(self):
        """Test Pi^me_2 on Z_4 with a = 2"""
        result = pi_me(self.f, self.g, self.system, 2.0, 2)

        np.testing.assert_allclose(result.values,
                                   [-1.625, 0.625, 0.625, 0.875])

    def test_product_term(self):
        """Test (A_4 f)(E_2 g) is the constant 5/8"""
        result = product_term(self.f, self.g, self.system, 2.0, 2)

        np.testing.assert_allclose(result.values, [0.625] * 4)

    def test_first_partial_sum(self):
        """Test Pi^em_1 = f (E_1 g - g)"""
        result = pi_em(self.f, self.g, self.system, 2.0, 1)

        np.testing.assert_allclose(result.values, [1, 0, 0, 0])

    def test_empty_sum(self):
        """Test Pi_0 is zero"""
        for kind_result in (pi_em, pi_me):
            result = kind_result(self.f, self.g, self.system, 2.0, 0)
            np.testing.assert_array_equal(result.values, [0, 0, 0, 0])

    def test_sequence_prefixes(self):
        """Test the sequence lists every partial sum"""
        system = cyclic_rotation(4)
        rng = np.random.default_rng(3)
        f = Observable(rng.standard_normal(16))
        g = Observable(rng.standard_normal(16))

        for kind, single in ((EM, pi_em), (ME, pi_me)):
            sequence = paraproduct_sequence(kind, f, g, system, 1.5, 4)
            self.assertEqual(len(sequence), 4)
            for n, partial in enumerate(sequence, start=1):
                np.testing.assert_array_equal(
                    partial.values, single(f, g, system, 1.5, n).values
                )

    def test_index_beyond_depth(self):
        """Test n larger than the filtration depth is rejected"""
        with self.assertRaises(InvalidInputError):
            pi_em(self.f, self.g, self.system, 2.0, 3)
        with self.assertRaises(InvalidInputError):
            pi_em(self.f, self.g, self.system, 2.0, -1)

    def test_base_must_exceed_one(self):
        """Test a = 1 is rejected"""
        with self.assertRaises(InvalidInputError):
            pi_me(self.f, self.g, self.system, 1.0, 1)

    def test_mismatched_observable(self):
        """Test observables on another space are rejected"""
        with self.assertRaises(InvalidInputError):
            pi_em(Observable([1.0, 0]), self.g, self.system, 2.0, 1)


class SampledParaproductTests(SimpleTestCase):
    """Test the paraproduct sampled along dyadic times"""

    def setUp(self):
        self.system = cyclic_rotation(2)
        self.f = Observable([1.0, 0, 0, 0])
        self.g = Observable([1.0, 2.0, 3.0, 4.0])

    def test_dyadic_top_level(self):
        """Test floor((n - 1) log2 a)"""
        self.assertEqual(dyadic_top_level(2.0, 3), 2)
        self.assertEqual(dyadic_top_level(3.0, 2), 1)
        self.assertEqual(dyadic_top_level(1.5, 1), 0)
        self.assertEqual(dyadic_top_level(2.0, 0), -1)

    def test_base_two_matches_pi_em(self):
        """Test sampling is the identity when a = 2"""
        sampled = sampled_pi_em(self.f, self.g, self.system, 2.0, 2)
        direct = pi_em(self.f, self.g, self.system, 2.0, 2)

        np.testing.assert_allclose(sampled.values, direct.values)

    def test_base_three(self):
        """Test a = 3 reads the martingale at K(0), K(1), K(2)"""
        sampled = sampled_pi_em(self.f, self.g, self.system, 3.0, 2)

        np.testing.assert_allclose(sampled.values, [1.25, 0, 0, -0.25])

    def test_sampling_time_beyond_depth(self):
        """Test K(L + 1) larger than the depth is rejected"""
        with self.assertRaises(InvalidInputError):
            sampled_pi_em(self.f, self.g, self.system, 2.0, 3)

    def test_zero_index(self):
        """Test n = 0 gives zero"""
        result = sampled_pi_em(self.f, self.g, self.system, 2.0, 0)

        np.testing.assert_array_equal(result.values, [0, 0, 0, 0])


class MartingaleMartingaleTests(SimpleTestCase):
    """Test the product-space paraproduct"""

    def setUp(self):
        forward = ForwardFiltration((Partition.trivial(2),
                                     Partition.discrete(2)))
        self.product = ProductSpace(AtomSpace.uniform(2),
                                    AtomSpace.uniform(2), forward, forward)
        self.F = ProductObservable.from_function(lambda x, y: x, (2, 2))
        self.G = ProductObservable.from_function(lambda x, y: y, (2, 2))

    def test_first_term(self):
        """Test E_1(F|U_0)(E_2(G|V_1) - E_2(G|V_0)) for F = x, G = y"""
        result = mm_paraproduct(self.F, self.G, self.product, 1)

        np.testing.assert_allclose(result.values,
                                   [[-0.25, 0.25], [-0.25, 0.25]])

    def test_product_norm(self):
        """Test L^2 norm on the product space"""
        self.assertAlmostEqual(self.product.lp_norm(self.G, 2),
                               np.sqrt(0.5))

    def test_shape_checked(self):
        """Test observables of the wrong shape are rejected"""
        with self.assertRaises(InvalidInputError):
            mm_paraproduct(ProductObservable(np.zeros((3, 2))), self.G,
                           self.product, 1)

    def test_index_checked(self):
        """Test n beyond the common depth is rejected"""
        with self.assertRaises(InvalidInputError):
            mm_paraproduct(self.F, self.G, self.product, 2)


class DoubleAverageTests(SimpleTestCase):
    """Test double ergodic averages"""

    def setUp(self):
        self.system = product_torus(2, 1)
        rng = np.random.default_rng(11)
        self.f = Observable(rng.standard_normal(8))
        self.g = Observable(rng.standard_normal(8))
        self.first = self.system.map
        self.second = self.system.commuting_map

    def test_matches_direct_sum(self):
        """Test B_N against summing the orbit one step at a time"""
        for count in (1, 2, 3, 4, 7, 13):
            with self.subTest(count=count):
                result = double_average(self.f, self.g, self.first,
                                        self.second, count)
                np.testing.assert_allclose(
                    result.values,
                    naive_double_average(self.f, self.g, self.first,
                                         self.second, count),
                    atol=1e-12,
                )

    def test_limit(self):
        """Test the limit is the average over one joint period"""
        limit = double_average_limit(self.f, self.g, self.first,
                                     self.second)
        far = double_average(self.f, self.g, self.first, self.second, 4000)

        np.testing.assert_allclose(far.values, limit.values, atol=1e-12)

    def test_noncommuting_maps(self):
        """Test non-commuting maps report the first bad atom"""
        swap = Transformation([1, 0, 2, 3, 4, 5, 6, 7])

        with self.assertRaises(NonCommutingMapsError):
            double_average(self.f, self.g, self.first, swap, 2)

    def test_count_must_be_positive(self):
        """Test B_0 is rejected"""
        with self.assertRaises(InvalidInputError):
            double_average(self.f, self.g, self.first, self.second, 0)


class BilinearityTests(SimpleTestCase):
    """Test every bilinear operator is linear in each argument"""

    def setUp(self):
        rng = np.random.default_rng(23)
        self.rng = rng
        self.alpha, self.beta = 1.75, -0.5
        self.system = product_torus(4, 2)

    def _pair(self, shape):
        return (self.rng.standard_normal(shape),
                self.rng.standard_normal(shape))

    def _assert_bilinear(self, operator, make, shape):
        x1, x2 = self._pair(shape)
        y1, y2 = self._pair(shape)
        a, b = self.alpha, self.beta

        left = operator(make(a * x1 + b * x2), make(y1)).values
        right = (a * operator(make(x1), make(y1)).values
                 + b * operator(make(x2), make(y1)).values)
        np.testing.assert_allclose(left, right, rtol=1e-10, atol=1e-10)

        left = operator(make(x1), make(a * y1 + b * y2)).values
        right = (a * operator(make(x1), make(y1)).values
                 + b * operator(make(x1), make(y2)).values)
        np.testing.assert_allclose(left, right, rtol=1e-10, atol=1e-10)

    def test_pi_em(self):
        """Test Pi^em is bilinear"""
        self._assert_bilinear(
            lambda f, g: pi_em(f, g, self.system, 1.5, 3),
            Observable, self.system.atom_count,
        )

    def test_pi_me(self):
        """Test Pi^me is bilinear"""
        self._assert_bilinear(
            lambda f, g: pi_me(f, g, self.system, 3.0, 3),
            Observable, self.system.atom_count,
        )

    def test_mm_paraproduct(self):
        """Test Pi^mm is bilinear"""
        product = ProductSpace(AtomSpace.uniform(8), AtomSpace.uniform(16),
                               ForwardFiltration.dyadic(3),
                               ForwardFiltration.dyadic(4))
        self._assert_bilinear(
            lambda F, G: mm_paraproduct(F, G, product, 3),
            ProductObservable, product.shape,
        )

    def test_double_average(self):
        """Test B_N is bilinear"""
        self._assert_bilinear(
            lambda f, g: double_average(f, g, self.system.map,
                                        self.system.commuting_map, 37),
            Observable, self.system.atom_count,
        )


class MartingaleMartingaleEdgeTests(SimpleTestCase):
    """Test Pi^mm on constant inputs over dyadic filtrations"""

    def setUp(self):
        self.product = ProductSpace(AtomSpace.uniform(8),
                                    AtomSpace.uniform(8),
                                    ForwardFiltration.dyadic(3),
                                    ForwardFiltration.dyadic(3))
        rng = np.random.default_rng(29)
        self.F = ProductObservable(rng.standard_normal((8, 8)))
        self.G = ProductObservable(rng.standard_normal((8, 8)))

    def test_constant_first_argument_telescopes(self):
        """Test Pi^mm(1, G) = E_2(G|V_n) - E_2(G|V_0)"""
        one = ProductObservable(np.ones((8, 8)))

        for n in range(4):
            with self.subTest(n=n):
                result = mm_paraproduct(one, self.G, self.product, n)
                expected = (self.product.second_expectation(self.G, n)
                            - self.product.second_expectation(self.G, 0))

                np.testing.assert_allclose(result.values, expected,
                                           atol=1e-12)

    def test_constant_second_argument_vanishes(self):
        """Test Pi^mm(F, c) = 0"""
        constant = ProductObservable(np.full((8, 8), -3.25))

        for n in range(4):
            with self.subTest(n=n):
                result = mm_paraproduct(self.F, constant, self.product, n)

                np.testing.assert_allclose(result.values, 0.0, atol=1e-12)


class DoubleAverageScaleTests(SimpleTestCase):
    """Test double averages on the 4 x 4 torus"""

    def setUp(self):
        self.system = product_torus(4, 4)
        rng = np.random.default_rng(31)
        self.f = Observable(rng.standard_normal(self.system.atom_count))
        self.g = Observable(rng.standard_normal(self.system.atom_count))

    def test_equal_maps_reduce_to_single_average(self):
        """Test B_N(f, g) = A_N(fg) when S = T"""
        same = self.system.map

        for count in (1, 3, 16, 100):
            with self.subTest(count=count):
                np.testing.assert_allclose(
                    double_average(self.f, self.g, same, same, count).values,
                    ergodic_average(self.f * self.g, same, count).values,
                    atol=1e-12,
                )

    def test_powers_of_two(self):
        """Test B_N for N = 2^0..2^10 against the direct orbit sum"""
        first, second = self.system.map, self.system.commuting_map

        for j in range(11):
            with self.subTest(N=2 ** j):
                np.testing.assert_allclose(
                    double_average(self.f, self.g, first, second,
                                   2 ** j).values,
                    naive_double_average(self.f, self.g, first, second,
                                         2 ** j),
                    atol=1e-12,
                )
