import unittest
import numpy as np

from robustpigou.core import TypeDistribution
from robustpigou.oracle import feasible_sequence_orders, nature_sequence
from robustpigou.structs import MeanClass


class TestNatureSequence(unittest.TestCase):
    def setUp(self) -> None:
        self.types = TypeDistribution.uniform(0.0, 1.0, 60)
        self.mu = 0.3

    def test_feasible_orders(self):
        # Expected
        expected = [1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]

        # Validate
        self.assertEqual(feasible_sequence_orders(self.types), expected)
        self.assertEqual(
            feasible_sequence_orders(self.types, upper=True), expected
        )

    def test_sequence_is_feasible(self):
        for n in feasible_sequence_orders(self.types):
            # Test
            m = nature_sequence(self.types, self.mu, n)

            # Validate
            self.assertEqual(m.violations(self.types.weights, self.mu), [])
            self.assertEqual(m.mean_class, MeanClass.NONINCREASING)

    def test_value_falls_to_minimum(self):
        q = self.types.grid

        # Test
        values = [
            nature_sequence(self.types, self.mu, n).expected_product(
                self.types.weights, q
            )
            for n in feasible_sequence_orders(self.types)
        ]

        # Validate
        self.assertTrue(np.all(np.diff(values) < 0))
        self.assertAlmostEqual(values[0], self.mu * float(np.mean(q)))
        self.assertAlmostEqual(values[-1], self.mu * q.min())

    def test_upper_mirror_rises_to_maximum(self):
        q = self.types.grid

        # Test
        m = nature_sequence(self.types, self.mu, 60, upper=True)

        # Validate
        self.assertEqual(m.mean_class, MeanClass.NONDECREASING)
        self.assertEqual(m.violations(self.types.weights, self.mu), [])
        self.assertAlmostEqual(
            m.expected_product(self.types.weights, q), self.mu * q.max()
        )

    def test_random_schedules_converge(self):
        rng = np.random.default_rng(4)
        orders = feasible_sequence_orders(self.types)
        sequence = [nature_sequence(self.types, self.mu, n) for n in orders]

        for _ in range(100):
            q = np.sort(rng.random(self.types.n))

            # Test
            values = [m.expected_product(self.types.weights, q) for m in sequence]

            # Validate
            self.assertTrue(np.all(np.diff(values) <= 1e-12))
            self.assertAlmostEqual(values[-1], self.mu * q.min(), delta=1e-9)

    def test_infeasible_order(self):
        with self.assertRaises(ValueError):
            nature_sequence(self.types, self.mu, 7)


if __name__ == "__main__":
    unittest.main()
