import unittest
import numpy as np

from robustpigou.errors import TooLarge
from robustpigou.oracle import Quantization, MAX_SCHEDULES


class TestQuantization(unittest.TestCase):
    def test_size(self):
        # Test
        quantization = Quantization(n_types=6, n_levels=7)

        # Validate
        self.assertEqual(quantization.size, 924)
        self.assertEqual(
            quantization.to_dict(), {"n_types": 6, "n_levels": 7, "size": 924}
        )

    def test_levels(self):
        # Test
        quantization = Quantization(n_types=3, n_levels=5)

        # Validate
        np.testing.assert_allclose(
            quantization.levels(2.0), [0.0, 0.5, 1.0, 1.5, 2.0]
        )
        self.assertEqual(quantization.spacing(2.0), 0.5)
        self.assertEqual(Quantization(n_types=3, n_levels=1).spacing(2.0), 2.0)

    def test_too_many_types(self):
        with self.assertRaises(TooLarge):
            Quantization(n_types=8, n_levels=5)

    def test_too_many_levels(self):
        with self.assertRaises(TooLarge):
            Quantization(n_types=2, n_levels=10)

    def test_largest_allowed(self):
        # Test
        quantization = Quantization(n_types=7, n_levels=9)

        # Validate
        self.assertLess(quantization.size, MAX_SCHEDULES)

    def test_type_errors(self):
        with self.assertRaises(TypeError):
            Quantization(n_types=6.0, n_levels=7)
        with self.assertRaises(TypeError):
            Quantization(n_types=6, n_levels="7")

    def test_value_errors(self):
        with self.assertRaises(ValueError):
            Quantization(n_types=0, n_levels=7)
        with self.assertRaises(ValueError):
            Quantization(n_types=6, n_levels=0)


if __name__ == "__main__":
    unittest.main()
