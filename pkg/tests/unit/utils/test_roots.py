import unittest

from robustpigou.utils import find_root


class TestFindRoot(unittest.TestCase):
    def test_linear(self):
        # Test
        root, iterations = find_root(lambda x: 2.0 * x - 1.0, 0.0, 1.0)

        # Validate
        self.assertAlmostEqual(root, 0.5, places=9)
        self.assertGreaterEqual(iterations, 0)

    def test_tolerance(self):
        # Test
        root, _ = find_root(lambda x: x**2 - 2.0, 0.0, 2.0, xtol=1e-12)

        # Validate
        self.assertAlmostEqual(root, 2.0**0.5, places=11)

    def test_no_sign_change(self):
        with self.assertRaises(ValueError):
            find_root(lambda x: x + 1.0, 0.0, 1.0)


if __name__ == "__main__":
    unittest.main()
