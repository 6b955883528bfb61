import unittest
import numpy as np

from robustpigou.errors import NonMonotone, OutOfRange
from robustpigou.structs import AllocationSchedule


class TestAllocationSchedule(unittest.TestCase):
    def test_construction(self):
        # Test
        schedule = AllocationSchedule(values=[0.0, 0.2, 0.2, 1.0], cap=1.0)

        # Validate
        self.assertEqual(len(schedule), 4)
        self.assertEqual(schedule.to_list(), [0.0, 0.2, 0.2, 1.0])
        self.assertEqual(schedule.cap, 1.0)

    def test_type_constraint(self):
        with self.assertRaisesRegex(TypeError, "'cap' must be of type int or float."):
            AllocationSchedule(values=[0.0], cap="1")

    def test_non_monotone(self):
        with self.assertRaises(NonMonotone) as ctx:
            AllocationSchedule(values=[0.1, 0.05, 0.2], cap=1.0)
        self.assertEqual(ctx.exception.index, 1)

    def test_out_of_range(self):
        with self.assertRaises(OutOfRange) as ctx:
            AllocationSchedule(values=[0.1, 1.5], cap=1.0)
        self.assertEqual(ctx.exception.index, 1)

        with self.assertRaises(OutOfRange) as ctx:
            AllocationSchedule(values=[np.nan, 0.5], cap=1.0)
        self.assertEqual(ctx.exception.index, 0)

    def test_out_of_range_reported_before_monotonicity(self):
        with self.assertRaises(OutOfRange):
            AllocationSchedule(values=[0.5, 0.1, 2.0], cap=1.0)

    def test_tolerance_clipping(self):
        # Test
        schedule = AllocationSchedule(values=[-1e-12, 1.0 + 1e-12], cap=1.0)

        # Validate
        self.assertEqual(schedule.to_list(), [0.0, 1.0])

    def test_read_only(self):
        schedule = AllocationSchedule(values=[0.0, 0.5], cap=1.0)
        with self.assertRaises(ValueError):
            schedule.values[0] = 0.2

    def test_equality(self):
        a = AllocationSchedule(values=[0.0, 0.5], cap=1.0)
        b = AllocationSchedule(values=np.array([0.0, 0.5]), cap=1)
        c = AllocationSchedule(values=[0.0, 0.5], cap=2.0)

        self.assertEqual(a, b)
        self.assertNotEqual(a, c)


if __name__ == "__main__":
    unittest.main()
