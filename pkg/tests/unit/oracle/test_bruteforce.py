import unittest
import numpy as np

from robustpigou.core import (
    Benchmark,
    QuadraticUtility,
    Scenario,
    Sign,
    TypeDistribution,
)
from robustpigou.oracle import (
    Quantization,
    certify,
    enumerate_schedules,
    inner_min,
    minimax_bruteforce,
    quantization_gap,
)
from robustpigou.solvers import solve
from robustpigou.structs import AllocationSchedule
from robustpigou.worstcase import worst_case_externality, worst_case_welfare

CELLS = [
    (Sign.POSITIVE, Benchmark.UNKNOWN),
    (Sign.POSITIVE, Benchmark.POSITIVE_CORR),
    (Sign.POSITIVE, Benchmark.NEGATIVE_CORR),
    (Sign.NEGATIVE, Benchmark.UNKNOWN),
    (Sign.NEGATIVE, Benchmark.POSITIVE_CORR),
    (Sign.NEGATIVE, Benchmark.NEGATIVE_CORR),
]


def random_scenario(rng, sign, benchmark, n_types, xi_bar=None):
    low = float(rng.uniform(0.0, 0.5))
    return Scenario(
        utility=QuadraticUtility(),
        types=TypeDistribution.uniform(low, low + 1.0, n_types),
        cost=float(rng.uniform(0.3, 1.2)),
        mu=float(rng.uniform(0.0, 0.5)),
        sign=sign,
        benchmark=benchmark,
        xi_bar=xi_bar,
    )


class TestEnumeration(unittest.TestCase):
    def setUp(self) -> None:
        self.scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.0, 1.0, 3),
            cost=0.5,
            mu=0.2,
        )

    def test_count_and_order(self):
        quantization = Quantization(n_types=3, n_levels=3)

        # Test
        schedules = list(enumerate_schedules(quantization, self.scenario))

        # Validate
        self.assertEqual(len(schedules), quantization.size)
        np.testing.assert_allclose(schedules[0].values, [0.0, 0.0, 0.0])
        np.testing.assert_allclose(schedules[1].values, [0.0, 0.0, 0.5])
        np.testing.assert_allclose(schedules[-1].values, [1.0, 1.0, 1.0])
        for schedule in schedules:
            self.assertTrue(np.all(np.diff(schedule.values) >= 0))

    def test_misaligned_grid(self):
        with self.assertRaises(ValueError):
            list(enumerate_schedules(Quantization(4, 3), self.scenario))

    def test_inner_min_matches_closed_form(self):
        rng = np.random.default_rng(2)
        per_cell = -(-10_000 // len(CELLS))
        for sign, benchmark in CELLS:
            for _ in range(per_cell):
                scenario = self.scenario.replace(
                    sign=sign,
                    benchmark=benchmark,
                    mu=float(rng.uniform(0.0, 1.0)),
                )
                schedule = AllocationSchedule(
                    values=np.sort(rng.random(3)), cap=1.0
                )

                # Test
                value = inner_min(schedule, scenario)

                # Validate
                self.assertAlmostEqual(
                    value, worst_case_externality(schedule, scenario)
                )

    def test_zero_mu(self):
        schedule = AllocationSchedule(values=[0.1, 0.2, 0.3], cap=1.0)
        self.assertEqual(inner_min(schedule, self.scenario.replace(mu=0.0)), 0.0)


class TestMinimax(unittest.TestCase):
    def test_bruteforce_value_is_its_schedules_welfare(self):
        scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.0, 1.0, 5),
            cost=0.5,
            mu=0.32,
        )
        quantization = Quantization(n_types=5, n_levels=9)

        # Test
        value, schedule = minimax_bruteforce(scenario, quantization)

        # Validate
        self.assertAlmostEqual(value, worst_case_welfare(schedule, scenario))

    def test_parallel_partitions_agree(self):
        scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.2, 1.2, 6),
            cost=0.6,
            mu=0.25,
            sign=Sign.NEGATIVE,
        )
        quantization = Quantization(n_types=6, n_levels=7)

        # Test
        serial = minimax_bruteforce(scenario, quantization, n_jobs=1)
        threaded = minimax_bruteforce(scenario, quantization, n_jobs=3)

        # Validate
        self.assertEqual(serial[0], threaded[0])
        np.testing.assert_array_equal(serial[1].values, threaded[1].values)

    def test_solver_agrees_with_bruteforce(self):
        rng = np.random.default_rng(2024)
        checked = 0

        for sign, benchmark in CELLS:
            for _ in range(4):
                n_types = int(rng.integers(5, 7))
                quantization = Quantization(
                    n_types=n_types, n_levels=int(rng.integers(7, 9))
                )
                scenario = random_scenario(rng, sign, benchmark, n_types)

                # Test
                policy = solve(scenario)
                report = certify(scenario, quantization, policy.guarantee)

                # Validate
                self.assertTrue(report.passed, msg=f"{sign} {benchmark}")
                self.assertLessEqual(report.best_value, policy.guarantee + 1e-9)
                checked += 1

        self.assertGreaterEqual(checked, 20)

    def test_solver_agrees_with_bruteforce_under_bound(self):
        rng = np.random.default_rng(7)
        for sign, benchmark in CELLS:
            scenario = random_scenario(rng, sign, benchmark, 5)
            scenario = scenario.replace(
                xi_bar=scenario.mu * float(rng.uniform(1.0, 4.0)) + 0.01
            )
            quantization = Quantization(n_types=5, n_levels=8)

            # Test
            policy = solve(scenario)
            report = certify(scenario, quantization, policy.guarantee)

            # Validate
            self.assertTrue(report.passed, msg=f"{sign} {benchmark}")
            self.assertLessEqual(report.best_value, policy.guarantee + 1e-9)

    def test_corrupted_guarantee_fails(self):
        scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.0, 1.0, 6),
            cost=0.5,
            mu=0.32,
        )
        quantization = Quantization(n_types=6, n_levels=7)
        policy = solve(scenario)

        # Test
        gap = quantization_gap(scenario, quantization)
        report = certify(scenario, quantization, policy.guarantee + 2 * gap)

        # Validate
        self.assertFalse(report.passed)
        self.assertFalse(report.to_dict()["passed"])

    def test_gap(self):
        scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.0, 1.0, 6),
            cost=0.5,
            mu=0.25,
        )

        # Test
        gap = quantization_gap(scenario, Quantization(n_types=6, n_levels=5))

        # Validate
        self.assertAlmostEqual(gap, 0.25 * 1.0 + 0.25 * 0.75)


if __name__ == "__main__":
    unittest.main()
