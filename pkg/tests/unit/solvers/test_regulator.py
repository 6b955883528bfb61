import unittest
import numpy as np

from robustpigou.errors import MissingBound, Unsupported, WrongRegime
from robustpigou.core import (
    Benchmark,
    LinearUnitDemand,
    QuadraticUtility,
    Scenario,
    Sign,
    TypeDistribution,
    laissez_faire,
)
from robustpigou.structs import AllocationSchedule, PolicyKind
from robustpigou.solvers import (
    floor_condition,
    solve,
    solve_ceiling,
    solve_floor,
    solve_price,
    solve_shortfall,
)
from robustpigou.worstcase import worst_case_welfare

CELLS = [
    (Sign.POSITIVE, Benchmark.UNKNOWN),
    (Sign.POSITIVE, Benchmark.POSITIVE_CORR),
    (Sign.POSITIVE, Benchmark.NEGATIVE_CORR),
    (Sign.NEGATIVE, Benchmark.UNKNOWN),
    (Sign.NEGATIVE, Benchmark.POSITIVE_CORR),
    (Sign.NEGATIVE, Benchmark.NEGATIVE_CORR),
]


def random_scenarios(rng, count: int):
    """Random 21-type scenarios for every cell, without and with a support bound."""
    for sign, benchmark in CELLS:
        for bounded in (False, True):
            for _ in range(count):
                yield Scenario(
                    utility=QuadraticUtility(beta=float(rng.uniform(0.8, 1.5))),
                    types=TypeDistribution.uniform(0.0, 1.0, 21),
                    cost=float(rng.uniform(0.3, 0.6)),
                    mu=float(rng.uniform(0.03, 0.2)),
                    cap=float(rng.uniform(0.8, 1.5)),
                    sign=sign,
                    benchmark=benchmark,
                    xi_bar=float(rng.uniform(0.5, 2.0)) if bounded else None,
                )


class TestSaddle(unittest.TestCase):
    def test_no_schedule_beats_the_solver(self):
        rng = np.random.default_rng(11)
        for scenario in random_scenarios(rng, 3):
            # Test
            policy = solve(scenario)
            n, cap = scenario.types.n, scenario.cap
            rivals = [laissez_faire(scenario)]
            rivals += [
                AllocationSchedule(values=np.full(n, level), cap=cap)
                for level in np.linspace(0.0, cap, 21)
            ]
            rivals += [
                AllocationSchedule(values=np.sort(rng.uniform(0.0, cap, n)), cap=cap)
                for _ in range(200)
            ]

            # Validate
            self.assertAlmostEqual(
                policy.guarantee, worst_case_welfare(policy.schedule, scenario)
            )
            for rival in rivals:
                self.assertLessEqual(
                    worst_case_welfare(rival, scenario), policy.guarantee + 1e-9
                )

    def test_single_point_changes_lower_the_guarantee(self):
        rng = np.random.default_rng(12)
        eps = 1e-2
        for scenario in random_scenarios(rng, 2):
            policy = solve(scenario)
            values, cap = policy.schedule.values, scenario.cap
            best = worst_case_welfare(policy.schedule, scenario)
            checked = 0

            for i in range(scenario.types.n):
                for step in (eps, -eps):
                    # Test
                    trial = values.copy()
                    trial[i] += step
                    if trial[i] < 0.0 or trial[i] > cap:
                        continue
                    if np.any(np.diff(trial) < -1e-12):
                        continue
                    value = worst_case_welfare(
                        AllocationSchedule(values=trial, cap=cap), scenario
                    )
                    checked += 1

                    # Validate
                    self.assertLess(value, best)

            self.assertGreater(checked, 0)


class TestSolveFloor(unittest.TestCase):
    def setUp(self) -> None:
        self.scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.0, 1.0, 1001),
            cost=0.5,
            mu=0.32,
        )

    def test_interior_floor(self):
        # Test
        policy = solve_floor(self.scenario)

        # Validate
        self.assertEqual(policy.kind, PolicyKind.FLOOR)
        self.assertAlmostEqual(policy.parameter, 0.3, delta=1e-3)
        self.assertAlmostEqual(policy.guarantee, 0.052333, delta=1e-3)
        self.assertLessEqual(abs(policy.foc_residual), 1e-8)
        self.assertGreater(policy.iterations, 0)

    def test_schedule_is_max_of_floor_and_laissez_faire(self):
        # Test
        policy = solve_floor(self.scenario)

        # Expected
        lf = laissez_faire(self.scenario).values
        expected = np.maximum(lf, policy.parameter)

        # Validate
        np.testing.assert_allclose(policy.schedule.values, expected)
        self.assertAlmostEqual(
            policy.guarantee,
            worst_case_welfare(policy.schedule, self.scenario),
        )

    def test_floor_beats_nearby_floors(self):
        policy = solve_floor(self.scenario)
        lf = laissez_faire(self.scenario).values

        for shift in (-0.05, -0.01, 0.01, 0.05):
            # Test
            other = AllocationSchedule(
                values=np.maximum(lf, policy.parameter + shift), cap=1.0
            )

            # Validate
            self.assertGreaterEqual(
                policy.guarantee + 1e-12,
                worst_case_welfare(other, self.scenario),
            )

    def test_condition_is_monotone(self):
        lf = laissez_faire(self.scenario).values

        # Test
        values = [
            floor_condition(f, self.scenario, lf)
            for f in np.linspace(0.0, 1.0, 50)
        ]

        # Validate
        self.assertTrue(np.all(np.diff(values) >= -1e-12))

    def test_zero_mu_is_non_binding(self):
        # Test
        policy = solve_floor(self.scenario.replace(mu=0.0))

        # Validate
        self.assertEqual(policy.kind, PolicyKind.FLOOR)
        self.assertEqual(policy.parameter, 0.0)
        self.assertIn("non-binding", policy.notes)
        np.testing.assert_allclose(
            policy.schedule.values, laissez_faire(self.scenario).values
        )

    def test_corner(self):
        # Test
        policy = solve_floor(self.scenario.replace(mu=2.0))

        # Validate
        self.assertEqual(policy.kind, PolicyKind.FLOOR)
        self.assertEqual(policy.parameter, 1.0)
        self.assertIn("corner", policy.notes)
        self.assertIsNone(policy.foc_residual)

    def test_floor_rises_with_mu(self):
        # Test
        floors = [
            solve_floor(self.scenario.replace(mu=mu)).parameter
            for mu in (0.15, 0.2, 0.25, 0.3)
        ]

        # Validate
        self.assertTrue(np.all(np.diff(floors) > 0))

    def test_negative_correlation_uses_floor(self):
        # Test
        scenario = self.scenario.replace(benchmark=Benchmark.NEGATIVE_CORR)

        # Validate
        self.assertEqual(
            solve_floor(scenario).parameter,
            solve_floor(self.scenario).parameter,
        )
        np.testing.assert_array_equal(
            solve_floor(scenario).schedule.values,
            solve_floor(self.scenario).schedule.values,
        )

    def test_wrong_regime(self):
        with self.assertRaises(WrongRegime):
            solve_floor(self.scenario.replace(sign=Sign.NEGATIVE))
        with self.assertRaises(WrongRegime):
            solve_floor(
                self.scenario.replace(benchmark=Benchmark.POSITIVE_CORR)
            )

    def test_unit_demand_unsupported(self):
        with self.assertRaises(Unsupported):
            solve_floor(self.scenario.replace(utility=LinearUnitDemand()))


class TestSolveCeiling(unittest.TestCase):
    def setUp(self) -> None:
        self.scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.0, 1.0, 1001),
            cost=0.5,
            mu=0.02,
            sign=Sign.NEGATIVE,
        )

    def test_interior_ceiling(self):
        # Test
        policy = solve_ceiling(self.scenario)

        # Validate
        self.assertEqual(policy.kind, PolicyKind.CEILING)
        self.assertAlmostEqual(policy.parameter, 0.3, delta=2e-3)
        self.assertLessEqual(abs(policy.foc_residual), 1e-8)
        self.assertLessEqual(policy.schedule.values.max(), policy.parameter)

    def test_ban(self):
        # Test
        policy = solve_ceiling(self.scenario.replace(mu=0.2))

        # Validate
        self.assertEqual(policy.kind, PolicyKind.CEILING)
        self.assertEqual(policy.parameter, 0.0)
        self.assertIn("ban", policy.notes)
        np.testing.assert_allclose(policy.schedule.values, 0.0)

    def test_zero_mu_is_non_binding(self):
        # Test
        policy = solve_ceiling(self.scenario.replace(mu=0.0))

        # Validate
        self.assertEqual(policy.kind, PolicyKind.CEILING)
        self.assertEqual(policy.parameter, 0.5)
        self.assertIn("non-binding", policy.notes)

    def test_wrong_regime(self):
        with self.assertRaises(WrongRegime):
            solve_ceiling(self.scenario.replace(sign=Sign.POSITIVE))


class TestSolvePrice(unittest.TestCase):
    def setUp(self) -> None:
        self.scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.0, 1.0, 5),
            cost=0.5,
            mu=0.2,
            benchmark=Benchmark.POSITIVE_CORR,
        )

    def test_subsidy(self):
        # Test
        policy = solve_price(self.scenario)

        # Validate
        self.assertEqual(policy.kind, PolicyKind.UNIFORM_SUBSIDY)
        self.assertEqual(policy.parameter, 0.2)
        np.testing.assert_allclose(
            policy.schedule.values, [0.0, 0.0, 0.2, 0.45, 0.7]
        )

    def test_tax(self):
        # Test
        policy = solve_price(
            self.scenario.replace(
                sign=Sign.NEGATIVE, benchmark=Benchmark.NEGATIVE_CORR
            )
        )

        # Validate
        self.assertEqual(policy.kind, PolicyKind.UNIFORM_TAX)
        np.testing.assert_allclose(
            policy.schedule.values, [0.0, 0.0, 0.0, 0.05, 0.3]
        )

    def test_wrong_regime(self):
        with self.assertRaises(WrongRegime):
            solve_price(self.scenario.replace(benchmark=Benchmark.UNKNOWN))


class TestSolveShortfall(unittest.TestCase):
    def setUp(self) -> None:
        self.scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.0, 1.0, 5),
            cost=0.5,
            mu=0.32,
            xi_bar=1.6,
        )

    def test_tail_inside_lowest_atom_matches_floor(self):
        # Test
        shortfall = solve_shortfall(self.scenario)
        floor = solve_floor(self.scenario.replace(xi_bar=None))

        # Validate
        self.assertEqual(shortfall.kind, PolicyKind.TAIL_SUBSIDY)
        self.assertIn("ironed", shortfall.notes)
        np.testing.assert_allclose(
            shortfall.schedule.values, [0.275, 0.275, 0.275, 0.275, 0.5]
        )
        np.testing.assert_allclose(
            shortfall.schedule.values, floor.schedule.values
        )

    def test_schedule_is_monotone(self):
        scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.0, 1.0, 201),
            cost=0.5,
            mu=0.1,
            xi_bar=1.0,
        )

        # Test
        policy = solve_shortfall(scenario)

        # Validate
        self.assertTrue(np.all(np.diff(policy.schedule.values) >= -1e-12))
        self.assertEqual(policy.parameter, 1.0)

    def test_harm_mirror(self):
        # Test
        policy = solve_shortfall(self.scenario.replace(sign=Sign.NEGATIVE))

        # Validate
        self.assertEqual(policy.kind, PolicyKind.TAIL_TAX)
        self.assertTrue(np.all(np.diff(policy.schedule.values) >= -1e-12))

    def test_missing_bound(self):
        with self.assertRaises(MissingBound):
            solve_shortfall(self.scenario.replace(xi_bar=None))

    def test_chebyshev_cell(self):
        with self.assertRaises(WrongRegime):
            solve_shortfall(
                self.scenario.replace(benchmark=Benchmark.POSITIVE_CORR)
            )


class TestSolve(unittest.TestCase):
    def setUp(self) -> None:
        self.scenario = Scenario(
            utility=QuadraticUtility(),
            types=TypeDistribution.uniform(0.0, 1.0, 101),
            cost=0.5,
            mu=0.02,
        )

    def test_dispatch_table(self):
        # Expected
        table = {
            (Sign.POSITIVE, Benchmark.UNKNOWN): PolicyKind.FLOOR,
            (Sign.POSITIVE, Benchmark.NEGATIVE_CORR): PolicyKind.FLOOR,
            (Sign.POSITIVE, Benchmark.POSITIVE_CORR): PolicyKind.UNIFORM_SUBSIDY,
            (Sign.NEGATIVE, Benchmark.UNKNOWN): PolicyKind.CEILING,
            (Sign.NEGATIVE, Benchmark.POSITIVE_CORR): PolicyKind.CEILING,
            (Sign.NEGATIVE, Benchmark.NEGATIVE_CORR): PolicyKind.UNIFORM_TAX,
        }

        # Validate
        for (sign, benchmark), kind in table.items():
            scenario = self.scenario.replace(sign=sign, benchmark=benchmark)
            self.assertEqual(solve(scenario).kind, kind)

    def test_bounded_dispatch(self):
        # Test
        scenario = self.scenario.replace(xi_bar=1.0)

        # Validate
        self.assertEqual(solve(scenario).kind, PolicyKind.TAIL_SUBSIDY)
        self.assertEqual(
            solve(scenario.replace(benchmark=Benchmark.POSITIVE_CORR)).kind,
            PolicyKind.UNIFORM_SUBSIDY,
        )

    def test_unit_demand(self):
        with self.assertRaises(Unsupported):
            solve(self.scenario.replace(utility=LinearUnitDemand()))


if __name__ == "__main__":
    unittest.main()
