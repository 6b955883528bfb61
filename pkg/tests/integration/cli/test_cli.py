import io
import os
import shutil
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

from robustpigou.cli import ExitCode, _parser, main, run
from robustpigou.utils import SystemLogger

CONFIGS = os.path.dirname(__file__)


class RobustPigouCliIntegration(unittest.TestCase):
    def setUp(self) -> None:
        self.tmp = tempfile.mkdtemp()
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()

    def tearDown(self) -> None:
        SystemLogger.reset()
        shutil.rmtree(self.tmp)

    def cli(self, *argv: str) -> int:
        args = _parser().parse_args([*argv, "--out", self.tmp])
        with redirect_stdout(self.stdout), redirect_stderr(self.stderr):
            return run(args)

    def config(self, name: str) -> str:
        return os.path.join(CONFIGS, name)

    def test_solve(self):
        # Test
        code = self.cli("solve", "--config", self.config("floor.toml"))

        # Validate
        self.assertEqual(code, ExitCode.OK)
        self.assertIn("Floor", self.stdout.getvalue())
        self.assertEqual(len(os.listdir(self.tmp)), 1)

    def test_eval_round_trip(self):
        self.cli("solve", "--config", self.config("floor.toml"))
        (digest,) = os.listdir(self.tmp)
        schedule = os.path.join(self.tmp, digest, "schedule.csv")

        # Test
        code = self.cli(
            "eval", "--config", self.config("floor.toml"), "--schedule", schedule
        )

        # Validate
        self.assertEqual(code, ExitCode.OK)
        self.assertIn("Evaluated", self.stdout.getvalue())

    def test_missing_config(self):
        # Test
        code = self.cli("solve", "--config", self.config("missing.toml"))

        # Validate
        self.assertEqual(code, ExitCode.USAGE)
        self.assertIn("error", self.stderr.getvalue())

    def test_bad_sweep_parameter(self):
        code = self.cli(
            "sweep",
            "--config",
            self.config("floor.toml"),
            "--param",
            "beta",
            "--range",
            "0",
            "1",
            "3",
        )
        self.assertEqual(code, ExitCode.USAGE)

    def test_fractional_steps(self):
        code = self.cli(
            "sweep",
            "--config",
            self.config("floor.toml"),
            "--param",
            "mu",
            "--range",
            "0",
            "1",
            "2.5",
        )
        self.assertEqual(code, ExitCode.USAGE)

    def test_invalid_scenario(self):
        # Test
        code = self.cli("solve", "--config", self.config("invalid.toml"))

        # Validate
        self.assertEqual(code, ExitCode.INVALID)
        self.assertIn("cost", self.stderr.getvalue())

    def test_sweep_with_invalid_points(self):
        # Test
        code = self.cli(
            "sweep",
            "--config",
            self.config("floor.toml"),
            "--param",
            "cost",
            "--range",
            "-0.5",
            "0.5",
            "3",
        )

        # Validate
        self.assertEqual(code, ExitCode.SWEEP_INVALID)
        self.assertIn("invalid=2", self.stdout.getvalue())

    def test_sweep(self):
        code = self.cli(
            "sweep",
            "--config",
            self.config("floor.toml"),
            "--param",
            "mu",
            "--range",
            "0",
            "0.4",
            "5",
        )
        self.assertEqual(code, ExitCode.OK)

    def test_oracle(self):
        # Test
        code = self.cli("oracle", "--config", self.config("floor.toml"))

        # Validate
        self.assertEqual(code, ExitCode.OK)
        self.assertIn("oracle=pass", self.stdout.getvalue())

    def test_oracle_failure(self):
        code = self.cli(
            "oracle",
            "--config",
            self.config("floor.toml"),
            "--corrupt-guarantee",
            "1.0",
        )
        self.assertEqual(code, ExitCode.ORACLE_FAILED)

    def test_oracle_too_large(self):
        code = self.cli(
            "oracle", "--config", self.config("floor.toml"), "--types", "8"
        )
        self.assertEqual(code, ExitCode.TOO_LARGE)

    def test_oracle_unsupported(self):
        code = self.cli("oracle", "--config", self.config("abatement.toml"))
        self.assertEqual(code, ExitCode.INVALID)

    def test_main_exit_code(self):
        # Test
        with redirect_stdout(self.stdout), redirect_stderr(self.stderr):
            with self.assertRaises(SystemExit) as ctx:
                main(
                    [
                        "solve",
                        "--config",
                        self.config("invalid.toml"),
                        "--out",
                        self.tmp,
                    ]
                )

        # Validate
        self.assertEqual(ctx.exception.code, int(ExitCode.INVALID))

    def test_usage_error(self):
        with redirect_stderr(self.stderr):
            with self.assertRaises(SystemExit) as ctx:
                main(["solve"])
        self.assertEqual(ctx.exception.code, 2)


if __name__ == "__main__":
    unittest.main()
