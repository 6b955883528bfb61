import os
import time
import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from typing import List, Optional, Tuple, Union

from robustpigou import __version__
from robustpigou.config import Application, Config, Mode
from robustpigou.errors import (
    ConfigError,
    RobustPigouError,
    ScenarioInvalid,
    Unsupported,
)
from robustpigou.core import Scenario, ScenarioFactory, Sign, Violation, validate
from robustpigou.mechanism import make_schedule, transfers_from_allocation
from robustpigou.worstcase import nature_best_response, worst_case_welfare
from robustpigou.solvers import solve
from robustpigou.oracle import Quantization, certify
from robustpigou.applications import (
    AbatementCase,
    ScreeningCase,
    lottery,
    robust_vaccine_policy,
    solve_abatement_floor,
    solve_screening,
)
from robustpigou.structs import MONO_TOL, Policy, RunReport
from robustpigou.utils import (
    SystemLogger,
    config_hash,
    nature_frame,
    read_schedule,
    schedule_frame,
    write_frame,
    write_json,
)

Inputs = Union[Scenario, AbatementCase, ScreeningCase]


def parse_inputs(application: Application, data: dict) -> Inputs:
    """
    Build the model object of an application from its configuration tables.

    Raises:
        ConfigError: If keys are missing or mistyped.
    """
    if application is Application.ABATEMENT:
        return AbatementCase.from_dict(data)
    if application is Application.SCREENING:
        return ScreeningCase.from_dict(data)
    if application is Application.VACCINES and "utility" not in data:
        data = {**data, "utility": {"family": "linear_unit_demand"}}
    return ScenarioFactory.from_dict(data)


def input_violations(inputs: Inputs) -> List[Violation]:
    if isinstance(inputs, Scenario):
        return validate(inputs)
    return inputs.violations()


def solve_inputs(application: Application, inputs: Inputs) -> Policy:
    if application is Application.ABATEMENT:
        return solve_abatement_floor(
            inputs.cost, inputs.types, inputs.mu, inputs.q_max
        )
    if application is Application.SCREENING:
        return solve_screening(inputs)
    if application is Application.VACCINES:
        return robust_vaccine_policy(inputs)
    return solve(inputs)


def summary(report: RunReport) -> str:
    """One-line description of a run for stdout."""
    parts = [report.command]
    if report.policy is not None:
        parts.append(str(report.policy.get("kind")))
        if report.policy.get("parameter") is not None:
            parts.append(f"parameter={report.policy['parameter']:.12g}")
        parts.append(f"guarantee={report.policy['guarantee']:.12g}")
    if report.oracle is not None:
        verdict = "pass" if report.oracle["passed"] else "fail"
        parts.append(
            f"oracle={verdict} bruteforce={report.oracle['best_value']:.12g} "
            f"gap={report.oracle['gap']:.12g}"
        )
    if report.sweep is not None:
        parts.append(
            f"rows={report.sweep['steps']} invalid={report.sweep['invalid']}"
        )
    parts.append(f"wall={report.wall_time:.3f}s")
    if report.files:
        parts.append(f"out={os.path.dirname(next(iter(report.files.values())))}")
    return " ".join(parts)


class EngineBuilder:
    """
    Assembles an `Engine` from a configuration file.

    Args:
        config_path (str): Path to the TOML configuration.
        mode (Mode): Subcommand being run.
        output_root (Optional[str]): Overrides the configured output root.

    Methods:
        create_logger(): Configures the process-wide logger.
        create_inputs(): Parses the application's model tables.
        build(): Returns the assembled engine.
    """

    def __init__(
        self,
        config_path: str,
        mode: Mode,
        output_root: Optional[str] = None,
    ):
        self.mode = mode
        self.config = self._load_config(config_path)
        self.output_root = output_root or self.config.output_path
        self.inputs = None

    def _load_config(self, config_path: str) -> Config:
        return Config.from_toml(config_path)

    def create_logger(self):
        """
        Create the system logger from the `[general]` settings.

        Returns:
            EngineBuilder: Returns the current instance for method chaining.
        """
        SystemLogger.reset()
        SystemLogger(
            "robustpigou",
            self.config.log_output,
            self.output_root,
            self.config.log_level,
        )
        return self

    def create_inputs(self, check: bool = True):
        """
        Parse the model tables and, unless `check` is False, validate them.

        Returns:
            EngineBuilder: Returns the current instance for method chaining.

        Raises:
            ConfigError: If the tables cannot be parsed.
            ScenarioInvalid: If the parsed inputs break an invariant.
        """
        self.inputs = parse_inputs(self.config.application, self.config.model)
        if check:
            violations = input_violations(self.inputs)
            if violations:
                raise ScenarioInvalid(violations)
        return self

    def build(self):
        """
        Returns:
            Engine: The assembled engine.
        """
        return Engine(
            mode=self.mode,
            config=self.config,
            inputs=self.inputs,
            output_root=self.output_root,
        )


class Engine:
    """
    Runs one subcommand and writes its artefacts under `<output_root>/<hash>/`.

    The hash covers the model tables, the subcommand and every flag that
    changes results, so reruns land in the same directory with identical
    bytes.

    Args:
        mode (Mode): Subcommand being run.
        config (Config): Loaded configuration.
        inputs (Inputs): Parsed model object.
        output_root (str): Root directory for run outputs.
    """

    def __init__(
        self,
        mode: Mode,
        config: Config,
        inputs: Inputs,
        output_root: str,
    ):
        self.mode = mode
        self.config = config
        self.inputs = inputs
        self.output_root = output_root
        self.logger = SystemLogger.get_logger()

    @property
    def application(self) -> Application:
        return self.config.application

    def _hash(self, flags: dict) -> str:
        return config_hash(
            {
                "command": self.mode.value,
                "model": self.config.model,
                "flags": flags,
            }
        )

    def _report(self, digest: str, **fields) -> RunReport:
        return RunReport(
            command=self.mode.value.lower(),
            config_hash=digest,
            version=__version__,
            scenario=self.inputs.to_dict(),
            **fields,
        )

    def _finish(self, report: RunReport, directory: str, start: float) -> RunReport:
        report.files["report"] = os.path.join(directory, "report.json")
        write_json(report.to_dict(), report.files["report"])
        report.wall_time = time.perf_counter() - start
        self.logger.info(
            f"{report.command} finished in {report.wall_time:.3f}s, outputs in {directory}"
        )
        return report

    def _require_scenario(self) -> Scenario:
        if not isinstance(self.inputs, Scenario):
            raise Unsupported(
                f"'{self.mode.value.lower()}' is not available for the {self.application.value} application."
            )
        return self.inputs

    def _schedule_outputs(
        self,
        policy: Policy,
        directory: str,
        u0: float,
    ) -> dict:
        files = {}
        if isinstance(self.inputs, Scenario):
            mechanism = transfers_from_allocation(
                policy.schedule, self.inputs, u0
            )
            m = nature_best_response(policy.schedule, self.inputs)
            files["schedule"] = write_frame(
                schedule_frame(mechanism, self.inputs.types),
                os.path.join(directory, "schedule.csv"),
            )
            files["nature"] = write_frame(
                nature_frame(m, self.inputs.types),
                os.path.join(directory, "nature.csv"),
            )
        elif isinstance(self.inputs, ScreeningCase):
            mech = lottery(self.inputs.capacity, self.inputs.types)
            frame = pd.DataFrame(
                {
                    "theta": self.inputs.types.grid,
                    "weight": self.inputs.types.weights,
                    "q": mech.q,
                    "t": mech.t,
                    "U": mech.utilities(self.inputs.types),
                }
            )
            files["schedule"] = write_frame(
                frame, os.path.join(directory, "schedule.csv")
            )
        else:
            frame = pd.DataFrame(
                {
                    "theta": self.inputs.types.grid,
                    "weight": self.inputs.types.weights,
                    "q": policy.schedule.values,
                }
            )
            files["schedule"] = write_frame(
                frame, os.path.join(directory, "schedule.csv")
            )
        return files

    def solve(self, u0: float = 0.0) -> RunReport:
        """
        Solve the configured model and write report.json, schedule.csv and nature.csv.

        Args:
            u0 (float): Utility pinned for the lowest type in the emitted transfers.

        Returns:
            RunReport: The run's report.
        """
        start = time.perf_counter()
        digest = self._hash({"u0": u0})
        directory = os.path.join(self.output_root, digest)
        self.logger.info(
            f"solve application={self.application.value} hash={digest}"
        )

        policy = solve_inputs(self.application, self.inputs)
        files = self._schedule_outputs(policy, directory, u0)
        report = self._report(
            digest, policy=policy.to_dict(), u0=u0, files=files
        )
        return self._finish(report, directory, start)

    def _sweep_point(self, param: str, value: float) -> dict:
        row = {
            "value": value,
            "valid": False,
            "kind": None,
            "parameter": None,
            "guarantee": None,
        }
        try:
            inputs = parse_inputs(
                self.application, self.config.with_value(param, value)
            )
            violations = input_violations(inputs)
            if violations:
                self.logger.warning(
                    f"sweep {param}={value:.12g} invalid: "
                    + "; ".join(str(v) for v in violations)
                )
                return row
            policy = solve_inputs(self.application, inputs)
        except RobustPigouError as e:
            self.logger.warning(f"sweep {param}={value:.12g} failed: {e}")
            return row

        row.update(
            valid=True,
            kind=policy.kind.value,
            parameter=policy.parameter,
            guarantee=policy.guarantee,
        )
        return row

    def _guarantee_direction(self) -> int:
        if isinstance(self.inputs, Scenario) and self.inputs.sign is Sign.NEGATIVE:
            return -1
        return 1

    def sweep(
        self,
        param: str,
        lo: float,
        hi: float,
        steps: int,
    ) -> Tuple[RunReport, int]:
        """
        Comparative statics over one parameter, written to sweep.csv.

        Points where the parameter breaks the model's invariants are kept as
        rows with `valid` False. When sweeping `mu` the `monotone_ok` column
        checks that the guarantee moves in the direction of the externality.

        Args:
            param (str): Name of the swept key.
            lo (float): First value.
            hi (float): Last value.
            steps (int): Number of evenly spaced values, at least 2.

        Returns:
            Tuple[RunReport, int]: The report and the number of invalid rows.

        Raises:
            ConfigError: If `steps` < 2 or `param` cannot be swept.
        """
        if steps < 2:
            raise ConfigError("A sweep needs at least 2 steps.")
        self.config.with_value(param, lo)  # rejects unknown parameters

        start = time.perf_counter()
        digest = self._hash({"param": param, "range": [lo, hi, steps]})
        directory = os.path.join(self.output_root, digest)
        self.logger.info(
            f"sweep {param} over [{lo}, {hi}] in {steps} steps hash={digest}"
        )

        values = np.linspace(lo, hi, steps)
        rows = Parallel(n_jobs=self.config.n_jobs, prefer="threads")(
            delayed(self._sweep_point)(param, float(v)) for v in values
        )

        direction = self._guarantee_direction()
        previous = None
        for row in rows:
            row["monotone_ok"] = None
            if param != "mu" or not row["valid"]:
                continue
            if previous is None:
                row["monotone_ok"] = True
            else:
                row["monotone_ok"] = bool(
                    direction * (row["guarantee"] - previous) >= -MONO_TOL
                )
            previous = row["guarantee"]

        invalid = sum(not row["valid"] for row in rows)
        frame = pd.DataFrame(
            rows,
            columns=[
                "value",
                "valid",
                "kind",
                "parameter",
                "guarantee",
                "monotone_ok",
            ],
        )
        files = {
            "sweep": write_frame(frame, os.path.join(directory, "sweep.csv"))
        }
        report = self._report(
            digest,
            files=files,
            sweep={
                "param": param,
                "range": [lo, hi],
                "steps": steps,
                "invalid": invalid,
            },
        )
        return self._finish(report, directory, start), invalid

    def oracle(
        self,
        n_types: int,
        n_levels: int,
        corrupt: float = 0.0,
    ) -> Tuple[RunReport, bool]:
        """
        Certify the solver against the brute-force minimax value.

        The type grid is re-discretized to `n_types` points before both the
        solver and the enumeration run. `corrupt` is added to the solver's
        guarantee before comparison.

        Returns:
            Tuple[RunReport, bool]: The report and whether the check passed.

        Raises:
            TooLarge: If the enumeration exceeds its bounds.
            Unsupported: For the abatement and screening applications.
            ConfigError: If the grid cannot be re-discretized.
        """
        scenario = self._require_scenario()
        quantization = Quantization(n_types=n_types, n_levels=n_levels)

        start = time.perf_counter()
        digest = self._hash(
            {"types": n_types, "levels": n_levels, "corrupt": corrupt}
        )
        directory = os.path.join(self.output_root, digest)
        try:
            scenario = scenario.replace(
                types=scenario.types.with_size(n_types)
            )
        except ValueError as e:
            raise ConfigError(str(e)) from e
        self.logger.info(
            f"oracle types={n_types} levels={n_levels} schedules={quantization.size} hash={digest}"
        )

        policy = solve_inputs(self.application, scenario)
        verdict = certify(
            scenario,
            quantization,
            policy.guarantee + corrupt,
            n_jobs=self.config.n_jobs,
        )
        self.inputs = scenario
        files = self._schedule_outputs(policy, directory, 0.0)
        report = self._report(
            digest,
            policy=policy.to_dict(),
            files=files,
            oracle=verdict.to_dict(),
        )
        return self._finish(report, directory, start), verdict.passed

    def evaluate(self, schedule_path: str, u0: float = 0.0) -> RunReport:
        """
        Worst-case welfare of a user-supplied schedule.

        Args:
            schedule_path (str): CSV with a `q` column, one row per grid point.
            u0 (float): Utility pinned for the lowest type in the emitted transfers.

        Raises:
            ConfigError: If the file cannot be read.
            NonMonotone, OutOfRange: If the schedule is not implementable.
            ValueError: If its length does not match the grid.
        """
        scenario = self._require_scenario()
        values = read_schedule(schedule_path)
        schedule = make_schedule(values, scenario)

        start = time.perf_counter()
        digest = self._hash({"schedule": schedule.to_list(), "u0": u0})
        directory = os.path.join(self.output_root, digest)
        self.logger.info(f"eval {schedule_path} hash={digest}")

        guarantee = worst_case_welfare(schedule, scenario)
        mechanism = transfers_from_allocation(schedule, scenario, u0)
        m = nature_best_response(schedule, scenario)
        files = {
            "schedule": write_frame(
                schedule_frame(mechanism, scenario.types),
                os.path.join(directory, "schedule.csv"),
            ),
            "nature": write_frame(
                nature_frame(m, scenario.types),
                os.path.join(directory, "nature.csv"),
            ),
        }
        report = self._report(
            digest,
            policy={"kind": "Evaluated", "parameter": None, "guarantee": guarantee},
            u0=u0,
            files=files,
        )
        return self._finish(report, directory, start)
