from typing import Optional
from dataclasses import dataclass, field


@dataclass
class RunReport:
    """
    Everything needed to reproduce a CLI run.

    `wall_time` is measured and logged but left out of `to_dict()`, so two runs
    of the same configuration serialize to identical bytes.

    Attributes:
        command (str): Subcommand that produced the report.
        config_hash (str): Content hash of the configuration and flags.
        version (str): Toolkit version.
        scenario (dict): Echo of the parsed inputs.
        policy (Optional[dict]): Kind, parameter, guarantee and solver diagnostics.
        u0 (float): Utility pinned for the lowest type in the emitted mechanism.
        files (dict): Output artefacts keyed by role (schedule, nature, sweep).
        oracle (Optional[dict]): Brute-force verdict, for oracle runs.
        sweep (Optional[dict]): Swept parameter and invalid-row count, for sweeps.
        wall_time (float): Seconds spent, excluded from serialization.
    """

    command: str
    config_hash: str
    version: str
    scenario: dict
    policy: Optional[dict] = None
    u0: float = 0.0
    files: dict = field(default_factory=dict)
    oracle: Optional[dict] = None
    sweep: Optional[dict] = None
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        data = {
            "command": self.command,
            "config_hash": self.config_hash,
            "version": self.version,
            "scenario": self.scenario,
            "policy": self.policy,
            "u0": self.u0,
            "files": self.files,
        }
        if self.oracle is not None:
            data["oracle"] = self.oracle
        if self.sweep is not None:
            data["sweep"] = self.sweep
        return data
