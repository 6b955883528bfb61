import os
import copy
import toml
from enum import Enum

from robustpigou.errors import ConfigError
from robustpigou.core.scenario import lookup_enum

OUTPUT_ENV_VAR = "ROBUST_PIGOU_OUT"


class Mode(Enum):
    SOLVE = "SOLVE"
    SWEEP = "SWEEP"
    ORACLE = "ORACLE"
    EVAL = "EVAL"


class Application(Enum):
    """
    Which model a configuration describes.

    Values:
        REGULATION: General divisible-good regulation problem.
        VACCINES: Unit-demand good with an externality.
        ABATEMENT: Industry abatement under regulatory uncertainty.
        SCREENING: Allocation of a scarce good through costly waiting.
    """

    REGULATION = "regulation"
    VACCINES = "vaccines"
    ABATEMENT = "abatement"
    SCREENING = "screening"


SWEEPABLE = {
    Application.REGULATION: ("mu", "cost", "xi_bar"),
    Application.VACCINES: ("mu", "cost"),
    Application.ABATEMENT: ("mu",),
    Application.SCREENING: ("mu",),
}


class Config:
    """
    Configuration of one run, loaded from a TOML file.

    The model tables are kept as the raw dictionary and parsed by the factory
    of the selected application; this class only resolves the application and
    the `[general]` run settings.

    Attributes:
        data (dict): The parsed TOML document.
        application (Application): Model selected by `application`.
        general (dict): The `[general]` table.
        log_level (str): Logging level, defaulting to "INFO".
        log_output (str): "file", "terminal" or "both", defaulting to "terminal".
        output_path (str): Output root; `ROBUST_PIGOU_OUT` overrides the file value.
        n_jobs (int): Worker threads for sweeps and enumerations.
    """

    def __init__(self, config_dict: dict):
        """
        Args:
            config_dict (dict): Dictionary representation of the loaded TOML file.

        Raises:
            ConfigError: If `application` or a `[general]` setting is invalid.
        """
        self.data = config_dict
        self.application = lookup_enum(
            Application,
            config_dict.get("application", "regulation"),
            "application",
        )
        self.general = config_dict.get("general", {})
        if not isinstance(self.general, dict):
            raise ConfigError("'general' must be a table.")

        # General settings
        self.log_level = str(self.general.get("log_level", "INFO")).upper()
        self.log_output = self.general.get("log_output", "terminal")
        self.output_path = os.environ.get(
            OUTPUT_ENV_VAR, self.general.get("output_path", "out/")
        )
        self.n_jobs = self.general.get("n_jobs", 1)

        if self.log_output not in ("file", "terminal", "both"):
            raise ConfigError(
                "'log_output' must be one of 'file', 'terminal', 'both'."
            )
        if isinstance(self.n_jobs, bool) or not isinstance(self.n_jobs, int):
            raise ConfigError("'n_jobs' must be an integer.")

    @classmethod
    def from_toml(cls, config_path: str) -> "Config":
        """
        Load the configuration from a TOML file.

        Args:
            config_path (str): File path to the TOML configuration file.

        Returns:
            Config: An instance populated with the TOML data.

        Raises:
            ConfigError: If the file cannot be read or is not valid TOML.
        """
        try:
            with open(config_path, "r") as f:
                config_dict = toml.load(f)
        except (OSError, toml.TomlDecodeError) as e:
            raise ConfigError(f"Cannot load '{config_path}': {e}") from e
        return cls(config_dict)

    @property
    def model(self) -> dict:
        """The configuration without run settings; what the results depend on."""
        return {k: v for k, v in self.data.items() if k != "general"}

    def with_value(self, param: str, value: float) -> dict:
        """
        Copy of the model tables with one numeric parameter replaced.

        Args:
            param (str): One of the sweepable keys of the application.
            value (float): New value.

        Raises:
            ConfigError: If `param` cannot be swept for this application.
        """
        if param not in SWEEPABLE[self.application]:
            allowed = ", ".join(SWEEPABLE[self.application])
            raise ConfigError(
                f"Cannot sweep '{param}' for {self.application.value}; choose one of {allowed}."
            )
        data = copy.deepcopy(self.model)
        data[param] = float(value)
        return data
