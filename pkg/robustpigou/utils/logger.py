import os
import logging
from typing import Union


class SystemLogger:
    """
    A singleton logger for messages sent to a file, the terminal, or both.

    Only one instance exists per process. Library code fetches the underlying
    `logging.Logger` with `SystemLogger.get_logger()`; when no instance was
    configured yet (library use outside the CLI) a terminal logger at WARNING
    level is created on first access.

    Args:
        name (str, optional): Name of the logger. Defaults to "robustpigou".
        output_format (str, optional): "file", "terminal", or "both". Defaults to "terminal".
        output_file_path (str, optional): Directory for the log file. Defaults to "out/".
        level (int | str, optional): Logging level. Defaults to logging.INFO.

    Methods:
        get_logger(): Returns the singleton's `logging.Logger`.
        reset(): Drops the singleton so the next construction reconfigures it.
    """

    _instance = None

    def __new__(
        cls,
        name: str = "robustpigou",
        output_format: str = "terminal",
        output_file_path: str = "out/",
        level: Union[int, str] = logging.INFO,
    ):
        if cls._instance is None:
            instance = super().__new__(cls)
            instance._initialize(
                name,
                output_format,
                output_file_path,
                level,
            )
            cls._instance = instance
        return cls._instance

    def _initialize(
        self,
        name: str,
        output_format: str,
        output_file_path: str,
        level: Union[int, str],
    ):
        """
        Attach file and/or terminal handlers.

        Args:
            name (str): Name of the logger.
            output_format (str): Output format ("file", "terminal", or "both").
            output_file_path (str): Directory for log files.
            level (int | str): Logging level.
        """
        if output_format not in ("file", "terminal", "both"):
            raise ValueError(
                "'output_format' must be one of 'file', 'terminal', 'both'."
            )

        self.logger = logging.getLogger(f"{name}_logger")
        self.logger.setLevel(level)
        self.logger.propagate = False
        self.logger.handlers.clear()

        if output_format in ["file", "both"]:
            os.makedirs(output_file_path, exist_ok=True)
            log_file_name = os.path.join(output_file_path, f"{name}.log")
            file_handler = logging.FileHandler(log_file_name, mode="w")
            file_handler.setFormatter(
                logging.Formatter(
                    "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
                )
            )
            self.logger.addHandler(file_handler)
        if output_format in ["terminal", "both"]:
            stream_handler = logging.StreamHandler()
            stream_handler.setFormatter(
                logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
            )
            self.logger.addHandler(stream_handler)

    @classmethod
    def get_logger(cls) -> logging.Logger:
        """
        Retrieve the singleton's logger, creating a quiet default if needed.

        Returns:
            logging.Logger: The initialized logger instance.
        """
        if cls._instance is None:
            cls(level=logging.WARNING)
        return cls._instance.logger

    @classmethod
    def reset(cls) -> None:
        """
        Close handlers and forget the singleton.
        """
        if cls._instance is not None:
            for handler in list(cls._instance.logger.handlers):
                handler.close()
                cls._instance.logger.removeHandler(handler)
        cls._instance = None
