__version__ = "1.0.0"

from .engine import EngineBuilder
from .config import Config

# Public API of the 'engine' module
__all__ = ["__version__", "EngineBuilder", "Config"]
