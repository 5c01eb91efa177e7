"""
Runtime settings for braidrep

Values come from environment variables (a project-root .env file is loaded
by the command-line entry point). Every setting has a default, so the
library works with an empty environment.
"""
import logging
import os
from enum import Enum
from pathlib import Path
from typing import Optional, Union

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


class SettingKey(Enum):
    """Environment variables understood by braidrep"""
    SEED = "BRAIDREP_SEED"
    CLOSURE_CAP = "BRAIDREP_CLOSURE_CAP"
    SCAN_CAP = "BRAIDREP_SCAN_CAP"
    LOG_LEVEL = "BRAIDREP_LOG_LEVEL"


DEFAULTS = {
    SettingKey.SEED: 20240601,
    SettingKey.CLOSURE_CAP: 10_000_000,
    SettingKey.SCAN_CAP: 1_000_000,
    SettingKey.LOG_LEVEL: "WARNING",
}


class SettingsManager:
    """Reads settings from the environment with typed defaults"""

    def __init__(self, env_path: Optional[Path] = None):
        """
        Initialize the settings manager

        Args:
            env_path: Optional .env file to load (existing variables win)
        """
        if env_path is not None and env_path.exists():
            load_dotenv(dotenv_path=env_path, override=False)
            logger.debug(f"Loaded settings from {env_path}")

    def get_setting(self, key: SettingKey, default: Optional[Union[int, str]] = None) -> Union[int, str]:
        """
        Retrieve a setting

        Args:
            key: The setting key
            default: Value used when the variable is unset (falls back to DEFAULTS)

        Returns:
            The setting, converted to int when the default is an int
        """
        fallback = DEFAULTS[key] if default is None else default
        raw = os.getenv(key.value)
        if raw is None or raw.strip() == "":
            return fallback
        if isinstance(fallback, int):
            try:
                return int(raw)
            except ValueError:
                logger.warning(f"Ignoring non-integer {key.value}={raw!r}, using {fallback}")
                return fallback
        return raw.strip()


# Global instance for easy access
_settings_manager = None


def get_settings_manager(env_path: Optional[Path] = None) -> SettingsManager:
    """
    Get the global settings manager instance

    Args:
        env_path: .env file loaded on first call only

    Returns:
        The global SettingsManager instance
    """
    global _settings_manager
    if _settings_manager is None:
        _settings_manager = SettingsManager(env_path)
    return _settings_manager
