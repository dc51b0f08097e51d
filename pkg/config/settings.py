"""
Settings loader: packaged config.yaml merged with an optional override file.
"""

import copy
import os

import yaml
from dotenv import load_dotenv

from config.logging_config import setup_logging
from metrics.errors import ConfigError

load_dotenv()
logger = setup_logging(__name__)

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(__file__), 'config.yaml')


def _read_yaml(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        logger.error("Error reading config file %s: %s", path, str(e))
        raise ConfigError(f"cannot read config file {path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must contain a mapping")
    return data


def _merge(base, override):
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_settings(path=None):
    """Load defaults, then merge the override named by `path` or SKEW_CONFIG."""
    settings = _read_yaml(DEFAULT_CONFIG_PATH)

    override_path = path or os.getenv('SKEW_CONFIG')
    if override_path:
        logger.info("Merging config override from: %s", override_path)
        settings = _merge(settings, _read_yaml(override_path))

    logger.debug("Loaded settings: %s", settings)
    return settings
