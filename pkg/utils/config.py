import copy
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from .exceptions import ConfigurationError

DEFAULT_TOL = 1e-9
DEFAULT_MAX_DIM = 16
DEFAULT_MAX_DD_DIM = 8
DEFAULT_MAX_GENERATORS = 64
DEFAULT_NUCLEARITY_PRODUCT_DIM = 36
DEFAULT_MAX_CORNER_SLIDES = 8
DEFAULT_PSD_SAMPLES = 1000
DEFAULT_RETRACT_SAMPLES = 200
DEFAULT_SEED = 20240601

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "toolkit_config.yaml"


def load_config(config_path: str) -> Dict[str, Any]:
    """Load configuration from YAML file."""
    try:
        with open(config_path, 'r') as f:
            return yaml.safe_load(f) or {}
    except Exception as e:
        raise ConfigurationError(f"Failed to load config: {str(e)}") from e


def get_env_var(name: str, default: Any = None) -> Any:
    """Get environment variable with optional default."""
    return os.environ.get(name, default)


def validate_config(config: Dict[str, Any], required_fields: list) -> bool:
    """Validate configuration contains required fields."""
    missing = [field for field in required_fields if field not in config]
    if missing:
        raise ConfigurationError("Missing required config fields", missing_fields=missing)
    return True


def get_toolkit_config_defaults() -> Dict[str, Any]:
    """Get default configuration for the toolkit."""
    return {
        'numerics': {
            'float_tol': DEFAULT_TOL,
        },
        'caps': {
            'max_dim': DEFAULT_MAX_DIM,
            'max_dd_dim': DEFAULT_MAX_DD_DIM,
            'max_generators': DEFAULT_MAX_GENERATORS,
            'nuclearity_product_dim': DEFAULT_NUCLEARITY_PRODUCT_DIM,
            'max_corner_slides': DEFAULT_MAX_CORNER_SLIDES,
        },
        'sampling': {
            'psd_samples': DEFAULT_PSD_SAMPLES,
            'retract_samples': DEFAULT_RETRACT_SAMPLES,
            'seed': DEFAULT_SEED,
        },
        'repro': {
            'omega_instances': 1000,
            'polygon_pairs': 10,
            'easy_direction_cones': 20,
            'norm_instances': 100,
            'monotonicity_instances': 50,
        },
        'logging': {
            'level': 'INFO',
            'file': None,
            'json': False,
        },
        'output': {
            'report_dir': 'reports',
        },
    }


def validate_toolkit_config(config: Dict[str, Any]) -> bool:
    """Validate toolkit-specific configuration."""
    validate_config(config, ['numerics', 'caps', 'sampling', 'logging'])

    tol = config['numerics'].get('float_tol')
    if not isinstance(tol, (int, float)) or not 0 < tol < 1:
        raise ConfigurationError(f"numerics.float_tol must lie in (0, 1), got {tol}")

    for key, value in config['caps'].items():
        if not isinstance(value, int) or value <= 0:
            raise ConfigurationError(f"caps.{key} must be a positive integer, got {value}")

    if config['sampling'].get('psd_samples', 0) < 0:
        raise ConfigurationError("sampling.psd_samples must be nonnegative")

    return True


def load_toolkit_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """Load and validate toolkit configuration.

    Resolution order: explicit path, CONETOOLKIT_CONFIG, bundled default file.
    Sections missing from the file are filled from the defaults key by key.
    """
    load_dotenv()
    path = config_path or get_env_var('CONETOOLKIT_CONFIG')
    if path is None and DEFAULT_CONFIG_PATH.exists():
        path = str(DEFAULT_CONFIG_PATH)

    config = load_config(path) if path else {}
    defaults = get_toolkit_config_defaults()

    # Merge with defaults
    for section, values in defaults.items():
        if section not in config or config[section] is None:
            config[section] = copy.deepcopy(values)
        elif isinstance(values, dict):
            for key, value in values.items():
                config[section].setdefault(key, value)

    level = get_env_var('CONETOOLKIT_LOG_LEVEL')
    if level:
        config['logging']['level'] = level
    seed = get_env_var('CONETOOLKIT_SEED')
    if seed:
        try:
            config['sampling']['seed'] = int(seed)
        except ValueError as e:
            raise ConfigurationError(f"CONETOOLKIT_SEED is not an integer: {seed}") from e

    validate_toolkit_config(config)

    return config
