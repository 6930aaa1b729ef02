import os
from configparser import ConfigParser
from pathlib import Path

CONFIG_PATH: Path = Path(__file__).resolve().parent.parent / 'config' / 'config.ini'

_DEFAULTS = {
    'engine': {
        'max_degree': '40',
        'max_steps': '8',
        'max_rank': '400',
        'time_limit': '900',
        'max_q': '65536',
    },
    'oracle': {'degree_bound': '8'},
    'cache': {
        'enable_persistence': 'False',
        'cache_file': '.frobrig_resolution_cache.pkl',
        'max_entries': '256',
    },
    'logging': {'log_file': 'frobrig.log', 'level': 'INFO'},
    'settings': {'max_workers': '4', 'output_format': 'json'},
}

# Budget caps are the only values the environment may override.
ENV_OVERRIDES = {
    'FROBRIG_MAX_DEGREE': ('engine', 'max_degree'),
    'FROBRIG_MAX_STEPS': ('engine', 'max_steps'),
    'FROBRIG_MAX_RANK': ('engine', 'max_rank'),
    'FROBRIG_TIME_LIMIT': ('engine', 'time_limit'),
}

config = ConfigParser()
config.read_dict(_DEFAULTS)
config.read(CONFIG_PATH)

MAX_DEGREE: int = config.getint('engine', 'max_degree')
MAX_STEPS: int = config.getint('engine', 'max_steps')
MAX_RANK: int = config.getint('engine', 'max_rank')
TIME_LIMIT: float = config.getfloat('engine', 'time_limit')
MAX_Q: int = config.getint('engine', 'max_q')

ORACLE_DEGREE_BOUND: int = config.getint('oracle', 'degree_bound')

CACHE_PERSISTENCE: bool = config.getboolean('cache', 'enable_persistence')
CACHE_FILE: str = config['cache']['cache_file']
CACHE_MAX_ENTRIES: int = config.getint('cache', 'max_entries')

LOG_FILE: str = config['logging']['log_file']
LOG_LEVEL: str = config['logging']['level']

MAX_WORKERS: int = config.getint('settings', 'max_workers')
OUTPUT_FORMAT: str = config['settings']['output_format']


def get_config(section: str, key: str) -> str:
    """Get a config value with error handling.

    Args:
        section: Config section.
        key: Config key.

    Returns:
        Value as string.

    Raises:
        ValueError: If section or key not found.
    """
    try:
        return config[section][key]
    except KeyError:
        raise ValueError(f"Config key '{key}' not found in section '{section}'.")


def budget_setting(key: str) -> float:
    """Effective value of a budget cap, environment first.

    Args:
        key: One of max_degree, max_steps, max_rank, time_limit.

    Returns:
        The numeric cap.

    Raises:
        ValueError: If the key is unknown or an override is not a number.
    """
    for env_name, (section, name) in ENV_OVERRIDES.items():
        if name != key:
            continue
        raw = os.environ.get(env_name)
        if raw is None:
            raw = get_config(section, name)
        try:
            return float(raw)
        except ValueError:
            raise ValueError(f"Budget cap {env_name}={raw!r} is not a number.")
    raise ValueError(f"Unknown budget cap '{key}'.")


def default_budget():
    """Budget assembled from config/config.ini and environment overrides."""
    from .budget import Budget

    return Budget(
        max_degree=int(budget_setting('max_degree')),
        max_steps=int(budget_setting('max_steps')),
        max_rank=int(budget_setting('max_rank')),
        time_limit=budget_setting('time_limit'),
    )
