import os
import re
from pathlib import Path
from typing import Any, Dict, Optional, Union

import tomli

from Sepdec.utils.settings import get_settings

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.toml"


def _replace_env_vars(field: str) -> str:
    """
    Replace environment variables in a string with their values from the environment.

    Args:
        field: A string to replace environment variables in, and the environment variables
        should be in the format of ${VAR} or $VAR.

    Returns:
        The string with environment variables replaced. Unset variables are left as-is.

    Examples:
        >>> os.environ["SEPDEC_TOL"] = "1e-4"
        >>> _replace_env_vars("${SEPDEC_TOL}")
        '1e-4'
    """
    pattern = r"\$(?:{[A-Za-z_][A-Za-z0-9_]*}|[A-Za-z_][A-Za-z0-9_]*)"

    def replace_match(match):
        var = match.group(0)
        var_name = var.strip("${}").lstrip("$")
        value = os.environ.get(var_name)
        return var if value is None else value

    return re.sub(pattern, replace_match, field)


def replace_env_vars_in_dict(field: Union[Dict[str, Any], str]) -> Any:
    """
    Replace environment variables in a (nested) dictionary or string.

    Examples:
        >>> os.environ["SEPDEC_MAX_N"] = "20"
        >>> replace_env_vars_in_dict({"max_n": "${SEPDEC_MAX_N}", "tol": 0.001})
        {'max_n': '20', 'tol': 0.001}
    """
    if isinstance(field, dict):
        return {k: replace_env_vars_in_dict(v) for k, v in field.items()}
    elif isinstance(field, str):
        return _replace_env_vars(field)

    return field


def load_toml_with_env_vars(file_path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(file_path, "rb") as f:
            data = tomli.load(f)
    except Exception as e:
        raise ValueError(f"Error loading TOML file {file_path}: {e}")

    return replace_env_vars_in_dict(data)


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """Packaged defaults, overlaid with SEPDEC_CONFIG and then with ``path``."""
    config = load_toml_with_env_vars(DEFAULT_CONFIG_PATH)
    env_path = get_settings().CONFIG
    for extra in (env_path, path):
        if extra:
            config = _merge(config, load_toml_with_env_vars(extra))
    return config
