"""
Configuration loading for treecoh

A run is described by one JSON document; files ending in .yaml or .yml are
read with PyYAML into the same model. Nothing is read from the environment.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import yaml
from pydantic import ValidationError

from orchestrator.models import Config
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

RUN_CONTROL_FIELDS = {"output", "threads"}


def parse_config(data: Dict[str, Any]) -> Config:
    """Validate a configuration dictionary

    Args:
        data: Parsed configuration document

    Returns:
        Validated Config

    Raises:
        ConfigError: reason "validation" with the pydantic error list
    """
    if not isinstance(data, dict):
        raise ConfigError("Configuration must be a mapping", reason="validation")
    try:
        return Config.model_validate(data)
    except ValidationError as e:
        errors = [{"loc": [str(x) for x in err["loc"]], "msg": err["msg"]} for err in e.errors()]
        raise ConfigError(f"Invalid configuration: {errors[0]['msg'] if errors else e}",
                          reason="validation", errors=errors)


def load_config(path: Union[str, Path]) -> Config:
    """Read and validate a configuration file

    Args:
        path: JSON or YAML file

    Returns:
        Validated Config
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"Cannot read configuration {path}: {str(e)}", reason="unreadable")
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot parse configuration {path}: {str(e)}", reason="syntax")
    config = parse_config(data)
    logger.info(f"loaded configuration {path} ({config_hash(config)[:12]})")
    return config


def canonical_json(config: Config) -> str:
    """Sorted, whitespace-free JSON of the model without the run-control fields"""
    data = config.model_dump(mode="json", exclude=RUN_CONTROL_FIELDS)
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def config_hash(config: Config) -> str:
    """SHA-256 of the canonical JSON of the validated model"""
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()
