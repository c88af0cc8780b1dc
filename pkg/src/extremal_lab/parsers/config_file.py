"""Experiment configuration files with --set overrides."""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

import yaml
from pydantic import ValidationError as PydanticValidationError

from ..config import ExperimentConfig
from ..exceptions import ConfigValidationError
from ..validation import ErrorHandler, InputValidator
from .base import DocumentParser

logger = logging.getLogger(__name__)


def apply_overrides(raw: Dict[str, Any], assignments: Sequence[str]) -> Dict[str, Any]:
    """
    Apply key.path=value assignments to a raw configuration mapping.

    Values are typed with ``yaml.safe_load`` so numbers, booleans and lists
    keep their types.

    Raises:
        ConfigValidationError: If an assignment is malformed or walks into a non-mapping
    """
    data = dict(raw)
    for assignment in assignments:
        result = InputValidator.validate_override(assignment)
        if not result["valid"]:
            raise ConfigValidationError(ErrorHandler.format_validation_errors(result))
        try:
            value = yaml.safe_load(result["value"]) if result["value"] else ""
        except yaml.YAMLError as e:
            raise ConfigValidationError(f"Cannot parse override value in '{assignment}'") from e

        node = data
        *parents, leaf = result["path"]
        for key in parents:
            child = node.get(key)
            if child is None:
                child = {}
            elif not isinstance(child, dict):
                raise ConfigValidationError(f"Override '{assignment}': '{key}' is not a section")
            else:
                child = dict(child)
            node[key] = child
            node = child
        node[leaf] = value
        logger.debug("Override %s = %r", ".".join(result["path"]), value)
    return data


def _pydantic_messages(error: PydanticValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "config"
        lines.append(f"{location}: {item['msg']}")
    return ErrorHandler.format_validation_errors({"valid": False, "errors": lines})


class ExperimentConfigParser(DocumentParser):
    """Parser for experiment manifests in JSON, YAML or TOML."""

    def __init__(self) -> None:
        super().__init__(ConfigValidationError)

    def parse(self, content: str, file_path: str) -> ExperimentConfig:
        return self.build(self.parse_mapping(content, file_path))

    def build(self, raw: Dict[str, Any], overrides: Sequence[str] = ()) -> ExperimentConfig:
        """
        Validate a raw mapping after applying overrides.

        Raises:
            ConfigValidationError: If the configuration violates the model invariants
        """
        data = apply_overrides(raw, overrides)
        try:
            return ExperimentConfig.model_validate(data)
        except PydanticValidationError as e:
            raise ConfigValidationError(_pydantic_messages(e)) from e


def load_experiment_config(
    path: Optional[Union[str, Path]] = None, overrides: Sequence[str] = ()
) -> ExperimentConfig:
    """
    Load an experiment configuration, defaults when no path is given.

    Args:
        path: JSON, YAML or TOML manifest
        overrides: key.path=value assignments applied before validation

    Returns:
        ExperimentConfig: Validated configuration
    """
    parser = ExperimentConfigParser()
    raw: Dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigValidationError(f"Configuration file not found: {path}")
        raw = parser.parse_mapping(path.read_text(encoding="utf-8"), str(path))
    return parser.build(raw, overrides)
