"""Base class for document parsers."""

import json
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Type, Union

import toml
import yaml

from ..exceptions import ValidationError


class DocumentParser(ABC):
    """Base class for parsing JSON, YAML or TOML input documents."""

    SUFFIXES = (".json", ".yaml", ".yml", ".toml")

    def __init__(self, error_class: Type[ValidationError] = ValidationError):
        self.error_class = error_class

    @abstractmethod
    def parse(self, content: str, file_path: str) -> Any:
        """
        Parse document content.

        Args:
            content: File content as string
            file_path: Path of the document, used to pick the format

        Returns:
            Any: Parsed domain object

        Raises:
            ValidationError: If parsing fails
        """
        pass

    def can_parse(self, filename: str) -> bool:
        """Check if this parser can handle the given filename."""
        return Path(filename).suffix.lower() in self.SUFFIXES

    def load(self, path: Union[str, Path]) -> Any:
        """Read and parse a document from disk."""
        path = Path(path)
        try:
            content = path.read_text(encoding="utf-8")
        except OSError as e:
            raise self.error_class(f"Cannot read {path}: {e}") from e
        return self.parse(content, str(path))

    def parse_mapping(self, content: str, file_path: str) -> Dict[str, Any]:
        """Parse by suffix (JSON when unknown) and require a top-level mapping."""
        suffix = Path(file_path).suffix.lower()
        if suffix in (".yaml", ".yml"):
            data = self._safe_parse_yaml(content)
        elif suffix == ".toml":
            data = self._safe_parse_toml(content)
        else:
            data = self._safe_parse_json(content)
        if not isinstance(data, dict):
            raise self.error_class(f"{file_path}: top-level document must be a mapping")
        return data

    def _safe_parse_json(self, content: str) -> Any:
        """
        Safely parse JSON content with error handling.

        Raises:
            ValidationError: If JSON parsing fails
        """
        try:
            return json.loads(content)
        except json.JSONDecodeError as e:
            raise self.error_class(f"Invalid JSON format: {str(e)}") from e

    def _safe_parse_toml(self, content: str) -> Dict[str, Any]:
        """
        Safely parse TOML content with error handling.

        Raises:
            ValidationError: If TOML parsing fails
        """
        try:
            return toml.loads(content)
        except Exception as e:
            raise self.error_class(f"Invalid TOML format: {str(e)}") from e

    def _safe_parse_yaml(self, content: str) -> Any:
        """
        Safely parse YAML content with error handling.

        Raises:
            ValidationError: If YAML parsing fails
        """
        try:
            return yaml.safe_load(content)
        except yaml.YAMLError as e:
            raise self.error_class(f"Invalid YAML format: {str(e)}") from e
