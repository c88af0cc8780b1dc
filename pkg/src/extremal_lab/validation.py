"""Input validation and error handling utilities."""

import re
from typing import Any, Dict, List, Sequence, Union

from pydantic import ValidationError as PydanticValidationError

from .config import Config
from .exceptions import ExtremalLabError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class InputValidator:
    """Validates command-line inputs before they reach the numerics."""

    @staticmethod
    def validate_degrees(degrees: Union[str, Sequence[int]]) -> Dict[str, Any]:
        """
        Validate a degree list given as "4,6,8", "4-14" or a sequence.

        Args:
            degrees: Degree list

        Returns:
            Dict[str, Any]: Validation result with the parsed ``degrees``
        """
        result: Dict[str, Any] = {"valid": False, "degrees": None, "errors": []}

        if isinstance(degrees, str):
            parsed: List[int] = []
            for token in filter(None, (t.strip() for t in degrees.split(","))):
                match = re.fullmatch(r"(\d+)\s*-\s*(\d+)", token)
                if match:
                    lo, hi = int(match.group(1)), int(match.group(2))
                    if lo > hi:
                        result["errors"].append(f"Empty degree range '{token}'")
                        return result
                    parsed.extend(range(lo, hi + 1))
                elif token.isdigit():
                    parsed.append(int(token))
                else:
                    result["errors"].append(f"Invalid degree '{token}'")
                    return result
        else:
            try:
                parsed = [int(n) for n in degrees]
            except (TypeError, ValueError):
                result["errors"].append("Degrees must be integers")
                return result

        if not parsed:
            result["errors"].append("At least one degree is required")
            return result
        if any(n < 1 for n in parsed):
            result["errors"].append("Degrees must be positive")
            return result

        result.update({"valid": True, "degrees": sorted(set(parsed))})
        return result

    @staticmethod
    def validate_emit_formats(emit: Union[str, Sequence[str]]) -> Dict[str, Any]:
        """
        Validate the --emit flag.

        Args:
            emit: Comma-separated string or list of formats

        Returns:
            Dict[str, Any]: Validation result with ``formats`` in canonical order
        """
        result: Dict[str, Any] = {"valid": False, "formats": None, "errors": []}
        items = emit.split(",") if isinstance(emit, str) else list(emit)
        formats = [item.strip().lower() for item in items if item.strip()]
        unknown = [f for f in formats if f not in Config.SUPPORTED_EXPORT_FORMATS]
        if unknown:
            supported = ", ".join(Config.SUPPORTED_EXPORT_FORMATS)
            result["errors"].append(f"Invalid export format(s) {', '.join(unknown)}. Supported: {supported}")
            return result
        if not formats:
            result["errors"].append("At least one export format is required")
            return result
        ordered = [f for f in Config.SUPPORTED_EXPORT_FORMATS if f in formats]
        result.update({"valid": True, "formats": ordered})
        return result

    @staticmethod
    def validate_override(assignment: str) -> Dict[str, Any]:
        """
        Validate a --set key.path=value override.

        Returns:
            Dict[str, Any]: Validation result with ``path`` (list of keys) and raw ``value``
        """
        result: Dict[str, Any] = {"valid": False, "path": None, "value": None, "errors": []}
        if "=" not in assignment:
            result["errors"].append(f"Override '{assignment}' must look like key=value")
            return result
        key, value = assignment.split("=", 1)
        path = [part.strip() for part in key.split(".")]
        if not all(re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", part) for part in path):
            result["errors"].append(f"Invalid override key '{key}'")
            return result
        result.update({"valid": True, "path": path, "value": value.strip()})
        return result


class ErrorHandler:
    """Centralized mapping of errors to messages and exit codes."""

    @staticmethod
    def exit_code_for(error: BaseException) -> int:
        """
        Exit code contract: 0 success, 2 validation, 3 numerical failure.

        Args:
            error: The exception that ended the command

        Returns:
            int: Process exit code
        """
        if isinstance(error, PydanticValidationError):
            return EXIT_VALIDATION
        if isinstance(error, ExtremalLabError):
            return error.exit_code
        return EXIT_NUMERICAL

    @staticmethod
    def handle_numerical_error(error: Exception, context: str = "") -> str:
        """User-facing message for a numerical failure."""
        prefix = f"{context}: " if context else ""
        return f"{prefix}numerical failure ({type(error).__name__}): {error}"

    @staticmethod
    def handle_parse_error(error: Exception, file_path: str) -> str:
        """User-facing message for an unreadable input document."""
        text = str(error).lower()
        for kind in ("json", "yaml", "toml"):
            if kind in text:
                return f"Invalid {kind.upper()} format in {file_path}. Please check the file syntax."
        return f"Failed to read {file_path}: {error}"

    @staticmethod
    def format_validation_errors(validation_result: Dict[str, Any]) -> str:
        """
        Format validation errors into a user-facing message.

        Args:
            validation_result: Result from an InputValidator method

        Returns:
            str: Formatted error message, empty when valid
        """
        if validation_result.get("valid", False):
            return ""

        errors = validation_result.get("errors", ["Unknown validation error"])
        if len(errors) == 1:
            return f"Validation error: {errors[0]}"
        error_list = "\n".join(f"- {error}" for error in errors)
        return f"Validation errors:\n{error_list}"
