"""Tests for input validation and the exit code contract."""

import pytest
from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from extremal_lab.exceptions import (
    AmbiguousBranchError,
    ConfigValidationError,
    DefectivePadeError,
    ExtremalLabError,
    ReportExportError,
    TraceStalledError,
)
from extremal_lab.validation import (
    EXIT_NUMERICAL,
    EXIT_VALIDATION,
    ErrorHandler,
    InputValidator,
)


class TestDegrees:
    """--degrees parsing."""

    @pytest.mark.parametrize(
        "raw, expected",
        [
            ("4-8", [4, 5, 6, 7, 8]),
            ("12,4,8", [4, 8, 12]),
            ("2, 6-7, 6", [2, 6, 7]),
            ([3, 1], [1, 3]),
        ],
    )
    def test_valid(self, raw, expected):
        result = InputValidator.validate_degrees(raw)
        assert result["valid"]
        assert result["degrees"] == expected

    @pytest.mark.parametrize("raw", ["", "8-4", "0,2", "four", ["x"]])
    def test_invalid(self, raw):
        result = InputValidator.validate_degrees(raw)
        assert not result["valid"]
        assert result["errors"]


class TestEmitFormats:
    """--emit parsing."""

    def test_canonical_order(self):
        result = InputValidator.validate_emit_formats("svg, JSON")
        assert result["formats"] == ["json", "svg"]

    def test_unknown_format(self):
        result = InputValidator.validate_emit_formats("json,png")
        assert not result["valid"]
        assert "png" in result["errors"][0]

    def test_empty(self):
        assert not InputValidator.validate_emit_formats(" , ")["valid"]


class TestOverrideSyntax:
    """--set key=value syntax."""

    def test_dotted_path(self):
        result = InputValidator.validate_override("optimizer.seed = 4")
        assert result["path"] == ["optimizer", "seed"]
        assert result["value"] == "4"

    @pytest.mark.parametrize("raw", ["seed", "1seed=2", "opt..seed=1"])
    def test_invalid(self, raw):
        assert not InputValidator.validate_override(raw)["valid"]


class TestErrorHandler:
    """Exit codes and messages."""

    @pytest.mark.parametrize(
        "error, code",
        [
            (ConfigValidationError("bad"), EXIT_VALIDATION),
            (AmbiguousBranchError("inside"), EXIT_VALIDATION),
            (TraceStalledError("stuck"), EXIT_NUMERICAL),
            (DefectivePadeError("rank"), EXIT_NUMERICAL),
            (ReportExportError("disk"), EXIT_NUMERICAL),
            (ExtremalLabError("generic"), EXIT_NUMERICAL),
            (RuntimeError("unexpected"), EXIT_NUMERICAL),
        ],
    )
    def test_exit_codes(self, error, code):
        assert ErrorHandler.exit_code_for(error) == code

    def test_pydantic_errors_are_validation(self):
        class Model(BaseModel):
            value: int

        with pytest.raises(PydanticValidationError) as info:
            Model.model_validate({"value": "x"})
        assert ErrorHandler.exit_code_for(info.value) == EXIT_VALIDATION

    def test_format_single_and_multiple(self):
        single = ErrorHandler.format_validation_errors({"valid": False, "errors": ["one"]})
        multiple = ErrorHandler.format_validation_errors({"valid": False, "errors": ["one", "two"]})
        assert single == "Validation error: one"
        assert multiple == "Validation errors:\n- one\n- two"
        assert ErrorHandler.format_validation_errors({"valid": True}) == ""

    def test_parse_error_names_format(self):
        message = ErrorHandler.handle_parse_error(ValueError("Invalid YAML format: x"), "run.yaml")
        assert message.startswith("Invalid YAML format in run.yaml")

    def test_numerical_message(self):
        message = ErrorHandler.handle_numerical_error(TraceStalledError("step"), "minset")
        assert message == "minset: numerical failure (TraceStalledError): step"
