"""Parsers for function specifications and experiment manifests."""

from .base import DocumentParser
from .config_file import ExperimentConfigParser, apply_overrides, load_experiment_config
from .function_spec import FunctionSpecParser, resolve_function, spec_to_dict

__all__ = [
    "DocumentParser",
    "ExperimentConfigParser",
    "FunctionSpecParser",
    "apply_overrides",
    "load_experiment_config",
    "resolve_function",
    "spec_to_dict",
]
