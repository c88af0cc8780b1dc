"""Tests for function specification and experiment manifest parsing."""

import json

import pytest

from extremal_lab.algfun import f1_spec
from extremal_lab.exceptions import ConfigValidationError, FunctionSpecError
from extremal_lab.parsers import (
    ExperimentConfigParser,
    FunctionSpecParser,
    apply_overrides,
    load_experiment_config,
    resolve_function,
    spec_to_dict,
)

MARKOV_DOCUMENT = {
    "label": "markov",
    "terms": [
        {
            "factors": [
                {"re": 0.5, "im": 0.0, "num": -1, "den": 2},
                {"re": -0.5, "im": 0.0, "num": -1, "den": 2},
            ],
            "limit": 1.0,
        }
    ],
}


class TestFunctionSpecParser:
    """Function specification documents."""

    def test_parse_json(self):
        spec = FunctionSpecParser().parse(json.dumps(MARKOV_DOCUMENT), "markov.json")
        assert spec.label == "markov"
        assert sorted(p.real for p in spec.branch_points) == [-0.5, 0.5]

    def test_parse_yaml_and_toml(self):
        yaml_text = "poles:\n  - {re: 0.3, im: 0.0, residue: 1.0}\n"
        toml_text = "[[poles]]\nre = 0.3\nim = 0.0\nresidue = 1.0\n"
        from_yaml = FunctionSpecParser().parse(yaml_text, "single.yaml")
        from_toml = FunctionSpecParser().parse(toml_text, "single.toml")
        assert from_yaml.poles[0].pole == from_toml.poles[0].pole == 0.3
        assert from_yaml.label == "single"

    def test_document_round_trip_of_preset(self):
        spec = f1_spec()
        rebuilt = FunctionSpecParser().from_dict(spec_to_dict(spec))
        assert rebuilt.branch_points == spec.branch_points
        assert rebuilt.label == spec.label

    def test_unknown_fields_rejected(self):
        with pytest.raises(FunctionSpecError, match="Unknown function spec fields"):
            FunctionSpecParser().from_dict({"terms": [], "weights": []})

    def test_exponents_must_sum_to_minus_one(self):
        document = {"terms": [{"factors": [{"re": 0.5, "num": -1, "den": 2}]}]}
        with pytest.raises(FunctionSpecError):
            FunctionSpecParser().from_dict(document)

    def test_zero_denominator_rejected(self):
        document = {"terms": [{"factors": [{"re": 0.5, "num": -1, "den": 0}]}]}
        with pytest.raises(FunctionSpecError, match="zero exponent denominator"):
            FunctionSpecParser().from_dict(document)

    def test_invalid_json(self):
        with pytest.raises(FunctionSpecError, match="Invalid JSON format"):
            FunctionSpecParser().parse("{not json", "broken.json")

    def test_top_level_must_be_mapping(self):
        with pytest.raises(FunctionSpecError):
            FunctionSpecParser().parse("[1, 2]", "list.json")


class TestResolveFunction:
    """Presets, files and inline documents."""

    def test_preset(self):
        assert len(resolve_function("f1_z5").branch_points) == 5

    def test_relative_file(self, tmp_path):
        (tmp_path / "markov.json").write_text(json.dumps(MARKOV_DOCUMENT))
        spec = resolve_function("markov.json", base_dir=tmp_path)
        assert spec.label == "markov"

    def test_inline_mapping(self):
        assert resolve_function(MARKOV_DOCUMENT).label == "markov"

    def test_unknown_reference(self):
        with pytest.raises(FunctionSpecError, match="not a preset"):
            resolve_function("no_such_function")


class TestOverrides:
    """--set key.path=value assignments."""

    def test_values_are_typed(self):
        data = apply_overrides({}, ["truncation=120", "optimizer.seed=5", "emit=[json, csv]"])
        assert data == {"truncation": 120, "optimizer": {"seed": 5}, "emit": ["json", "csv"]}

    def test_original_mapping_untouched(self):
        raw = {"optimizer": {"seed": 1}}
        apply_overrides(raw, ["optimizer.seed=2"])
        assert raw == {"optimizer": {"seed": 1}}

    def test_malformed_assignment(self):
        with pytest.raises(ConfigValidationError):
            apply_overrides({}, ["truncation"])

    def test_override_into_scalar(self):
        with pytest.raises(ConfigValidationError, match="is not a section"):
            apply_overrides({"truncation": 100}, ["truncation.value=3"])


class TestExperimentConfig:
    """Experiment manifests."""

    def test_defaults_without_file(self):
        config = load_experiment_config()
        assert config.function == "f1"
        assert config.truncation == 100

    def test_yaml_manifest_with_overrides(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("function: markov\ndegrees: [2, 4]\noptimizer:\n  multistart: 3\n")
        config = load_experiment_config(path, ["optimizer.seed=9"])
        assert config.degrees == [2, 4]
        assert config.optimizer.multistart == 3
        assert config.optimizer.seed == 9

    def test_toml_manifest(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text('function = "f2"\ndegrees = [6]\n[contour]\nkind = "circle"\nradius = 0.4\n')
        config = load_experiment_config(path)
        assert config.contour.radius == 0.4

    def test_truncation_too_short(self):
        with pytest.raises(ConfigValidationError, match="truncation"):
            ExperimentConfigParser().build({"degrees": [12], "truncation": 20})

    def test_truncation_needs_one_more_than_twice_the_degree(self):
        """A degree-n search needs 2n + 1 coefficients."""
        with pytest.raises(ConfigValidationError, match="truncation"):
            ExperimentConfigParser().build({"degrees": [12], "truncation": 24})
        config = ExperimentConfigParser().build({"degrees": [12], "truncation": 25})
        assert config.truncation == 25

    def test_zero_truncation(self):
        with pytest.raises(ConfigValidationError):
            ExperimentConfigParser().build({"truncation": 0})

    def test_unsorted_degrees(self):
        with pytest.raises(ConfigValidationError, match="sorted"):
            ExperimentConfigParser().build({"degrees": [8, 4]})

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigValidationError, match="not found"):
            load_experiment_config(tmp_path / "absent.json")

    def test_segment_contour_needs_vertices(self):
        with pytest.raises(ConfigValidationError):
            ExperimentConfigParser().build({"contour": {"kind": "segment"}})
