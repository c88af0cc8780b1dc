"""Function specification documents.

Layout::

    {"terms": [{"factors": [{"re": 0.6, "im": 0.3, "num": -1, "den": 4}, ...],
                "limit": {"re": 1.0, "im": 0.0}}],
     "poles": [{"re": 0.6, "im": 0.3, "residue": {"re": 1.0, "im": 0.0}}],
     "label": "f1"}
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Union

from ..algfun import PRESETS
from ..exceptions import FunctionSpecError
from ..models import BranchFactor, FunctionSpec, SimplePole, Term
from .base import DocumentParser

logger = logging.getLogger(__name__)


def _complex(value: Any, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if not isinstance(value, dict) or "re" not in value:
        raise FunctionSpecError(f"{where}: expected a number or an object with 're' and 'im'")
    try:
        return complex(float(value["re"]), float(value.get("im", 0.0)))
    except (TypeError, ValueError) as e:
        raise FunctionSpecError(f"{where}: non-numeric complex parts") from e


def _encode(z: complex) -> Dict[str, float]:
    return {"re": float(z.real), "im": float(z.imag)}


class FunctionSpecParser(DocumentParser):
    """Parser for function specification documents."""

    def __init__(self) -> None:
        super().__init__(FunctionSpecError)

    def parse(self, content: str, file_path: str) -> FunctionSpec:
        """Parse a function specification document."""
        return self.from_dict(self.parse_mapping(content, file_path), label=Path(file_path).stem)

    def from_dict(self, data: Dict[str, Any], label: str = "f") -> FunctionSpec:
        """
        Build a FunctionSpec from its document form.

        Args:
            data: Mapping with "terms" and/or "poles"
            label: Fallback label when the document has none

        Returns:
            FunctionSpec: Validated specification

        Raises:
            FunctionSpecError: If fields are missing or violate the model invariants
        """
        unknown = set(data) - {"terms", "poles", "label"}
        if unknown:
            raise FunctionSpecError(f"Unknown function spec fields: {', '.join(sorted(unknown))}")
        try:
            terms = []
            for i, raw in enumerate(data.get("terms", [])):
                factors = []
                for j, factor in enumerate(raw.get("factors", [])):
                    where = f"terms[{i}].factors[{j}]"
                    if "num" not in factor or "den" not in factor:
                        raise FunctionSpecError(f"{where}: exponent needs 'num' and 'den'")
                    if int(factor["den"]) == 0:
                        raise FunctionSpecError(f"{where}: zero exponent denominator")
                    exponent = Fraction(int(factor["num"]), int(factor["den"]))
                    factors.append(BranchFactor(_complex(factor, where), exponent))
                limit = _complex(raw.get("limit", 1.0), f"terms[{i}].limit")
                terms.append(Term(factors, limit))
            poles = [
                SimplePole(
                    _complex(raw, f"poles[{i}]"),
                    _complex(raw.get("residue", 1.0), f"poles[{i}].residue"),
                )
                for i, raw in enumerate(data.get("poles", []))
            ]
            spec = FunctionSpec(terms=terms, poles=poles, label=str(data.get("label", label)))
        except FunctionSpecError:
            raise
        except (ValueError, TypeError, AttributeError) as e:
            raise FunctionSpecError(f"Invalid function specification: {e}") from e
        logger.debug("Parsed %s with %d terms and %d poles", spec.label, len(terms), len(poles))
        return spec


def spec_to_dict(spec: FunctionSpec) -> Dict[str, Any]:
    """Document form of a FunctionSpec."""
    return {
        "label": spec.label,
        "terms": [
            {
                "factors": [
                    {
                        **_encode(f.center),
                        "num": f.exponent.numerator,
                        "den": f.exponent.denominator,
                    }
                    for f in term.factors
                ],
                "limit": _encode(term.limit),
            }
            for term in spec.terms
        ],
        "poles": [{**_encode(p.pole), "residue": _encode(p.residue)} for p in spec.poles],
    }


def resolve_function(
    reference: Union[str, Dict[str, Any]], base_dir: Union[str, Path, None] = None
) -> FunctionSpec:
    """
    Resolve a preset name, a document path or an inline mapping.

    Args:
        reference: Preset name (f1, f1_z5, f2, markov), path, or inline document
        base_dir: Directory for relative paths

    Returns:
        FunctionSpec: The referenced specification

    Raises:
        FunctionSpecError: If the reference cannot be resolved
    """
    parser = FunctionSpecParser()
    if isinstance(reference, dict):
        return parser.from_dict(reference)
    if reference in PRESETS:
        return PRESETS[reference]()
    path = Path(reference)
    if base_dir is not None and not path.is_absolute():
        path = Path(base_dir) / path
    if not path.exists():
        presets = ", ".join(sorted(PRESETS))
        raise FunctionSpecError(f"Unknown function '{reference}': not a preset ({presets}) nor a file")
    return parser.load(path)
