"""Multi-format result export manager."""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from .. import __version__
from ..config import Config
from ..exceptions import ReportExportError
from ..models import CriticalPoint, IterationRecord, RateReport

logger = logging.getLogger(__name__)


def _clean(value: Any) -> Any:
    """Replace non-finite floats by None so the output stays strict JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_clean(v) for v in value]
    return value


def _cell(value: float) -> str:
    return repr(float(value)) if math.isfinite(value) else ""


def _complex_cell(z: complex) -> str:
    # + 0.0 drops the sign of negative zeros
    return f"{z.real + 0.0:.12g}{z.imag + 0.0:+.12g}j"


class ExportManager:
    """Writes JSON documents, CSV tables and SVG plots into one output directory."""

    def __init__(self, output_dir: Union[str, Path], formats: Optional[Sequence[str]] = None):
        self.output_dir = Path(output_dir)
        self.supported_formats = Config.SUPPORTED_EXPORT_FORMATS
        self.formats = list(formats) if formats is not None else ["json"]
        unsupported = [f for f in self.formats if f not in self.supported_formats]
        if unsupported:
            raise ReportExportError(f"Unsupported export format: {', '.join(unsupported)}")
        self.written: List[Path] = []

    def wants(self, format: str) -> bool:
        return format in self.formats

    def export_report(self, document: BaseModel, format: str, name: str) -> Dict[str, Any]:
        """
        Render a report document in one format.

        Args:
            document: Validated pydantic document
            format: json or csv
            name: Base filename without suffix

        Returns:
            Dict[str, Any]: Export result with content and metadata

        Raises:
            ReportExportError: If the document cannot be rendered
        """
        if format not in ("json", "csv"):
            raise ReportExportError(f"Export format {format} not implemented for documents")
        try:
            if format == "json":
                return self._export_json(document, name)
            return self._export_csv(document, name)
        except ReportExportError:
            raise
        except Exception as e:
            raise ReportExportError(f"Failed to export {name} as {format}: {str(e)}") from e

    def _export_json(self, document: BaseModel, name: str) -> Dict[str, Any]:
        data = _clean(document.model_dump(mode="json"))
        try:
            type(document).model_validate(data)
        except PydanticValidationError as e:
            raise ReportExportError(f"{name} does not match its schema: {e}") from e

        data["export_metadata"] = {
            "format": "json",
            "report_type": data.get("kind", name),
            "exporter": f"extremal-lab {__version__}",
        }
        content = json.dumps(data, indent=2, ensure_ascii=False, allow_nan=False) + "\n"
        return self._result("json", content, f"{name}.json", "application/json")

    def _export_csv(self, document: BaseModel, name: str) -> Dict[str, Any]:
        output = io.StringIO()
        self._write_generic_csv(document.model_dump(mode="json"), output)
        content = output.getvalue()
        output.close()
        return self._result("csv", content, f"{name}.csv", "text/csv")

    def _result(self, format: str, content: str, filename: str, mime_type: str) -> Dict[str, Any]:
        return {
            "format": format,
            "content": content,
            "filename": filename,
            "mime_type": mime_type,
            "size_bytes": len(content.encode("utf-8")),
        }

    def _write_generic_csv(self, data: Dict[str, Any], output: io.StringIO) -> None:
        """Flat key/value rows for scalar fields."""
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(["Field", "Value"])
        for key, value in data.items():
            if isinstance(value, (str, int, float, bool)) or value is None:
                writer.writerow([key, "" if value is None else value])

    # Tables

    def rate_csv(self, report: RateReport) -> str:
        """Columns n, rho2, rhoinf, root2, rootinf, predicted."""
        output = io.StringIO()
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(["n", "rho2", "rhoinf", "root2", "rootinf", "predicted"])
        for e in report.entries:
            writer.writerow(
                [
                    e.degree,
                    _cell(e.rho2),
                    _cell(e.rho_inf),
                    _cell(e.root2),
                    _cell(e.root_inf),
                    _cell(report.predicted_limit),
                ]
            )
        return output.getvalue()

    def iteration_csv(self, records: Sequence[IterationRecord]) -> str:
        """Optimizer log with columns start, iter, objective, gradient_norm, phase."""
        output = io.StringIO()
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(["start", "iter", "objective", "gradient_norm", "phase"])
        for r in records:
            writer.writerow([r.start, r.iteration, _cell(r.objective), _cell(r.gradient_norm), r.phase])
        return output.getvalue()

    def critical_csv(self, degree: int, points: Sequence[CriticalPoint]) -> str:
        """One row per critical point with its poles."""
        output = io.StringIO()
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(["n", "start", "objective", "gradient_norm", "irreducible", "poles"])
        for p in points:
            writer.writerow(
                [
                    degree,
                    p.start,
                    _cell(p.objective),
                    _cell(p.gradient_norm),
                    p.irreducible,
                    " ".join(_complex_cell(z) for z in np.sort_complex(p.poles)),
                ]
            )
        return output.getvalue()

    # Files

    def write_text(self, filename: str, content: str) -> Path:
        """
        Write one output file.

        Raises:
            ReportExportError: If the file cannot be written
        """
        path = self.output_dir / filename
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
        except OSError as e:
            raise ReportExportError(f"Cannot write {path}: {e}") from e
        self.written.append(path)
        logger.info("Wrote %s (%s)", path, self._format_file_size(len(content.encode("utf-8"))))
        return path

    def write_document(self, document: BaseModel, name: str) -> Optional[Path]:
        """Write the JSON form of a document when json output is enabled."""
        if not self.wants("json"):
            return None
        result = self.export_report(document, "json", name)
        return self.write_text(result["filename"], result["content"])

    def write_table(self, name: str, content: str) -> Optional[Path]:
        if not self.wants("csv"):
            return None
        return self.write_text(f"{name}.csv", content)

    def write_svg(self, name: str, content: str) -> Optional[Path]:
        if not self.wants("svg"):
            return None
        return self.write_text(f"{name}.svg", content)

    def get_supported_formats(self) -> List[str]:
        return self.supported_formats.copy()

    def _format_file_size(self, size_bytes: int) -> str:
        """Format file size in human readable format."""
        size = float(size_bytes)
        for unit in ["B", "KB", "MB", "GB"]:
            if size < 1024.0:
                return f"{size:.1f} {unit}"
            size /= 1024.0
        return f"{size:.1f} TB"
