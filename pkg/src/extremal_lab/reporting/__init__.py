"""Reporting: JSON documents, CSV tables, SVG plots and text summaries."""

from .export_manager import ExportManager
from .schemas import DOCUMENT_MODELS, schema_documents
from .summary import SummaryGenerator
from .svg_plot import PolePlot, plot_from_documents

__all__ = [
    "DOCUMENT_MODELS",
    "ExportManager",
    "PolePlot",
    "SummaryGenerator",
    "plot_from_documents",
    "schema_documents",
]
