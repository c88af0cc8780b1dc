"""Scatter plots of poles, branch points and cuts as self-contained SVG."""

import io
import logging
from typing import Dict, List, Optional, Sequence

import matplotlib
import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from ..config import Config
from ..exceptions import ReportExportError

logger = logging.getLogger(__name__)

# Fixed id salt and no date stamp keep the bytes reproducible.
SVG_RC = {"svg.hashsalt": "extremal-lab", "svg.fonttype": "path", "path.simplify": False}


class PolePlot:
    """One panel in the unit disk: branch points as diamonds, poles as disks, cuts as lines."""

    def __init__(self, title: str = "", size: int = Config.SVG_SIZE):
        self.title = title
        self.size = size
        self.branch_points: List[complex] = []
        self.pole_sets: Dict[str, np.ndarray] = {}
        self.cuts: List[np.ndarray] = []
        self.markers: Dict[str, np.ndarray] = {}

    def add_branch_points(self, points: Sequence[complex]) -> "PolePlot":
        self.branch_points.extend(complex(z) for z in points)
        return self

    def add_poles(self, label: str, poles: Sequence[complex]) -> "PolePlot":
        self.pole_sets[label] = np.asarray(poles, dtype=complex)
        return self

    def add_cut(self, vertices: Sequence[complex]) -> "PolePlot":
        self.cuts.append(np.asarray(vertices, dtype=complex))
        return self

    def add_points(self, label: str, points: Sequence[complex]) -> "PolePlot":
        """Auxiliary points (interpolation nodes, Fekete points) as crosses."""
        self.markers[label] = np.asarray(points, dtype=complex)
        return self

    def _extent(self) -> float:
        radius = 1.05
        for group in [np.asarray(self.branch_points), *self.pole_sets.values(), *self.cuts]:
            if group.size:
                radius = max(radius, 1.05 * float(np.max(np.abs(group))))
        return min(radius, 3.0)

    def render(self) -> str:
        """
        Render the plot.

        Returns:
            str: SVG document with embedded glyphs and no external references

        Raises:
            ReportExportError: If matplotlib fails to render
        """
        inches = self.size / 100.0
        try:
            with matplotlib.rc_context(SVG_RC):
                fig = Figure(figsize=(inches, inches), dpi=100)
                FigureCanvasSVG(fig)
                ax = fig.add_subplot(1, 1, 1)
                self._draw(ax)
                buffer = io.StringIO()
                fig.savefig(buffer, format="svg", metadata={"Date": None, "Creator": None})
        except (ValueError, RuntimeError) as e:
            raise ReportExportError(f"Cannot render plot '{self.title}': {e}") from e
        return buffer.getvalue()

    def _draw(self, ax) -> None:
        t = np.linspace(0.0, 2.0 * np.pi, 721)
        ax.plot(np.cos(t), np.sin(t), color="0.6", linewidth=0.8, label="T")

        for i, cut in enumerate(self.cuts):
            ax.plot(cut.real, cut.imag, color="tab:blue", linewidth=1.4, label="cut" if i == 0 else None)

        colors = ["tab:red", "tab:green", "tab:purple", "tab:orange", "tab:brown"]
        for i, (label, poles) in enumerate(self.pole_sets.items()):
            if poles.size:
                ax.plot(
                    poles.real,
                    poles.imag,
                    linestyle="none",
                    marker="o",
                    markersize=4,
                    color=colors[i % len(colors)],
                    label=label,
                )

        for label, points in self.markers.items():
            if points.size:
                ax.plot(
                    points.real, points.imag,
                    linestyle="none", marker="x", markersize=4, color="0.3", label=label,
                )

        if self.branch_points:
            b = np.asarray(self.branch_points)
            ax.plot(
                b.real, b.imag,
                linestyle="none", marker="D", markersize=6, color="black", label="branch points",
            )

        extent = self._extent()
        ax.set_xlim(-extent, extent)
        ax.set_ylim(-extent, extent)
        ax.set_aspect("equal")
        ax.grid(True, linewidth=0.3)
        if self.title:
            ax.set_title(self.title, fontsize=9)
        ax.legend(loc="upper right", fontsize=6)


def plot_from_documents(documents: Sequence[dict], title: Optional[str] = None) -> str:
    """
    Render emitted JSON documents (minimal_set, critical_points, pade) into one plot.

    Raises:
        ReportExportError: If no document carries anything to draw
    """
    plot = PolePlot(title=title or "")

    def values(items: Sequence[dict]) -> List[complex]:
        return [complex(v["re"], v.get("im", 0.0)) for v in items]

    drawn = False
    for doc in documents:
        kind = doc.get("kind")
        if kind == "minimal_set":
            plot.add_branch_points(values(doc["a_points"]))
            for arc in doc["arcs"]:
                plot.add_cut(values(arc["vertices"]))
            drawn = True
        elif kind == "critical_points" and doc["points"]:
            plot.add_poles(f"critical n={doc['degree']}", values(doc["points"][0]["rational"]["poles"]))
            drawn = True
        elif kind == "pade":
            plot.add_poles(f"pade n={doc['degree']}", values(doc["rational"]["poles"]))
            drawn = True
        else:
            logger.debug("Skipping document of kind %r", kind)
    if not drawn:
        raise ReportExportError("No plottable documents (minimal_set, critical_points, pade)")
    return plot.render()
