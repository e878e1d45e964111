"""SVG scenes: input points as disks, demands as translucent rectangles, solution points as crosses."""

from __future__ import annotations

import io
import logging
from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")

from matplotlib import rc_context  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from src.bounds import BoundarySegment  # noqa: E402
from src.config import settings  # noqa: E402
from src.geometry import Instance, Solution  # noqa: E402
from src.verifier import VsCertificate  # noqa: E402

logger = logging.getLogger(__name__)

DEMAND_COLOR = "#4c72b0"
POINT_COLOR = "#222222"
SOLUTION_COLOR = "#c44e52"
WITNESS_COLOR = "#55a868"

_SVG_RC = {"svg.hashsalt": "gmc", "svg.fonttype": "none", "path.simplify": False}


def _bounds(instance: Instance, solution: Optional[Solution]):
    xs = [float(p.x) for p in instance.points]
    ys = [float(p.y) for p in instance.points]
    if solution is not None:
        xs += [float(q.x) for q in solution.aux]
        ys += [float(q.y) for q in solution.aux]
    if not xs:
        return (0.0, 1.0), (0.0, 1.0)
    pad = max(1.0, 0.05 * max(max(xs) - min(xs), max(ys) - min(ys)))
    return (min(xs) - pad, max(xs) + pad), (min(ys) - pad, max(ys) + pad)


def render_svg(
    instance: Instance,
    solution: Optional[Solution] = None,
    segments: Sequence[BoundarySegment] = (),
    certificate: Optional[VsCertificate] = None,
    labels: bool = False,
    width: Optional[float] = None,
) -> str:
    """Render an instance (and optionally a solution and bound witnesses) to an SVG string.

    Args:
        instance: Points and demands to draw.
        solution: Auxiliary points, drawn as crosses.
        segments: IS witness: boundary segments drawn as thick lines.
        certificate: VS witness: cuts drawn as dashed lines.
        labels: Annotate input points with their ids.
        width: Figure width in inches (``RENDER_WIDTH_IN`` by default).

    Returns:
        The SVG document. Identical inputs give byte-identical output.
    """
    width = settings.RENDER_WIDTH_IN if width is None else width
    (x0, x1), (y0, y1) = _bounds(instance, solution)
    aspect = (y1 - y0) / (x1 - x0)
    with rc_context(_SVG_RC):
        fig = Figure(figsize=(width, max(1.0, width * aspect)))
        ax = fig.add_subplot(1, 1, 1)
        ax.set_xlim(x0, x1)
        ax.set_ylim(y0, y1)
        ax.set_aspect("equal")
        ax.set_xticks([])
        ax.set_yticks([])

        for demand in instance.demands:
            rect = instance.rect(demand)
            ax.add_patch(
                Rectangle(
                    (float(rect.xlo), float(rect.ylo)),
                    float(rect.xhi - rect.xlo),
                    float(rect.yhi - rect.ylo),
                    facecolor=DEMAND_COLOR,
                    edgecolor=DEMAND_COLOR,
                    alpha=0.15,
                    linewidth=0.5,
                )
            )
        for seg in segments:
            ax.plot([float(seg.x)] * 2, [float(seg.ylo), float(seg.yhi)], color=WITNESS_COLOR, linewidth=2.5)
        if certificate is not None:
            for cut in certificate.cuts:
                ax.plot(
                    [float(cut.x)] * 2,
                    [float(cut.ylo), float(cut.yhi)],
                    color=WITNESS_COLOR,
                    linestyle="--",
                    linewidth=1.0,
                )
        if instance.points:
            ax.scatter(
                [float(p.x) for p in instance.points],
                [float(p.y) for p in instance.points],
                s=18,
                color=POINT_COLOR,
                zorder=3,
            )
        if labels:
            for p in instance.points:
                ax.annotate(p.id, (float(p.x), float(p.y)), fontsize=6, xytext=(3, 3), textcoords="offset points")
        if solution is not None and len(solution):
            ax.scatter(
                [float(q.x) for q in solution.aux],
                [float(q.y) for q in solution.aux],
                s=22,
                marker="x",
                color=SOLUTION_COLOR,
                zorder=4,
            )
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    logger.debug("rendered %d points, %d demands", len(instance.points), len(instance.demands))
    return buf.getvalue()


def save_svg(document: str, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document, encoding="utf-8")
    return path
