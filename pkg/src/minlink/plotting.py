"""SVG figures of a curve and its simplification."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle, Polygon  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.linewidth": 0.6,
    "svg.fonttype": "none",
}


def plot_simplification(curve: Sequence[Sequence[float]], out: str,
                        simplified: Optional[Sequence[Sequence[float]]] = None,
                        delta: Optional[float] = None, title: Optional[str] = None) -> Path:
    """Draw a planar curve, optionally with its simplification and its delta-tube."""
    if any(len(v) != 2 for v in curve) or (simplified and any(len(v) != 2 for v in simplified)):
        raise ValueError("only planar curves can be plotted")
    xs, ys = zip(*curve)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6, 4.5))
        if delta:
            _tube(ax, curve, delta)
        ax.plot(xs, ys, "-o", color="0.35", ms=2.5, lw=0.9, label=f"input ({len(curve)} vertices)")
        if simplified:
            sx, sy = zip(*simplified)
            ax.plot(sx, sy, "-s", color="tab:red", ms=3.5, lw=1.4,
                    label=f"simplified ({len(simplified) - 1} links)")
        ax.set_aspect("equal", adjustable="datalim")
        ax.legend(loc="best", frameon=False)
        if title:
            ax.set_title(title)
        fig.tight_layout()
        path = Path(out)
        fig.savefig(path, format="svg")
        plt.close(fig)
    return path


def _tube(ax, curve, delta):
    """Shade the delta-neighbourhood of the curve as discs plus edge rectangles."""
    kw = dict(fc="0.88", ec="none", zorder=0)
    for x, y in curve:
        ax.add_patch(Circle((x, y), delta, **kw))
    for (x0, y0), (x1, y1) in zip(curve[:-1], curve[1:]):
        L = math.hypot(x1 - x0, y1 - y0)
        if L == 0:
            continue
        nx, ny = -(y1 - y0) / L * delta, (x1 - x0) / L * delta
        ax.add_patch(Polygon([(x0 + nx, y0 + ny), (x1 + nx, y1 + ny),
                              (x1 - nx, y1 - ny), (x0 - nx, y0 - ny)], closed=True, **kw))
