"""Deterministic SVG 1.1 rendering of polygons and PCA score scatters.

Output is built as plain text so repeated runs are byte-identical. Data y is
drawn upward (negated in SVG space).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .geometry import Configuration, centroid

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


@dataclass(frozen=True)
class SvgStyle:
    width: int = 480
    height: int = 480
    stroke_width: float = 0.004
    marker_radius: float = 0.008
    font_size: float = 0.03
    margin: float = 0.05
    show_centroids: bool = True


def _num(x: float) -> str:
    s = f"{float(x):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def _view_box(points: np.ndarray, margin: float) -> tuple[float, float, float, float, float]:
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = hi - lo
    extent = float(max(span.max(), 1e-12))
    span = np.where(span > 0, span, extent)
    pad = margin * span
    x0, x1 = lo[0] - pad[0], hi[0] + pad[0]
    y0, y1 = lo[1] - pad[1], hi[1] + pad[1]
    # SVG y axis points down
    return x0, -y1, x1 - x0, y1 - y0, extent


def _header(box, style: SvgStyle) -> list[str]:
    x, y, w, h, _ = box
    return [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{style.width}" height="{style.height}" '
        f'viewBox="{_num(x)} {_num(y)} {_num(w)} {_num(h)}" preserveAspectRatio="xMidYMid meet">',
    ]


def polygons_svg(configs: Sequence[Configuration], style: SvgStyle | None = None) -> str:
    """One closed path per configuration plus a circle at each mean centroid."""
    style = style or SvgStyle()
    if not configs:
        raise ValueError("nothing to draw")
    pts = np.vstack([c.coords[:, :2] for c in configs])
    box = _view_box(pts, style.margin)
    scale = box[4]
    lines = _header(box, style)
    for i, conf in enumerate(configs):
        color = PALETTE[i % len(PALETTE)]
        xy = conf.coords[:, :2]
        d = "M " + " L ".join(f"{_num(x)} {_num(-y)}" for x, y in xy) + " Z"
        lines.append(
            f'<path id="{_escape(conf.id)}" d="{d}" fill="none" stroke="{color}" '
            f'stroke-width="{_num(style.stroke_width * scale)}"/>'
        )
    if style.show_centroids:
        for i, conf in enumerate(configs):
            cx, cy = centroid(conf).values[:2]
            lines.append(
                f'<circle cx="{_num(cx)}" cy="{_num(-cy)}" r="{_num(style.marker_radius * scale)}" '
                f'fill="{PALETTE[i % len(PALETTE)]}"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def scores_svg(scores: np.ndarray, labels: Sequence[str], style: SvgStyle | None = None) -> str:
    """Labelled scatter of the first two score columns (PC1 horizontal)."""
    style = style or SvgStyle()
    S = np.asarray(scores, dtype=float)
    if S.ndim != 2 or S.shape[0] == 0:
        raise ValueError("nothing to draw")
    if S.shape[1] == 1:
        S = np.column_stack([S[:, 0], np.zeros(S.shape[0])])
    S = S[:, :2]
    box = _view_box(S, style.margin)
    scale = box[4]
    lines = _header(box, style)
    x0, y0, w, h, _ = box
    sw = _num(style.stroke_width * scale / 2)
    lines.append(f'<line x1="{_num(x0)}" y1="0" x2="{_num(x0 + w)}" y2="0" stroke="#999999" stroke-width="{sw}"/>')
    lines.append(f'<line x1="0" y1="{_num(y0)}" x2="0" y2="{_num(y0 + h)}" stroke="#999999" stroke-width="{sw}"/>')
    for (x, y), label in zip(S, labels):
        lines.append(f'<circle cx="{_num(x)}" cy="{_num(-y)}" r="{_num(style.marker_radius * scale)}" fill="{PALETTE[0]}"/>')
        lines.append(
            f'<text x="{_num(x)}" y="{_num(-y)}" font-size="{_num(style.font_size * scale)}" '
            f'dx="{_num(style.marker_radius * scale * 1.5)}">{_escape(label)}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def emit_svg(svg_text: str, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(svg_text, encoding="utf-8")
    return path
