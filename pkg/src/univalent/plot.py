"""Two-panel SVG: a polar grid in the domain disk and its image under ``f``."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .analytic_fn import AnalyticFn, Disk, evaluate
from .errors import DomainError

RING_COLOR = "#1f77b4"
SPOKE_COLOR = "#d62728"


@dataclass(frozen=True)
class PlotSpec:
    rings: int = 8
    spokes: int = 16
    disk: Disk = Disk(0.9)
    samples: int = 200
    width: int = 960
    height: int = 480

    def __post_init__(self):
        if min(self.rings, self.spokes, self.samples) < 1:
            raise DomainError("rings, spokes and samples must be >= 1")
        if self.width < 64 or self.height < 64:
            raise DomainError("canvas must be at least 64 x 64")


def grid_curves(spec: PlotSpec) -> list[tuple[str, np.ndarray]]:
    """Sampled rings and spokes of the domain grid, as ``(kind, points)``."""
    r = spec.disk.radius
    theta = 2 * np.pi * np.arange(spec.samples + 1) / spec.samples
    circle = np.cos(theta) + 1j * np.sin(theta)
    curves = [("ring", r * i / spec.rings * circle) for i in range(1, spec.rings + 1)]
    t = r * np.arange(spec.samples + 1) / spec.samples
    for j in range(spec.spokes):
        phi = 2 * np.pi * j / spec.spokes
        curves.append(("spoke", t * complex(np.cos(phi), np.sin(phi))))
    return curves


def _path(points: np.ndarray, x0: float, y0: float, scale: float, cx: float, cy: float) -> str:
    xs = x0 + (points.real - cx) * scale
    ys = y0 - (points.imag - cy) * scale
    head = f"M{xs[0]:.3f},{ys[0]:.3f}"
    return head + "".join(f" L{x:.3f},{y:.3f}" for x, y in zip(xs[1:], ys[1:]))


def _panel(curves, left: float, top: float, w: float, h: float, pad: float = 16.0) -> list[str]:
    allpts = np.concatenate([c for _, c in curves])
    lo_x, hi_x = allpts.real.min(), allpts.real.max()
    lo_y, hi_y = allpts.imag.min(), allpts.imag.max()
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-12)
    scale = min(w - 2 * pad, h - 2 * pad) / span
    cx, cy = 0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)
    x0, y0 = left + 0.5 * w, top + 0.5 * h
    out = [f'<rect x="{left:.3f}" y="{top:.3f}" width="{w:.3f}" height="{h:.3f}" '
           'fill="white" stroke="#888888" stroke-width="1"/>']
    for kind, pts in curves:
        color = RING_COLOR if kind == "ring" else SPOKE_COLOR
        out.append(f'<path class="{kind}" d="{_path(pts, x0, y0, scale, cx, cy)}" '
                   f'fill="none" stroke="{color}" stroke-width="1"/>')
    return out


def render_svg(f: AnalyticFn, spec: PlotSpec, title: str = "") -> str:
    """SVG 1.1 text for the domain grid (left) and its image under ``f`` (right).

    Output depends only on the inputs: coordinates are printed with three
    decimals and curves are emitted in a fixed order.
    """
    domain = grid_curves(spec)
    image = [(kind, np.asarray(evaluate(f, pts))) for kind, pts in domain]
    half = spec.width / 2
    body = _panel(domain, 0.0, 0.0, half, spec.height) + _panel(image, half, 0.0, half, spec.height)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f"<title>{escape(title)}</title>",
        '<g id="domain">', *body[: len(domain) + 1], "</g>",
        '<g id="image">', *body[len(domain) + 1:], "</g>",
        "</svg>",
    ]
    return "\n".join(lines) + "\n"
