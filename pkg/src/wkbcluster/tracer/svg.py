"""Static SVG pictures of Stokes graphs.

Edges are drawn as polylines, turning points as crosses and poles as dots;
everything is clipped to a square window around the finite critical points.
"""

from __future__ import annotations

from typing import List, Optional

from .graph import StokesGraphData

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"]


def _window(G: StokesGraphData) -> float:
    return 2.0 * G.critical.scale + 1.0


def _clip(samples, L) -> List[List[complex]]:
    """Split a polyline into the runs that stay inside ``[-L, L]^2``."""
    runs, cur = [], []
    for z in samples:
        if abs(z.real) <= L and abs(z.imag) <= L:
            cur.append(z)
        elif cur:
            cur.append(z)
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def graph_svg(G: StokesGraphData, size: int = 480, title: Optional[str] = None) -> str:
    L = _window(G)
    k = size / (2 * L)

    def xy(z: complex):
        x = (min(max(z.real, -1.2 * L), 1.2 * L) + L) * k
        y = (L - min(max(z.imag, -1.2 * L), 1.2 * L)) * k
        return f"{x:.2f},{y:.2f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>',
           f'<clipPath id="win"><rect width="{size}" height="{size}"/></clipPath>',
           '<g clip-path="url(#win)" fill="none" stroke-width="1.5">']
    saddle = {e for s in G.saddles for e in s.edges}
    for e in G.edges:
        color = "#000000" if (e.start, e.dir) in saddle else _COLORS[e.start % len(_COLORS)]
        for run in _clip(e.samples, L):
            pts = " ".join(xy(z) for z in run)
            out.append(f'<polyline points="{pts}" stroke="{color}"/>')
    out.append("</g>")
    r = max(3.0, size / 120)
    for a in G.critical.turning_points:
        x, y = (float(v) for v in xy(a).split(","))
        out.append(f'<path d="M{x - r},{y - r}L{x + r},{y + r}M{x - r},{y + r}L{x + r},{y - r}" '
                   f'stroke="black" stroke-width="2"/>')
    for p in G.critical.finite_poles():
        x, y = (float(v) for v in xy(p.z).split(","))
        out.append(f'<circle cx="{x}" cy="{y}" r="{r}" fill="black"/>')
    label = title if title is not None else f"theta = {G.theta:.6g}"
    out.append(f'<text x="8" y="18" font-family="sans-serif" font-size="13">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(G: StokesGraphData, path: str, **kw) -> None:
    with open(path, "w") as fh:
        fh.write(graph_svg(G, **kw))
