"""Numerical Stokes graphs of ``Q0(z) dz^2`` on the Riemann sphere."""

from .critical import CriticalSet, Pole, critical_points, residue
from .graph import (
    DEGENERATE_STRIP,
    HALF_PLANE,
    STRIP,
    Region,
    StokesGraphData,
    build_graph,
    graph_to_triangulation,
    marked_points,
    region_summary,
)
from .integrate import Termination, TraceOptions, Trajectory, start_directions, trace, trace_all
from .svg import graph_svg, write_svg
from .sweep import (
    RotationResult,
    SaddleEvent,
    degenerate_directions,
    detect_saddle,
    numeric_residue_check,
    residue_from_roots,
    rotate,
)

__all__ = [
    "CriticalSet", "Pole", "critical_points", "residue",
    "DEGENERATE_STRIP", "HALF_PLANE", "STRIP", "Region", "StokesGraphData", "build_graph",
    "graph_to_triangulation", "marked_points", "region_summary",
    "Termination", "TraceOptions", "Trajectory", "start_directions", "trace", "trace_all",
    "graph_svg", "write_svg",
    "RotationResult", "SaddleEvent", "degenerate_directions", "detect_saddle",
    "numeric_residue_check", "residue_from_roots", "rotate",
]
