"""Exact cluster-algebra engine and numerical Stokes-graph toolkit for exact WKB analysis."""

__version__ = "0.1.0"
