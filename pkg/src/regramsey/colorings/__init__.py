"""Coloring constructions, the orbit semi-metrics, and regressivity checks."""
from .base import (Coloring, Violation, constant_coloring, export_coloring, from_matrix,
                   load_coloring, verify_regressive)
from .constructions import (base10_color, base10_interval_coloring, base_s_color, base_s_coloring,
                            small_interval_coloring, stitched_coloring, zero_padded)
from .ramsey42 import load_graph, parse_hex_graph
from .semimetric import SemiMetricContext, cg_coloring, cg_context

__all__ = [
    "Coloring", "SemiMetricContext", "Violation", "base10_color", "base10_interval_coloring",
    "base_s_color", "base_s_coloring", "cg_coloring", "cg_context", "constant_coloring",
    "export_coloring", "from_matrix", "load_coloring", "load_graph", "parse_hex_graph",
    "small_interval_coloring", "stitched_coloring", "verify_regressive", "zero_padded",
]
