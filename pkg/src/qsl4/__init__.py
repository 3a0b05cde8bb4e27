"""Exact decision procedure for quadratic systems with invariant lines of total multiplicity 4."""
from .canon import AffineMap, apply_group, perturbed, representative
from .classify import Verdict, check_config, classify
from .comitants import ComitantBundle, comitants
from .epolys import epolys, gamma_construction
from .errors import QSL4Error
from .geometry import divisor_type, finite_singularities, infinite_singularities, intersection_cycle
from .lines import Line, LineSet, extract_lines, line_search_oracle, verify_line
from .parser import format_system, parse_system
from .system import QuadSystem

__all__ = [
    "AffineMap", "ComitantBundle", "Line", "LineSet", "QSL4Error", "QuadSystem", "Verdict",
    "apply_group", "check_config", "classify", "comitants", "divisor_type", "epolys", "extract_lines",
    "finite_singularities", "format_system", "gamma_construction", "infinite_singularities",
    "intersection_cycle", "line_search_oracle", "parse_system", "perturbed", "representative", "verify_line",
]
__version__ = "0.1.0"
