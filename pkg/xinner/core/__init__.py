"""
Core xinner modules

This package contains the algebra kernel: scalars, the rewrite engine,
presentations and the checks built on them.
"""

from .presentation import AlgebraPresentation, Kind, parse_presentation
from .rewrite import RewriteSystem
from .scalar import FIELD, q
from .utils import configure_logging, load_config

__all__ = [
    "AlgebraPresentation",
    "FIELD",
    "Kind",
    "RewriteSystem",
    "configure_logging",
    "load_config",
    "parse_presentation",
    "q",
]
