"""Grid diagrams of links, their Conway functions and grid homology."""

from .exceptions import (
    GridLinkError,
    IllegalMove,
    InvalidGrid,
    LemmaViolation,
    NotDivisible,
    ResourceLimit,
    WeightAmbiguous,
)
from .grid import GridDiagram, GridMove, apply_move, load_grid, parse_grid, validate
from .laurent import LaurentPoly, RationalFn, determinant, divide_exact

__version__ = "0.1.0"

__all__ = [
    "GridDiagram",
    "GridLinkError",
    "GridMove",
    "IllegalMove",
    "InvalidGrid",
    "LaurentPoly",
    "LemmaViolation",
    "NotDivisible",
    "RationalFn",
    "ResourceLimit",
    "WeightAmbiguous",
    "apply_move",
    "determinant",
    "divide_exact",
    "load_grid",
    "parse_grid",
    "validate",
]
