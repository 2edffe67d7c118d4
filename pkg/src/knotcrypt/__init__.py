"""Knot diagrams, DT codes, tangle mutation, Jones polynomials and a
knot-based hybrid encryption protocol built on them."""

__version__ = "0.1.0"

from .codes import DTCode, canonical_dt, dt_connected_sum, extract_dt, format_dt, parse_dt, strip_suffix
from .diagram import (
    Diagram,
    connected_sum,
    is_alternating,
    is_isomorphic,
    mirror_diagram,
    parse_pd,
    format_pd,
    unknot,
    validate_diagram,
)
from .errors import KnotCryptError
from .invariants import jones, kauffman_bracket, writhe
from .moves import MoveKind, MoveSpec, apply_reidemeister
from .polynomial import LaurentPolynomial, divide_exact
from .table import default_table, load_table
from .tangles import RotationKind, TanglePresentation, close_presentation, mutate, rotate_tangle
