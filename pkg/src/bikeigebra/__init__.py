"""Twisted virtual bikeigebras and the coloring invariant of twisted virtual handlebody-links."""

from .algebra import (
    AXIOM_LABELS,
    UNDEFINED,
    AxiomViolation,
    OperationTable,
    PartialProduct,
    TwistedVirtualBikeigebra,
    TwistMap,
    alexander_candidate,
    check_axiom,
    klein_four,
    verify_all,
)
from .blockmatrix import format_matrix, parse_matrix, read_matrix
from .coloring import brute_force_count, count_colorings, is_colorable, list_colorings
from .diagram import (
    Diagram,
    EquationSystem,
    Tangle,
    diagram_to_equations,
    format_diagram,
    parse_diagram,
    parse_equations,
)
from .moves import BijectionReport, MoveTangle, builtin_moves, check_all_moves, check_move
from .search import (
    CensusEntry,
    SearchFilter,
    enumerate_all,
    enumerate_bikei,
    extend_products,
    extend_virtual,
)

__version__ = "0.1.0"
