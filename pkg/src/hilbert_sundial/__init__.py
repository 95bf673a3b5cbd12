"""
Exact Hilbert functions of unions of lines and 3-dimensional sundials in
P^n over a prime field, with the residual/trace machinery used to prove
they are bipolynomial.
"""

from .errors import HilbertSundialError
from .expectations import (
    compute_trs,
    counting_data,
    expected_hilbert_function,
    expected_ideal_dim,
    expected_value,
    verify_appendix_a1,
    verify_appendix_a2,
)
from .geometry import (
    Line,
    LinearSubspace,
    ProjectivePoint,
    SundialData,
    degeneration_fiber,
    make_generic_sundial,
    ruling_line,
    span,
)
from .gfp import DEFAULT_PRIME, RowEchelon, rank
from .monomials import MonomialBasis, basis
from .schemes import (
    DegenerateConic,
    DoublePointRestricted,
    LineComponent,
    Scheme,
    SimplePoint,
    Sundial,
    condition_matrix,
    hilbert_function,
    ideal_dimension,
    prefix_ideal_dimensions,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRIME", "DegenerateConic", "DoublePointRestricted", "HilbertSundialError", "Line",
    "LineComponent", "LinearSubspace", "MonomialBasis", "ProjectivePoint", "RowEchelon",
    "Scheme", "SimplePoint", "Sundial", "SundialData", "basis", "compute_trs",
    "condition_matrix", "counting_data", "degeneration_fiber", "expected_hilbert_function",
    "expected_ideal_dim", "expected_value", "hilbert_function", "ideal_dimension",
    "make_generic_sundial", "prefix_ideal_dimensions", "rank", "ruling_line", "span",
    "verify_appendix_a1", "verify_appendix_a2",
]
