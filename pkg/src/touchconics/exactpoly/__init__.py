"""Exact polynomial arithmetic: multivariate polynomials, binary forms, conics, roots."""

from .binary import (
    BinaryForm,
    discriminant_quadratic,
    is_square_by_gcd,
    line_parameterization,
    perfect_square_witness,
    restrict_to_line,
    resultant,
    square_decomposition,
)
from .conic import ConicForm, det3, det_conic
from .fields import QuadraticNumber
from .multipoly import MultiPoly, PolyParseError
from .univariate import isolate_real_roots

__all__ = [
    "BinaryForm",
    "ConicForm",
    "MultiPoly",
    "PolyParseError",
    "QuadraticNumber",
    "det3",
    "det_conic",
    "discriminant_quadratic",
    "is_square_by_gcd",
    "isolate_real_roots",
    "line_parameterization",
    "perfect_square_witness",
    "restrict_to_line",
    "resultant",
    "square_decomposition",
]
