"""Exact construction and certification of integer symplectic matrices whose
leading eigenvalue is bi-Perron but not simple."""

from .errors import BiPerronError, StageError
from .exactmat import IntMatrix, SymplecticForm, FormVariant, charpoly, det, is_symplectic
from .intpoly import (
    IntPoly,
    SquareFreeDecomposition,
    all_roots_nonsimple,
    compose_identity_rhs,
    gcd,
    is_palindromic,
    is_reciprocal,
    square_free_decomposition,
    sturm_count,
)
from .rootcert import (
    AnnulusCertificate,
    IsolatingInterval,
    Mode,
    Verdict,
    certify_biperron,
    classify_simplicity,
    count_roots_in_disk,
    isolate_real_roots,
    leading_eigenvalue_bracket,
)

__version__ = "0.1.0"

__all__ = [
    "BiPerronError",
    "StageError",
    "IntMatrix",
    "SymplecticForm",
    "FormVariant",
    "charpoly",
    "det",
    "is_symplectic",
    "IntPoly",
    "SquareFreeDecomposition",
    "all_roots_nonsimple",
    "compose_identity_rhs",
    "gcd",
    "is_palindromic",
    "is_reciprocal",
    "square_free_decomposition",
    "sturm_count",
    "AnnulusCertificate",
    "IsolatingInterval",
    "Mode",
    "Verdict",
    "certify_biperron",
    "classify_simplicity",
    "count_roots_in_disk",
    "isolate_real_roots",
    "leading_eigenvalue_bracket",
]
