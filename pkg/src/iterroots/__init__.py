"""Exact iterative roots of formal power series and of Riordan matrices.

The package computes order-n roots under composition for truncated series
x + c2*x^2 + ... and order-n roots under matrix multiplication for
unit-diagonal Riordan matrices, over pluggable exact coefficient rings
(integers, rationals, integers mod m), together with feasibility
diagnostics, exhaustive small-ring enumeration and brute-force verifiers.
"""

from .backend import backend_name
from .errors import (
    BranchingUnsupported,
    CompositionDomain,
    ContextMismatch,
    EnumerationBoundExceeded,
    InternalInconsistency,
    IterrootsError,
    NotAUnit,
    NotInSubstitutionGroup,
    NotRiordan,
    NotRiordanPair,
    OrderMismatch,
)
from .rings import (
    QQ,
    ZZ,
    RingCtx,
    RingElem,
    SolveOutcome,
    Zmod,
    arith,
    characteristic,
    parse_ring,
    solve_scalar,
)
from .series import TruncSeries, geometric, preset
from .riordan import RiordanMat, apply_vector, delete_row_col, extract, mat_mul
from .subst_roots import (
    FeasibilityLedger,
    FeasibilityStep,
    RootResult,
    branch_roots,
    iter_root,
    iter_root_substitution,
    mod2_square_root_classes,
    zroot_feasibility,
)
from .riordan_roots import (
    RiordanRootResult,
    riordan_power,
    riordan_root,
    stabilizer_cofactor,
    stabilizes,
)

__version__ = "0.1.0"

__all__ = [
    "BranchingUnsupported",
    "CompositionDomain",
    "ContextMismatch",
    "EnumerationBoundExceeded",
    "FeasibilityLedger",
    "FeasibilityStep",
    "InternalInconsistency",
    "IterrootsError",
    "NotAUnit",
    "NotInSubstitutionGroup",
    "NotRiordan",
    "NotRiordanPair",
    "OrderMismatch",
    "QQ",
    "RingCtx",
    "RingElem",
    "RiordanMat",
    "RiordanRootResult",
    "RootResult",
    "SolveOutcome",
    "TruncSeries",
    "ZZ",
    "Zmod",
    "apply_vector",
    "arith",
    "backend_name",
    "branch_roots",
    "characteristic",
    "delete_row_col",
    "extract",
    "geometric",
    "iter_root",
    "iter_root_substitution",
    "mat_mul",
    "mod2_square_root_classes",
    "parse_ring",
    "preset",
    "riordan_power",
    "riordan_root",
    "solve_scalar",
    "stabilizer_cofactor",
    "stabilizes",
    "zroot_feasibility",
]
