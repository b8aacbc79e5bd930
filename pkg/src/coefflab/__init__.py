"""coefflab: Toeplitz and Hankel coefficient determinants on normalized
analytic function classes, with recomputed bound chains and seeded search."""

from .series import (
    DEFAULT_ORDER,
    TruncatedSeries,
    ZeroConstantTerm,
    series_mul,
    series_reciprocal,
    truncate,
    unit,
)
from .functionals import (
    CoefficientWindow,
    DeterminantId,
    SUPPORTED_CLOSED_FORM_IDS,
    UnsupportedId,
    WindowTooShort,
    closed_form,
    det_value,
    hankel_det,
    hankel_matrix,
    toeplitz_det,
    toeplitz_matrix,
)
from .class_u import (
    CATALOG_NAMES,
    CatalogEntry,
    DefectReport,
    EvaluationFailure,
    FeasibilityCheck,
    SchwarzParams,
    UParamPoint,
    UnknownName,
    catalog,
    membership_max_defect,
    named_evaluator,
    project_feasible,
    schwarz_feasible,
    u_coefficients,
)
from .bound_calculus import (
    BoundChain,
    LEDGER,
    LedgerConstant,
    THEOREM_IDS,
    UnknownConstant,
    UnknownTheorem,
    VerificationReport,
    constant,
    theorem_chain,
    verify_stated_values,
)
from .search import (
    InfeasibleStart,
    Objective,
    SearchConfig,
    SearchResult,
    campaign,
    catalog_witness,
    objective_reference,
    refine,
    sample_point,
    witness_starts,
)

__version__ = "0.1.0"

__all__ = [
    "BoundChain",
    "CATALOG_NAMES",
    "CatalogEntry",
    "CoefficientWindow",
    "DEFAULT_ORDER",
    "DefectReport",
    "DeterminantId",
    "EvaluationFailure",
    "FeasibilityCheck",
    "InfeasibleStart",
    "LEDGER",
    "LedgerConstant",
    "Objective",
    "SUPPORTED_CLOSED_FORM_IDS",
    "SchwarzParams",
    "SearchConfig",
    "SearchResult",
    "THEOREM_IDS",
    "TruncatedSeries",
    "UParamPoint",
    "UnknownConstant",
    "UnknownName",
    "UnknownTheorem",
    "UnsupportedId",
    "VerificationReport",
    "WindowTooShort",
    "ZeroConstantTerm",
    "campaign",
    "catalog",
    "catalog_witness",
    "closed_form",
    "constant",
    "det_value",
    "hankel_det",
    "hankel_matrix",
    "membership_max_defect",
    "named_evaluator",
    "objective_reference",
    "project_feasible",
    "refine",
    "sample_point",
    "schwarz_feasible",
    "series_mul",
    "series_reciprocal",
    "theorem_chain",
    "toeplitz_det",
    "toeplitz_matrix",
    "truncate",
    "u_coefficients",
    "unit",
    "verify_stated_values",
    "witness_starts",
]
