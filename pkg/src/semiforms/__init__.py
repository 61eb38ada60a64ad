"""Exact computation with families of forms on projective varieties.

The package computes distributive constants of polynomial families
(via Groebner bases over the rationals), exact heights, valuations and
Weil functions over Q, finiteness-hypothesis verdicts, and desk-scale
evidence: bounded-height solution searches and Weil-sum inequality
audits.  All verdicts are decided in exact rational arithmetic; floats
appear only in logarithmic report fields.
"""

from .delta import (
    INFINITE,
    DeltaReport,
    PositionBound,
    RestrictionBound,
    SubsetRecord,
    check_subgeneral_bound,
    check_subvariety_bound,
    distributive_constant,
    is_subgeneral_position,
    ratio_le,
)
from .errors import (
    BudgetExceededError,
    HomogeneityError,
    PolyParseError,
    SemiformsError,
    SpecError,
)
from .groebner import (
    EMPTY,
    Budget,
    GroebnerBasis,
    Ideal,
    ProjectiveVariety,
    groebner_basis,
    normal_form,
    proj_dim,
    vanishes_on,
)
from .heights import (
    INF,
    Place,
    PlaceSet,
    canonical_rep,
    is_s_integer,
    is_s_unit,
    log_s_height,
    norm_at,
    ord_at,
    poly_height,
    poly_height_exact,
    poly_norm_at,
    proj_height,
    proj_height_exact,
    s_height,
    s_unit_part,
    scalar_height,
    scalar_height_exact,
    tuple_norm_at,
    weil,
    weil_exact,
)
from .kernels import BACKEND, available_backends
from .poly import (
    HomogeneousPoly,
    PolyFamily,
    Polynomial,
    format_poly,
    grevlex_key,
    monomial_count,
    monomials_of_degree,
    parse_poly,
    parse_polynomial,
    scaling_matches,
)
from .search import (
    AuditMode,
    AuditReport,
    AuditRung,
    HypothesisVerdict,
    RatioReport,
    SearchParams,
    SolutionClass,
    StabilityTable,
    audit_coefficient,
    check_inequality,
    enumerate_s_points,
    equation_search,
    growth_stability,
    height_ratio_report,
    hypothesis_verdict,
    search_solutions,
    subspace_audit,
)

__version__ = "0.1.0"

__all__ = [
    "AuditMode",
    "AuditReport",
    "AuditRung",
    "BACKEND",
    "Budget",
    "BudgetExceededError",
    "DeltaReport",
    "EMPTY",
    "GroebnerBasis",
    "HomogeneityError",
    "HomogeneousPoly",
    "HypothesisVerdict",
    "INF",
    "INFINITE",
    "Ideal",
    "Place",
    "PlaceSet",
    "PolyFamily",
    "PolyParseError",
    "Polynomial",
    "PositionBound",
    "ProjectiveVariety",
    "RatioReport",
    "RestrictionBound",
    "SearchParams",
    "SemiformsError",
    "SolutionClass",
    "SpecError",
    "StabilityTable",
    "SubsetRecord",
    "audit_coefficient",
    "available_backends",
    "canonical_rep",
    "check_inequality",
    "check_subgeneral_bound",
    "check_subvariety_bound",
    "distributive_constant",
    "enumerate_s_points",
    "equation_search",
    "format_poly",
    "grevlex_key",
    "groebner_basis",
    "growth_stability",
    "height_ratio_report",
    "hypothesis_verdict",
    "is_s_integer",
    "is_s_unit",
    "is_subgeneral_position",
    "log_s_height",
    "monomial_count",
    "monomials_of_degree",
    "norm_at",
    "normal_form",
    "ord_at",
    "parse_poly",
    "parse_polynomial",
    "poly_height",
    "poly_height_exact",
    "poly_norm_at",
    "proj_dim",
    "proj_height",
    "proj_height_exact",
    "ratio_le",
    "s_height",
    "s_unit_part",
    "scalar_height",
    "scalar_height_exact",
    "scaling_matches",
    "search_solutions",
    "subspace_audit",
    "tuple_norm_at",
    "vanishes_on",
    "weil",
    "weil_exact",
    "__version__",
]
