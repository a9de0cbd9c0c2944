"""wqometer: a symbolic calculator for the ordinal invariants of
well-quasi-orders (maximal order type, height, width), with a rewrite
system for elementary expressions, sound bounds for finite powersets,
and a brute-force oracle on finite posets for cross-validation."""

from .errors import (
    HypothesisNotMet,
    ParseError,
    TooLargeError,
    UnsupportedComputation,
    WqometerError,
)
from .ordinal import (
    ONE,
    OMEGA,
    ZERO,
    Ordinal,
    add,
    cmp,
    decompose_omega,
    hat,
    hat_nat_sum,
    hstar,
    left_subtract,
    mul,
    nat_prod,
    nat_sum,
    odot,
    omega_pow,
    parse_ordinal,
    pm,
    sum_omega_powers,
    two_pow,
)
from .expr import (
    CartProd,
    DisjUnion,
    Gamma,
    LexProd,
    LexSum,
    Multisets,
    MultisetsN,
    Ord,
    Pf,
    PfPlus,
    Phi,
    Sim,
    SimExt,
    Words,
    WqoExpr,
    expr_size,
    is_elementary,
    is_finite_expr,
    is_omega_elementary,
    parse_expr,
    print_expr,
)
from .rewrite import (
    RewriteStep,
    RewriteTrace,
    eliminate_pf,
    is_normal,
    normalize_elementary,
    step,
)
from .engine import (
    InvariantReport,
    InvariantResult,
    invariants,
    pf_bounds,
    pf_phi_invariants,
    phi_invariants,
    sim_invariants,
    weak_mot,
)
from .oracle import (
    FinitePoset,
    build,
    check_engine,
    iso,
    mot,
    height,
    pf_poset,
    quotient,
    random_quasi_order,
    width,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "WqometerError",
    "ParseError",
    "HypothesisNotMet",
    "UnsupportedComputation",
    "TooLargeError",
    # ordinals
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "parse_ordinal",
    "cmp",
    "add",
    "left_subtract",
    "mul",
    "omega_pow",
    "nat_sum",
    "nat_prod",
    "hat_nat_sum",
    "decompose_omega",
    "two_pow",
    "pm",
    "hat",
    "hstar",
    "odot",
    "sum_omega_powers",
    # expressions
    "WqoExpr",
    "Ord",
    "Gamma",
    "DisjUnion",
    "LexSum",
    "CartProd",
    "LexProd",
    "Words",
    "Multisets",
    "MultisetsN",
    "Pf",
    "PfPlus",
    "Phi",
    "Sim",
    "SimExt",
    "parse_expr",
    "print_expr",
    "expr_size",
    "is_elementary",
    "is_omega_elementary",
    "is_finite_expr",
    # rewriting
    "RewriteStep",
    "RewriteTrace",
    "step",
    "is_normal",
    "normalize_elementary",
    "eliminate_pf",
    # engine
    "InvariantResult",
    "InvariantReport",
    "invariants",
    "pf_bounds",
    "weak_mot",
    "phi_invariants",
    "pf_phi_invariants",
    "sim_invariants",
    # oracle
    "FinitePoset",
    "build",
    "quotient",
    "mot",
    "height",
    "width",
    "iso",
    "pf_poset",
    "random_quasi_order",
    "check_engine",
]
