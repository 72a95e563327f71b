"""
Core algorithms: syntax, substitution, reduction, the relational model,
definability, Taylor expansion and test expansion
"""

from .definability import (
    alpha_minus,
    alpha_plus,
    bag_plus,
    definable_set,
    member_by_test,
    member_by_test_full,
    preorder_probe,
    separating_context,
    separation,
)
from .expansion import (
    EllMap,
    LabelledExpr,
    SearchBudget,
    dom,
    ell_expand,
    expand_separator,
    find_ell_for_convergent,
    find_k_for_divergent,
    label,
    pad_with_identities,
    solvable,
    strip,
)
from .model import (
    STAR,
    DElem,
    Point,
    enumerate_D,
    enumerate_points,
    interp_member,
    interp_member_nf,
    interp_nonempty,
    length,
    parse_delem,
    parse_point,
    rank,
)
from .parser import parse
from .printer import print_expr, print_sum
from .reduce import (
    Fuel,
    Outcome,
    RedexKind,
    Strategy,
    UnknownReason,
    closed_test_outcome,
    converges,
    head_step,
    normalize,
    normalize_with,
    step,
)
from .subst import linear_subst, linear_subst_bag, linear_subst_sum, subst
from .syntax import (
    EPSILON,
    ZERO,
    App,
    Bag,
    Lam,
    Sum,
    TauBar,
    TermContext,
    Test,
    TestContext,
    Var,
    alpha_eq,
    degree,
    free_vars,
    msize,
    msize_lt,
    size,
)
from .taylor import simulation_check, taylor_contains, taylor_enumerate, taylor_member

__all__ = [
    "App",
    "Bag",
    "DElem",
    "EPSILON",
    "EllMap",
    "Fuel",
    "Lam",
    "LabelledExpr",
    "Outcome",
    "Point",
    "RedexKind",
    "STAR",
    "SearchBudget",
    "Strategy",
    "Sum",
    "TauBar",
    "TermContext",
    "Test",
    "TestContext",
    "UnknownReason",
    "Var",
    "ZERO",
    "alpha_eq",
    "alpha_minus",
    "alpha_plus",
    "bag_plus",
    "closed_test_outcome",
    "converges",
    "definable_set",
    "degree",
    "dom",
    "ell_expand",
    "enumerate_D",
    "enumerate_points",
    "expand_separator",
    "find_ell_for_convergent",
    "find_k_for_divergent",
    "free_vars",
    "head_step",
    "interp_member",
    "interp_member_nf",
    "interp_nonempty",
    "label",
    "length",
    "linear_subst",
    "linear_subst_bag",
    "linear_subst_sum",
    "member_by_test",
    "member_by_test_full",
    "msize",
    "msize_lt",
    "normalize",
    "normalize_with",
    "pad_with_identities",
    "parse",
    "parse_delem",
    "parse_point",
    "preorder_probe",
    "print_expr",
    "print_sum",
    "rank",
    "separating_context",
    "separation",
    "simulation_check",
    "size",
    "solvable",
    "step",
    "strip",
    "subst",
    "taylor_contains",
    "taylor_enumerate",
    "taylor_member",
]
