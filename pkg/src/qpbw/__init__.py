"""Exact-arithmetic toolkit for PBW checking of group-twisted quantum
polynomial ring deformations: cyclotomic scalars, finite matrix group
actions, deformation parameters, a straightening-rule rewriting engine,
and two cross-validating PBW deciders."""

from .errors import (
    FieldMismatchError,
    GroupTooLargeError,
    IncompatibleActionError,
    InputError,
    QpbwError,
)
from .scalars import (
    CycField,
    CycScalar,
    cyclotomic_field,
    cyclotomic_polynomial,
    euler_phi,
    multiplicative_order,
    parse_scalar,
    root_of_unity,
)
from .groups import (
    GroupData,
    GroupElement,
    Lemma21Violation,
    QCompatViolation,
    QMatrix,
    act,
    check_q_compatibility,
    close_group,
    identity_matrix,
    lemma21_diagnostics,
    mat_inverse,
    mat_mul,
    qminor,
)
from .kappa import KappaMap, KappaViolation, validate_kappa
from .rewriting import (
    EQUAL,
    GREATER,
    INCOMPARABLE,
    LESS,
    FreeElement,
    NormalMonomial,
    OverlapResult,
    ReductionSystem,
    element_str,
    enumerate_overlaps,
    is_irreducible_word,
    order_compare,
    reduce_element,
    resolve_overlap,
    t_letter,
    v_letter,
    word_str,
    word_to_monomial,
)
from .pbw import (
    PbwReport,
    Violation,
    check_condition1,
    check_condition2,
    check_condition3,
    check_condition4,
    check_pbw_oracle,
    check_pbw_theorem,
    reachable_monomial_count,
    report_to_doc,
)
from .parsing import ExprError, parse_expr_text, parse_scalar_text
from .problem import Diagnostic, ProblemError, ProblemFile, parse_problem

__version__ = "0.1.0"
