import itertools
import random

import pytest

from qpbw import (
    IncompatibleActionError,
    InputError,
    KappaMap,
    QMatrix,
    ReductionSystem,
    check_condition1,
    check_condition2,
    check_condition3,
    check_condition4,
    check_pbw_oracle,
    check_pbw_theorem,
    close_group,
    cyclotomic_field,
    identity_matrix,
    reachable_monomial_count,
    report_to_doc,
)
from instances import (
    diagonal_matrix,
    perturb,
    sample_pool,
    signed_perm_matrix,
    swap01,
)


def monomial_count(n, degree):
    """Independent stars-and-bars oracle: monomials of degree <= degree."""
    return sum(
        1
        for m in itertools.product(range(degree + 1), repeat=n)
        if sum(m) <= degree
    )


@pytest.fixture
def F1():
    return cyclotomic_field(1)


@pytest.fixture
def F4():
    return cyclotomic_field(4)


def trivial_group(fld, n):
    return close_group([identity_matrix(n, fld)])


def lie_kappa(fld, n, brackets):
    zero = fld.zero
    return KappaMap(n, fld, {0: {p: (zero, w) for p, w in brackets.items()}})


def test_condition1_zero_kappa(F4):
    q = QMatrix.from_upper(2, F4, {(0, 1): F4.zeta()})
    group = close_group([diagonal_matrix(F4, [F4.zeta(), -F4.one])])
    assert check_condition1(q, group, KappaMap.zero(2, F4)) == []


def test_condition1_trivial_group_any_kappa(F4):
    # with h = e the minor sum collapses to the left-hand side itself
    q = QMatrix.from_upper(2, F4, {(0, 1): F4.zeta()})
    group = trivial_group(F4, 2)
    kappa = KappaMap(2, F4, {0: {(0, 1): (F4.scalar(3), (F4.one, F4.zeta()))}})
    assert check_condition1(q, group, kappa) == []


def test_condition1_flags_noninvariant_linear_part():
    F3 = cyclotomic_field(3)
    q = QMatrix.from_upper(2, F3, {})
    group = close_group([diagonal_matrix(F3, [F3.zeta(), F3.zeta()])])
    kappa = KappaMap(2, F3, {0: {(0, 1): (F3.zero, (F3.one, F3.zero))}})
    violations = check_condition1(q, group, kappa)
    assert violations and all(v.condition == "C1-lin" for v in violations)
    # n = 2: the other conditions are vacuous, and the oracle must agree
    theorem = check_pbw_theorem(q, group, kappa)
    oracle = check_pbw_oracle(q, group, kappa)
    assert theorem.verdict == oracle.verdict == "not-PBW"
    assert {v.condition for v in theorem.violations} <= {"C1-const", "C1-lin"}


def test_condition2_vacuous_below_three_variables(F4):
    q = QMatrix.from_upper(2, F4, {(0, 1): F4.zeta()})
    group = trivial_group(F4, 2)
    kappa = KappaMap(2, F4, {0: {(0, 1): (F4.zero, (F4.one, F4.one))}})
    assert check_condition2(q, group, kappa) == []


def test_condition2_empty_without_linear_part(F4):
    q = QMatrix.from_upper(3, F4, {})
    group = trivial_group(F4, 3)
    kappa = KappaMap(3, F4, {0: {(0, 1): (F4.one, (F4.zero,) * 3)}})
    assert check_condition2(q, group, kappa) == []


def test_jacobi_failure_is_flagged_by_composition_condition(F1):
    # non-Jacobi bracket: [v1,v2]=v3, [v1,v3]=v1, [v2,v3]=v2.
    # In the commutative, trivial-group case the degree-2 identity is
    # identically zero; the failure surfaces in the composition condition,
    # exactly as in the classical enveloping-algebra story.
    n = 3
    one, zero = F1.one, F1.zero
    e1, e2, e3 = (one, zero, zero), (zero, one, zero), (zero, zero, one)
    q = QMatrix.from_upper(n, F1, {})
    group = trivial_group(F1, n)
    kappa = lie_kappa(F1, n, {(0, 1): e3, (0, 2): e1, (1, 2): e2})
    assert check_condition2(q, group, kappa) == []
    assert check_condition3(q, group, kappa) != []
    theorem = check_pbw_theorem(q, group, kappa)
    oracle = check_pbw_oracle(q, group, kappa)
    assert theorem.verdict == oracle.verdict == "not-PBW"


def test_enveloping_algebras_pass(F1):
    n = 3
    one, zero = F1.one, F1.zero
    e3 = (zero, zero, one)
    q = QMatrix.from_upper(n, F1, {})
    group = trivial_group(F1, n)
    heisenberg = lie_kappa(F1, n, {(0, 1): e3})
    sl2 = lie_kappa(
        F1,
        n,
        {
            (0, 1): e3,
            (0, 2): (F1.scalar(-2), zero, zero),
            (1, 2): (zero, F1.scalar(2), zero),
        },
    )
    for kappa in (heisenberg, sl2):
        assert check_pbw_theorem(q, group, kappa).verdict == "PBW"
        assert check_pbw_oracle(q, group, kappa).verdict == "PBW"


def test_condition3_weyl_case_passes(F1):
    # q == 1, trivial group, constants only: the right side pairs v - v
    n = 3
    q = QMatrix.from_upper(n, F1, {})
    group = trivial_group(F1, n)
    kappa = KappaMap(
        n, F1, {0: {(0, 1): (F1.one, (F1.zero,) * n), (1, 2): (F1.scalar(4), (F1.zero,) * n)}}
    )
    assert check_condition3(q, group, kappa) == []
    assert check_pbw_theorem(q, group, kappa).verdict == "PBW"


def test_quantum_constant_obstruction(F4):
    # n=3, trivial group, constants only, q12*q13 != 1: not PBW, with a
    # condition-3 witness at (i,j,k) = (1,2,3) and the v3 v2 v1 overlap
    n = 3
    q = QMatrix.from_upper(n, F4, {(0, 1): F4.zeta()})
    group = trivial_group(F4, n)
    kappa = KappaMap(n, F4, {0: {(1, 2): (F4.one, (F4.zero,) * n)}})
    v3 = check_condition3(q, group, kappa)
    assert any(v.witness == {"g": 0, "i": 0, "j": 1, "k": 2} for v in v3)
    theorem = check_pbw_theorem(q, group, kappa)
    oracle = check_pbw_oracle(q, group, kappa)
    assert theorem.verdict == oracle.verdict == "not-PBW"
    assert any(v.witness.get("word") == (2, 1, 0) for v in oracle.violations)


def test_condition4_needs_both_parts(F4):
    n = 3
    q = QMatrix.from_upper(n, F4, {})
    group = trivial_group(F4, n)
    const_only = KappaMap(n, F4, {0: {(0, 1): (F4.one, (F4.zero,) * n)}})
    lin_only = KappaMap(n, F4, {0: {(0, 1): (F4.zero, (F4.zero, F4.zero, F4.one))}})
    assert check_condition4(q, group, const_only) == []
    assert check_condition4(q, group, lin_only) == []


def test_pruned_sums_match_unpruned():
    for instance in sample_pool(seed=314, count=25):
        pruned3 = check_condition3(instance.q, instance.group, instance.kappa, True)
        full3 = check_condition3(instance.q, instance.group, instance.kappa, False)
        pruned4 = check_condition4(instance.q, instance.group, instance.kappa, True)
        full4 = check_condition4(instance.q, instance.group, instance.kappa, False)
        assert [(v.condition, v.witness) for v in pruned3] == [
            (v.condition, v.witness) for v in full3
        ]
        assert [(v.condition, v.witness) for v in pruned4] == [
            (v.condition, v.witness) for v in full4
        ]


def test_zero_kappa_is_always_pbw(F4):
    q = QMatrix.from_upper(2, F4, {(0, 1): -F4.one})
    group = close_group([signed_perm_matrix(F4, swap01(2), [F4.one, F4.one])])
    kappa = KappaMap.zero(2, F4)
    theorem = check_pbw_theorem(q, group, kappa)
    oracle = check_pbw_oracle(q, group, kappa)
    assert theorem.verdict == oracle.verdict == "PBW"
    assert theorem.statistics["condition1"] == 4
    assert oracle.statistics["overlaps"] == 18


def test_swap_with_constant_matches_oracle(F4):
    q = QMatrix.from_upper(2, F4, {(0, 1): -F4.one})
    group = close_group([signed_perm_matrix(F4, swap01(2), [F4.one, F4.one])])
    kappa = KappaMap(2, F4, {1: {(0, 1): (F4.one, (F4.zero, F4.zero))}})
    theorem = check_pbw_theorem(q, group, kappa)
    oracle = check_pbw_oracle(q, group, kappa)
    assert theorem.verdict == oracle.verdict


def test_t_family_overlaps_never_obstruct():
    for instance in sample_pool(seed=99, count=20):
        oracle = check_pbw_oracle(instance.q, instance.group, instance.kappa)
        for violation in oracle.violations:
            word = violation.witness["word"]
            # obstruction words always come from the v v v or t v v family
            assert word[1] >= 0 and word[2] >= 0


def test_theorem_matches_oracle_randomized():
    for instance in sample_pool(seed=2718, count=40):
        theorem = check_pbw_theorem(instance.q, instance.group, instance.kappa)
        oracle = check_pbw_oracle(instance.q, instance.group, instance.kappa)
        assert theorem.verdict == oracle.verdict, instance.label


def test_basis_count_on_pbw_instances(F4, F1):
    q2 = QMatrix.from_upper(2, F4, {(0, 1): -F4.one})
    g2 = close_group([signed_perm_matrix(F4, swap01(2), [F4.one, F4.one])])
    system = ReductionSystem(q2, g2, KappaMap.zero(2, F4))
    assert reachable_monomial_count(system, 3) == 2 * monomial_count(2, 3)
    assert monomial_count(2, 3) == 10  # the derived example: 2 * 10 = 20

    e3 = (F1.zero, F1.zero, F1.one)
    heis = lie_kappa(F1, 3, {(0, 1): e3})
    q3 = QMatrix.from_upper(3, F1, {})
    g3 = trivial_group(F1, 3)
    system = ReductionSystem(q3, g3, heis)
    assert reachable_monomial_count(system, 3) == monomial_count(3, 3)


def test_single_coefficient_perturbation_detected(F1):
    # Heisenberg is PBW; bumping kappa(v1,v3) by +v1 breaks the Jacobi
    # identity, and both paths must see it
    e3 = (F1.zero, F1.zero, F1.one)
    q = QMatrix.from_upper(3, F1, {})
    group = trivial_group(F1, 3)
    kappa = lie_kappa(F1, 3, {(0, 1): e3})
    assert check_pbw_theorem(q, group, kappa).verdict == "PBW"
    bumped = perturb(kappa, (0, 0, 2, 0))  # +1 on the v1 slot of kappa(v1, v3)
    theorem = check_pbw_theorem(q, group, bumped)
    oracle = check_pbw_oracle(q, group, bumped)
    assert theorem.verdict == oracle.verdict == "not-PBW"


def test_preconditions_raise(F4):
    q = QMatrix.from_upper(2, F4, {(0, 1): F4.zeta()})
    bad_group = close_group([signed_perm_matrix(F4, swap01(2), [F4.one, F4.one])])
    with pytest.raises(IncompatibleActionError):
        check_pbw_theorem(q, bad_group, KappaMap.zero(2, F4))
    with pytest.raises(IncompatibleActionError):
        check_pbw_oracle(q, bad_group, KappaMap.zero(2, F4))
    good_group = trivial_group(F4, 2)
    bad_kappa = KappaMap(2, F4, {7: {(0, 1): (F4.one, (F4.zero, F4.zero))}})
    with pytest.raises(InputError):
        check_pbw_theorem(q, good_group, bad_kappa)


def test_report_document_shape(F4):
    n = 3
    q = QMatrix.from_upper(n, F4, {(0, 1): F4.zeta()})
    group = trivial_group(F4, n)
    kappa = KappaMap(n, F4, {0: {(1, 2): (F4.one, (F4.zero,) * n)}})
    doc = report_to_doc(check_pbw_theorem(q, group, kappa), n)
    assert doc["verdict"] == "not-PBW"
    assert doc["provenance"] == "theorem"
    assert set(doc["statistics"]) == {"condition1", "condition2", "condition3", "condition4"}
    witnesses = [v["witness"] for v in doc["violations"] if v["condition"] == "C3"]
    assert {"g": "g0", "i": 1, "j": 2, "k": 3} in witnesses  # 1-based in documents
    oracle_doc = report_to_doc(check_pbw_oracle(q, group, kappa), n)
    words = [v["witness"]["word"] for v in oracle_doc["violations"]]
    assert "v3*v2*v1" in words
    assert all(isinstance(v["residual"], str) for v in oracle_doc["violations"])
