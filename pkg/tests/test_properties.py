"""Cross-cutting randomized invariants tying the modules together."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from qpbw import (
    FreeElement,
    ProblemError,
    ReductionSystem,
    act,
    check_pbw_oracle,
    check_pbw_theorem,
    cyclotomic_field,
    element_str,
    enumerate_overlaps,
    lemma21_diagnostics,
    parse_expr_text,
    parse_problem,
    reduce_element,
    resolve_overlap,
    t_letter,
)
from instances import sample_pool

POOL = sample_pool(seed=1234, count=60)
PBW_POOL = [
    inst
    for inst in POOL
    if check_pbw_oracle(inst.q, inst.group, inst.kappa).is_pbw
]


def random_words(rng, n, group_order, count, max_len=5):
    letters = list(range(n)) + [t_letter(g) for g in range(group_order)]
    return [
        tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))
        for _ in range(count)
    ]


def test_theorem_equals_oracle_on_pool():
    for instance in POOL:
        theorem = check_pbw_theorem(instance.q, instance.group, instance.kappa)
        oracle = check_pbw_oracle(instance.q, instance.group, instance.kappa)
        assert theorem.verdict == oracle.verdict, instance.label


def test_lemma21_empty_on_compatible_groups():
    for instance in POOL:
        for g in instance.group:
            assert lemma21_diagnostics(g, instance.q) == [], instance.label


def test_action_composes_with_multiplication():
    for instance in POOL[:25]:
        group, n, fld = instance.group, instance.n, instance.q.field
        basis = [
            tuple(fld.one if a == i else fld.zero for a in range(n)) for i in range(n)
        ]
        for a in range(group.order):
            for b in range(group.order):
                ab = group.elements[group.mult[a][b]]
                for vec in basis:
                    assert act(ab, vec) == act(
                        group.elements[a], act(group.elements[b], vec)
                    )


def test_t_families_always_resolve():
    for instance in POOL[:25]:
        system = ReductionSystem(instance.q, instance.group, instance.kappa)
        for word in enumerate_overlaps(system):
            if word[0] < 0 and word[1] < 0:
                assert resolve_overlap(word, system).resolvable


def test_strategy_independence_on_pbw_instances():
    rng = random.Random(5150)
    for instance in PBW_POOL[:12]:
        system = ReductionSystem(instance.q, instance.group, instance.kappa)
        for word in random_words(rng, instance.n, instance.group.order, 8):
            element = FreeElement.from_word(word, instance.q.field.one)
            base = reduce_element(element, system, strategy="leftmost")
            assert reduce_element(element, system, strategy="rightmost") == base
            for seed in range(3):
                assert (
                    reduce_element(element, system, strategy="random", seed=seed)
                    == base
                )


def test_monotone_locality_two_variables():
    # n = 2: conditions beyond the first are vacuous and condition 1 decides
    for instance in POOL:
        if instance.n != 2:
            continue
        theorem = check_pbw_theorem(instance.q, instance.group, instance.kappa)
        assert theorem.statistics["condition2"] == 0
        assert theorem.statistics["condition3"] == 0
        assert all(v.condition.startswith("C1") for v in theorem.violations)
        oracle = check_pbw_oracle(instance.q, instance.group, instance.kappa)
        assert theorem.verdict == oracle.verdict


# -- expression round trips ----------------------------------------------

_FLD = cyclotomic_field(4)
_N = 3
_GROUP_ORDER = 2

_coeffs = st.builds(
    lambda num, den, zpow: _FLD.scalar(num) / _FLD.scalar(den) * _FLD.zeta(zpow),
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=0, max_value=3),
)

_words = st.lists(
    st.one_of(
        st.integers(min_value=0, max_value=_N - 1),
        st.integers(min_value=0, max_value=_GROUP_ORDER - 1).map(t_letter),
    ),
    max_size=5,
).map(tuple)

_elements = st.dictionaries(_words, _coeffs, max_size=4).map(FreeElement)


@given(_elements)
@settings(max_examples=80, deadline=None)
def test_render_parse_roundtrip(element):
    from instances import diagonal_matrix
    from qpbw import close_group

    group = close_group([diagonal_matrix(_FLD, [-_FLD.one] * _N)])
    rendered = element_str(element, _N)
    assert parse_expr_text(rendered, _FLD, _N, group) == element


@given(st.text(max_size=300))
@settings(max_examples=150, deadline=None)
def test_parse_problem_is_total(text):
    try:
        parse_problem(text)
    except ProblemError:
        pass


@given(
    st.recursive(
        st.one_of(
            st.none(),
            st.booleans(),
            st.integers(),
            st.floats(allow_nan=False),
            st.text(max_size=8),
        ),
        lambda children: st.one_of(
            st.lists(children, max_size=4),
            st.dictionaries(st.text(max_size=8), children, max_size=4),
        ),
        max_leaves=12,
    )
)
@settings(max_examples=150, deadline=None)
def test_parse_problem_total_on_json_documents(doc):
    import json

    try:
        parse_problem(json.dumps(doc))
    except ProblemError:
        pass
