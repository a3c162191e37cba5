"""Deciding the PBW condition, two independent ways.

The *theorem path* evaluates four closed-form conditions on (q, group,
kappa): a conjugation-invariance identity tying kappa to the quantum
minors of the action matrices, a straightening identity for the linear
parts in degree 2, and two composition identities mixing constant and
linear parts.  The *oracle path* runs the straightening rules on every
overlap-ambiguous word and checks that both contraction orders reach the
same normal form.  The two paths are cross-validated in the test suite;
their agreement on randomized instances is the package's core invariant.

All witnesses carry 0-based indices internally; serialization converts
to the 1-based names used by the expression syntax.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import IncompatibleActionError, InputError
from .groups import GroupData, QMatrix, Vector, act, check_q_compatibility, qminor
from .kappa import KappaMap, validate_kappa
from .rewriting import (
    FreeElement,
    ReductionSystem,
    Word,
    element_str,
    enumerate_overlaps,
    reduce_element,
    resolve_overlap,
    t_letter,
    word_str,
    word_to_monomial,
)
from .scalars import CycScalar

Residual = CycScalar | Vector | FreeElement


@dataclass
class Violation:
    condition: str  # C1-const, C1-lin, C2, C3, C4, overlap
    witness: dict[str, object]
    residual: Residual

    def __str__(self):
        return f"{self.condition} at {self.witness}"


@dataclass
class PbwReport:
    verdict: str  # "PBW" | "not-PBW"
    provenance: str  # "theorem" | "oracle"
    violations: list[Violation]
    statistics: dict[str, int] = dc_field(default_factory=dict)

    @property
    def is_pbw(self) -> bool:
        return self.verdict == "PBW"


def _verdict(violations: list[Violation]) -> str:
    return "PBW" if not violations else "not-PBW"


def _require_valid(q: QMatrix, group: GroupData, kappa: KappaMap) -> None:
    if not (q.n == group.n == kappa.n):
        raise InputError(
            f"dimension mismatch: q has n={q.n}, group n={group.n}, kappa n={kappa.n}"
        )
    incompat = [
        (g.name, violation) for g in group for violation in check_q_compatibility(g, q)
    ]
    if incompat:
        raise IncompatibleActionError(incompat)
    problems = validate_kappa(kappa, group, q)
    if problems:
        raise InputError("invalid kappa: " + "; ".join(str(p) for p in problems))


def _basis(n: int, fld) -> list[Vector]:
    return [
        tuple(fld.one if a == i else fld.zero for a in range(n)) for i in range(n)
    ]


def _vec_sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def _vec_add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def _vec_scale(c: CycScalar, x: Vector) -> Vector:
    return tuple(c * a for a in x)


def _distinct_triples(n: int):
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if i != j and i != k and j != k:
                    yield i, j, k


def check_condition1(q: QMatrix, group: GroupData, kappa: KappaMap) -> list[Violation]:
    """Conjugation invariance: for every g, h and i < j the value of
    kappa at (v_j, v_i) must match the quantum-minor-weighted sum of the
    values of kappa at the conjugate h g h^-1, and likewise for the
    linear part twisted by the action of h."""
    n = q.n
    violations = []
    zero_vec = (q.field.zero,) * n
    for hid, h in enumerate(group.elements):
        for i in range(n):
            for j in range(i + 1, n):
                minors = {
                    (k, l): qminor(h, i, j, k, l, q)
                    for k in range(n)
                    for l in range(k + 1, n)
                }
                for gid in range(group.order):
                    conj = group.conjugate(hid, gid).gid
                    rhs_const = q.field.zero
                    rhs_lin = zero_vec
                    for (k, l), minor in minors.items():
                        if not minor:
                            continue
                        c = kappa.constant(q, conj, l, k)
                        if c:
                            rhs_const = rhs_const + minor * c
                        w = kappa.linear(q, conj, l, k)
                        if any(w):
                            rhs_lin = _vec_add(rhs_lin, _vec_scale(minor, w))
                    residual_const = kappa.constant(q, gid, j, i) - rhs_const
                    if residual_const:
                        violations.append(
                            Violation(
                                "C1-const",
                                {"g": gid, "h": hid, "i": i, "j": j},
                                residual_const,
                            )
                        )
                    lhs_lin = act(h, kappa.linear(q, gid, j, i))
                    residual_lin = _vec_sub(lhs_lin, rhs_lin)
                    if any(residual_lin):
                        violations.append(
                            Violation(
                                "C1-lin",
                                {"g": gid, "h": hid, "i": i, "j": j},
                                residual_lin,
                            )
                        )
    return violations


def _sq_product(q: QMatrix, x: Vector, y: Vector) -> FreeElement:
    """Product of two vectors, straightened to the sorted degree-2 basis
    of the quantum polynomial ring (kappa-free swaps only)."""
    n = q.n
    terms: dict[Word, CycScalar] = {}
    for a in range(n):
        if not x[a]:
            continue
        for b in range(n):
            if not y[b]:
                continue
            coeff = x[a] * y[b]
            if a <= b:
                key = (a, b)
            else:
                key = (b, a)
                coeff = q.q(a, b) * coeff
            acc = terms.get(key)
            terms[key] = coeff if acc is None else acc + coeff
    return FreeElement(terms)


def check_condition2(q: QMatrix, group: GroupData, kappa: KappaMap) -> list[Violation]:
    """Degree-2 straightening identity for the linear parts: for every
    group element and all distinct i, j, k, an alternating combination
    of products of kappa-linear values with basis vectors (and their
    images under the element) must vanish in the quantum polynomial
    ring."""
    n = q.n
    violations = []
    basis = _basis(n, q.field)
    for gid, g in enumerate(group.elements):
        if not kappa.has_linear_part(gid):
            # every term carries a linear factor of this group component
            continue
        for i, j, k in _distinct_triples(n):
            lkj = kappa.linear(q, gid, k, j)
            lki = kappa.linear(q, gid, k, i)
            lji = kappa.linear(q, gid, j, i)
            combo = (
                _sq_product(q, basis[i], lkj).scaled(q.q(j, i) * q.q(k, i))
                - _sq_product(q, lkj, act(g, basis[i]))
                - _sq_product(q, basis[j], lki).scaled(q.q(k, j))
                + _sq_product(q, lki, act(g, basis[j])).scaled(q.q(j, i))
                + _sq_product(q, basis[k], lji)
                - _sq_product(q, lji, act(g, basis[k])).scaled(q.q(k, i) * q.q(k, j))
            )
            if not combo.is_zero():
                violations.append(
                    Violation("C2", {"g": gid, "i": i, "j": j, "k": k}, combo)
                )
    return violations


def _composition_terms(
    q: QMatrix,
    group: GroupData,
    kappa: KappaMap,
    gid: int,
    i: int,
    j: int,
    k: int,
    part: str,
    prune_support: bool,
    basis: list[Vector],
):
    """The h-sum shared by conditions (3) and (4): six compositions of
    kappa with itself, with the outer evaluation's constant or linear
    part selected by ``part``."""
    qij, qik, qjk = q.q(i, j), q.q(i, k), q.q(j, k)
    hs = kappa.support if prune_support else list(range(group.order))
    const_total = q.field.zero
    lin_total = (q.field.zero,) * q.n
    for hid in hs:
        gh_inv = group.mult[gid][group.inv[hid]]
        h_elem = group.elements[hid]
        inner_jk = kappa.linear(q, hid, j, k)
        inner_ki = kappa.linear(q, hid, k, i)
        inner_ij = kappa.linear(q, hid, i, j)
        pieces = (
            (qij * qik, inner_jk, act(h_elem, basis[i])),
            (-q.field.one, basis[i], inner_jk),
            (qik * qjk, inner_ki, act(h_elem, basis[j])),
            (-(qij * qik), basis[j], inner_ki),
            (q.field.one, inner_ij, act(h_elem, basis[k])),
            (-(qik * qjk), basis[k], inner_ij),
        )
        for factor, left, right in pieces:
            if not (any(left) and any(right)):
                continue
            const_part, lin_part = kappa.evaluate(q, gh_inv, left, right)
            if part == "const":
                if const_part:
                    const_total = const_total + factor * const_part
            else:
                if any(lin_part):
                    lin_total = _vec_add(lin_total, _vec_scale(factor, lin_part))
    return const_total if part == "const" else lin_total


def check_condition3(
    q: QMatrix, group: GroupData, kappa: KappaMap, prune_support: bool = True
) -> list[Violation]:
    """Composition identity in degree 1: the summed linear-part
    compositions of kappa with itself must match twice the constant
    parts paired against differences of basis vectors and their images."""
    n = q.n
    violations = []
    basis = _basis(n, q.field)
    two = q.field.scalar(2)
    for gid, g in enumerate(group.elements):
        for i, j, k in _distinct_triples(n):
            lhs = _composition_terms(
                q, group, kappa, gid, i, j, k, "lin", prune_support, basis
            )
            qij, qik, qjk = q.q(i, j), q.q(i, k), q.q(j, k)
            rhs = (q.field.zero,) * n
            cjk = kappa.constant(q, gid, j, k)
            if cjk:
                rhs = _vec_add(
                    rhs, _vec_scale(cjk, _vec_sub(basis[i], _vec_scale(qij * qik, act(g, basis[i]))))
                )
            cki = kappa.constant(q, gid, k, i)
            if cki:
                rhs = _vec_add(
                    rhs,
                    _vec_scale(
                        cki,
                        _vec_sub(
                            _vec_scale(qij * qik, basis[j]),
                            _vec_scale(qik * qjk, act(g, basis[j])),
                        ),
                    ),
                )
            cij = kappa.constant(q, gid, i, j)
            if cij:
                rhs = _vec_add(
                    rhs,
                    _vec_scale(
                        cij,
                        _vec_sub(_vec_scale(qik * qjk, basis[k]), act(g, basis[k])),
                    ),
                )
            residual = _vec_sub(lhs, _vec_scale(two, rhs))
            if any(residual):
                violations.append(
                    Violation("C3", {"g": gid, "i": i, "j": j, "k": k}, residual)
                )
    return violations


def check_condition4(
    q: QMatrix, group: GroupData, kappa: KappaMap, prune_support: bool = True
) -> list[Violation]:
    """Composition identity in degree 0: the summed constant-part
    compositions of kappa with itself must vanish."""
    n = q.n
    violations = []
    basis = _basis(n, q.field)
    for gid in range(group.order):
        for i, j, k in _distinct_triples(n):
            residual = _composition_terms(
                q, group, kappa, gid, i, j, k, "const", prune_support, basis
            )
            if residual:
                violations.append(
                    Violation("C4", {"g": gid, "i": i, "j": j, "k": k}, residual)
                )
    return violations


def check_pbw_theorem(
    q: QMatrix, group: GroupData, kappa: KappaMap, prune_support: bool = True
) -> PbwReport:
    """Direct evaluation of the four closed-form PBW conditions."""
    _require_valid(q, group, kappa)
    n = q.n
    pair_count = n * (n - 1) // 2
    triple_count = n * (n - 1) * (n - 2)
    violations = check_condition1(q, group, kappa)
    violations += check_condition2(q, group, kappa)
    violations += check_condition3(q, group, kappa, prune_support)
    violations += check_condition4(q, group, kappa, prune_support)
    stats = {
        "condition1": group.order * group.order * pair_count,
        "condition2": group.order * triple_count,
        "condition3": group.order * triple_count,
        "condition4": group.order * triple_count,
    }
    return PbwReport(_verdict(violations), "theorem", violations, stats)


def check_pbw_oracle(q: QMatrix, group: GroupData, kappa: KappaMap) -> PbwReport:
    """Resolution of every overlap ambiguity of the straightening rules."""
    system = ReductionSystem(q, group, kappa)
    violations = []
    overlaps = enumerate_overlaps(system)
    for word in overlaps:
        result = resolve_overlap(word, system)
        if not result.resolvable:
            violations.append(
                Violation("overlap", {"word": word}, result.obstruction)
            )
    stats = {"overlaps": len(overlaps)}
    return PbwReport(_verdict(violations), "oracle", violations, stats)


def reachable_monomial_count(system: ReductionSystem, max_degree: int) -> int:
    """Number of distinct sorted monomials (with their group marker)
    reachable as normal forms from words of variable-degree at most
    ``max_degree`` containing at most one group letter.

    Bare sorted words count as their identity-marked monomial, matching
    the meaning of a bare word in the quotient.  Under the PBW condition
    this equals |G| times the number of monomials of degree <= max_degree
    in n commuting variables.
    """
    n = system.n
    monomials: set[tuple[tuple[int, ...], int]] = set()

    def record(element: FreeElement):
        for word in element.terms:
            mono = word_to_monomial(word, n)
            if mono is None:
                raise RuntimeError(f"reduced element contains non-normal word {word}")
            gid = 0 if mono.gid is None else mono.gid
            monomials.add((mono.exponents, gid))

    def all_v_words(length: int):
        if length == 0:
            yield ()
            return
        for shorter in all_v_words(length - 1):
            for i in range(n):
                yield shorter + (i,)

    for degree in range(max_degree + 1):
        for vw in all_v_words(degree):
            record(reduce_element(FreeElement.from_word(vw, system.field.one), system))
            for gid in range(system.group.order):
                for slot in range(degree + 1):
                    word = vw[:slot] + (t_letter(gid),) + vw[slot:]
                    record(
                        reduce_element(FreeElement.from_word(word, system.field.one), system)
                    )
    return len(monomials)


# -- serialization -----------------------------------------------------


def _vector_str(vec: Vector) -> str:
    parts = []
    for m, c in enumerate(vec):
        if not c:
            continue
        text = str(c)
        if text == "1":
            parts.append(f"v{m + 1}")
        elif text == "-1":
            parts.append(f"-v{m + 1}")
        elif " " in text:
            parts.append(f"({text})*v{m + 1}")
        else:
            parts.append(f"{text}*v{m + 1}")
    if not parts:
        return "0"
    out = parts[0]
    for piece in parts[1:]:
        out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
    return out


def _residual_str(residual: Residual, n: int) -> str:
    if isinstance(residual, FreeElement):
        return element_str(residual, n)
    if isinstance(residual, CycScalar):
        return str(residual)
    return _vector_str(residual)


def _witness_to_doc(witness: dict[str, object]) -> dict[str, object]:
    doc: dict[str, object] = {}
    for key, value in witness.items():
        if key in ("g", "h"):
            doc[key] = f"g{value}"
        elif key == "word":
            doc[key] = word_str(value)  # type: ignore[arg-type]
        else:
            doc[key] = value + 1  # type: ignore[operator]
    return doc


def report_to_doc(report: PbwReport, n: int) -> dict[str, object]:
    """Stable, machine-diffable document form of a report (1-based indices)."""
    return {
        "verdict": report.verdict,
        "provenance": report.provenance,
        "statistics": dict(report.statistics),
        "violations": [
            {
                "condition": v.condition,
                "witness": _witness_to_doc(v.witness),
                "residual": _residual_str(v.residual, n),
            }
            for v in report.violations
        ],
    }
