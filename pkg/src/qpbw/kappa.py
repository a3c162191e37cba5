"""Storage and bilinear evaluation of the deformation parameter.

A deformation map attaches to each group element g a constant part (a
scalar) and a linear part (a vector) for every ordered basis pair
(v_i, v_j).  Only pairs with i < j are stored; the value on (v_j, v_i)
is derived from the q-antisymmetry rule

    kappa(v_i, v_j) = -q_ij * kappa(v_j, v_i),

and kappa(v_i, v_i) = 0 always (forced in characteristic zero by q_ii = 1).
Storing one triangle only makes the rule impossible to violate by
inconsistent duplicate entries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .groups import GroupData, QMatrix, Vector
from .scalars import CycField, CycScalar

# entries[gid][(i, j)] = (constant, linear) with i < j
PairValue = tuple[CycScalar, Vector]
EntryDict = dict[int, dict[tuple[int, int], PairValue]]


def _pair_is_zero(value: PairValue) -> bool:
    const, lin = value
    return not const and not any(lin)


class KappaMap:
    """Upper-triangular storage of the deformation parameter.

    The constructor keeps whatever it is given (minus all-zero pairs);
    use :func:`validate_kappa` to vet a map against a group and q before
    evaluating it.
    """

    def __init__(self, n: int, fld: CycField, entries: EntryDict | None = None):
        self.n = n
        self.field = fld
        cleaned: EntryDict = {}
        for gid, pairs in (entries or {}).items():
            kept = {pair: value for pair, value in pairs.items() if not _pair_is_zero(value)}
            if kept:
                cleaned[gid] = kept
        self.entries = cleaned

    @classmethod
    def zero(cls, n: int, fld: CycField) -> "KappaMap":
        return cls(n, fld)

    @property
    def support(self) -> list[int]:
        return sorted(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def has_linear_part(self, gid: int) -> bool:
        return any(any(w) for _, w in self.entries.get(gid, {}).values())

    def as_entry_dict(self) -> EntryDict:
        return {gid: dict(pairs) for gid, pairs in self.entries.items()}

    def constant(self, q: QMatrix, gid: int, i: int, j: int) -> CycScalar:
        """Constant part on (v_i, v_j), for any i, j."""
        if i == j:
            return self.field.zero
        if i < j:
            pair = self.entries.get(gid, {}).get((i, j))
            return pair[0] if pair else self.field.zero
        pair = self.entries.get(gid, {}).get((j, i))
        return -q.q(i, j) * pair[0] if pair else self.field.zero

    def linear(self, q: QMatrix, gid: int, i: int, j: int) -> Vector:
        """Linear part on (v_i, v_j) as a coefficient vector, for any i, j."""
        zero_vec = (self.field.zero,) * self.n
        if i == j:
            return zero_vec
        if i < j:
            pair = self.entries.get(gid, {}).get((i, j))
            return pair[1] if pair else zero_vec
        pair = self.entries.get(gid, {}).get((j, i))
        if not pair:
            return zero_vec
        factor = -q.q(i, j)
        return tuple(factor * c for c in pair[1])

    def evaluate(self, q: QMatrix, gid: int, x: Vector, y: Vector) -> tuple[CycScalar, Vector]:
        """Bilinear evaluation on arbitrary vectors: (constant, linear) parts."""
        if len(x) != self.n or len(y) != self.n:
            raise InputError("vector length does not match the dimension")
        const = self.field.zero
        lin = [self.field.zero] * self.n
        for (i, j), (c, w) in self.entries.get(gid, {}).items():
            # x_i y_j picks up the stored value, x_j y_i the antisymmetric flip.
            factor = x[i] * y[j] - q.q(j, i) * x[j] * y[i]
            if not factor:
                continue
            if c:
                const = const + factor * c
            for m, wm in enumerate(w):
                if wm:
                    lin[m] = lin[m] + factor * wm
        return const, tuple(lin)

    def __eq__(self, other):
        return isinstance(other, KappaMap) and (self.n, self.field, self.entries) == (
            other.n,
            other.field,
            other.entries,
        )

    def __repr__(self):
        return f"KappaMap(n={self.n}, support={self.support})"


@dataclass
class KappaViolation:
    code: str
    message: str

    def __str__(self):
        return f"[{self.code}] {self.message}"


def validate_kappa(kappa: KappaMap, group: GroupData, q: QMatrix) -> list[KappaViolation]:
    """Well-formedness of a deformation map against its group and q.

    Checks dimension consistency, that support ids exist in the group,
    canonical (strictly upper-triangular) storage, and linear-part
    lengths.  An empty list means the map is safe to evaluate.
    """
    out = []
    if kappa.n != group.n or kappa.n != q.n:
        out.append(
            KappaViolation(
                "kappa-dimension",
                f"kappa dimension {kappa.n} does not match group/q dimension {group.n}/{q.n}",
            )
        )
    if kappa.field != group.field or kappa.field != q.field:
        out.append(KappaViolation("kappa-field", "kappa scalars live in a different cyclotomic field"))
    for gid, pairs in sorted(kappa.entries.items()):
        if not (0 <= gid < group.order):
            out.append(KappaViolation("kappa-unknown-group", f"support id g{gid} not in the group"))
        for (i, j), (_, lin) in sorted(pairs.items()):
            if not (0 <= i < j < kappa.n):
                out.append(
                    KappaViolation(
                        "kappa-pair-order",
                        f"entry for g{gid} stored at ({i + 1},{j + 1}); only i < j within range is canonical",
                    )
                )
            if len(lin) != kappa.n:
                out.append(
                    KappaViolation(
                        "kappa-linear-length",
                        f"linear part for g{gid} at ({i + 1},{j + 1}) has length {len(lin)}, expected {kappa.n}",
                    )
                )
    return out
