"""Finite matrix groups acting on the quantum polynomial ring.

Matrix convention, fixed everywhere in the package: the action matrix M
of a group element has M[a][b] = coefficient of v_a in the image of v_b,
so the b-th *column* is the image of the b-th basis vector.  Getting this
backwards is the classic transpose bug; all I/O documents the convention.

Variable and group indices are 0-based internally.  The 1-based names
``v1..vn`` and ``g0, g1, ...`` appear only in the expression syntax and
in rendered reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import GroupTooLargeError, InputError
from .scalars import CycField, CycScalar

Matrix = tuple[tuple[CycScalar, ...], ...]
Vector = tuple[CycScalar, ...]


def identity_matrix(n: int, fld: CycField) -> Matrix:
    return tuple(
        tuple(fld.one if a == b else fld.zero for b in range(n)) for a in range(n)
    )


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    n = len(x)
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = None
            for c in range(n):
                if x[a][c] and y[c][b]:
                    term = x[a][c] * y[c][b]
                    acc = term if acc is None else acc + term
            row.append(acc if acc is not None else x[a][0].field.zero)
        rows.append(tuple(row))
    return tuple(rows)


def mat_vec(m: Matrix, vec: Vector) -> Vector:
    n = len(m)
    out = []
    for a in range(n):
        acc = m[a][0].field.zero
        for b in range(n):
            if m[a][b] and vec[b]:
                acc = acc + m[a][b] * vec[b]
        out.append(acc)
    return tuple(out)


def mat_inverse(m: Matrix) -> Matrix:
    """Exact Gauss-Jordan inverse; raises InputError on a singular matrix."""
    n = len(m)
    fld = m[0][0].field
    aug = [list(row) + [fld.one if a == b else fld.zero for b in range(n)] for a, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise InputError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = aug[col][col].inverse()
        aug[col] = [c * inv_p for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


class QMatrix:
    """The commutation parameters q_ij: nonzero, q_ii = 1, q_ji = q_ij^-1."""

    def __init__(self, n: int, entries: Matrix):
        if len(entries) != n or any(len(row) != n for row in entries):
            raise InputError(f"q matrix must be {n}x{n}")
        fld = entries[0][0].field
        for i in range(n):
            for j in range(n):
                if not entries[i][j]:
                    raise InputError(f"q entries must be nonzero (q[{i + 1}][{j + 1}] = 0)")
        for i in range(n):
            if entries[i][i] != fld.one:
                raise InputError(f"q[{i + 1}][{i + 1}] must be 1")
        for i in range(n):
            for j in range(i + 1, n):
                if entries[j][i] * entries[i][j] != fld.one:
                    raise InputError(f"q[{j + 1}][{i + 1}] must be the inverse of q[{i + 1}][{j + 1}]")
        self.n = n
        self.field = fld
        self.entries = entries

    @classmethod
    def from_upper(cls, n: int, fld: CycField, upper: dict[tuple[int, int], CycScalar]) -> "QMatrix":
        """Build from upper-triangular entries {(i, j): q_ij, i < j}; missing ones default to 1."""
        rows = [[fld.one for _ in range(n)] for _ in range(n)]
        for (i, j), value in upper.items():
            if not (0 <= i < j < n):
                raise InputError(f"q entry index ({i + 1},{j + 1}) out of range or not upper-triangular")
            if not value:
                raise InputError(f"q entries must be nonzero (q[{i + 1}][{j + 1}] = 0)")
            rows[i][j] = value
            rows[j][i] = value.inverse()
        return cls(n, tuple(tuple(r) for r in rows))

    def q(self, i: int, j: int) -> CycScalar:
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.entries == other.entries

    def __repr__(self):
        return f"QMatrix(n={self.n})"


@dataclass(frozen=True)
class GroupElement:
    gid: int
    matrix: Matrix

    @property
    def name(self) -> str:
        return f"g{self.gid}"

    def entry(self, a: int, b: int) -> CycScalar:
        """Coefficient of v_a in the image of v_b."""
        return self.matrix[a][b]

    def image_of_basis(self, b: int) -> Vector:
        """The image of v_b: column b of the matrix."""
        return tuple(row[b] for row in self.matrix)

    def __repr__(self):
        return f"GroupElement({self.name})"


class GroupData:
    """A finite matrix group with multiplication and inverse tables.

    Element 0 is the identity; numbering is breadth-first closure order
    (identity, then products by the generators in the order given), so
    ids are reproducible across runs.
    """

    def __init__(self, n: int, fld: CycField, elements: list[GroupElement],
                 mult: list[list[int]], inv: list[int]):
        self.n = n
        self.field = fld
        self.elements = elements
        self.mult = mult
        self.inv = inv

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    def product(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse_of(self, a: int) -> int:
        return self.inv[a]

    def conjugate(self, h: GroupElement | int, g: GroupElement | int) -> GroupElement:
        """h g h^-1, by table lookup."""
        hid = h.gid if isinstance(h, GroupElement) else h
        gid = g.gid if isinstance(g, GroupElement) else g
        return self.elements[self.mult[self.mult[hid][gid]][self.inv[hid]]]

    def conjugacy_classes(self) -> list[list[int]]:
        seen: set[int] = set()
        classes = []
        for gid in range(self.order):
            if gid in seen:
                continue
            orbit = sorted({self.conjugate(h, gid).gid for h in range(self.order)})
            seen.update(orbit)
            classes.append(orbit)
        return classes

    def element_by_name(self, name: str) -> GroupElement:
        if name.startswith("g"):
            try:
                gid = int(name[1:])
            except ValueError:
                raise InputError(f"unknown group element name {name!r}") from None
            if 0 <= gid < self.order:
                return self.elements[gid]
        raise InputError(f"unknown group element name {name!r}")

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroupData(order={self.order}, n={self.n})"


def close_group(generators: list[Matrix], max_order: int = 1024) -> GroupData:
    """Breadth-first closure of the generators into a full GroupData.

    Raises InputError on a singular generator and GroupTooLargeError when
    the closure exceeds max_order (e.g. the generators have infinite order).
    """
    if not generators:
        raise InputError("at least one generator required (use the identity for the trivial group)")
    n = len(generators[0])
    fld = generators[0][0][0].field
    for idx, gen in enumerate(generators):
        if len(gen) != n or any(len(row) != n for row in gen):
            raise InputError("generator matrices must all be square of the same size")
        try:
            mat_inverse(gen)
        except InputError:
            raise InputError(f"generator {idx + 1} is singular") from None

    ident = identity_matrix(n, fld)
    matrices: list[Matrix] = [ident]
    ids: dict[Matrix, int] = {ident: 0}
    cursor = 0
    while cursor < len(matrices):
        current = matrices[cursor]
        cursor += 1
        for gen in generators:
            prod = mat_mul(current, gen)
            if prod not in ids:
                if len(matrices) >= max_order:
                    raise GroupTooLargeError(f"group closure exceeds max_order={max_order}")
                ids[prod] = len(matrices)
                matrices.append(prod)

    size = len(matrices)
    mult = [[ids[mat_mul(matrices[a], matrices[b])] for b in range(size)] for a in range(size)]
    inv = [next(b for b in range(size) if mult[a][b] == 0) for a in range(size)]
    elements = [GroupElement(gid, m) for gid, m in enumerate(matrices)]
    return GroupData(n, fld, elements, mult, inv)


def act(g: GroupElement, vec: Vector) -> Vector:
    """Image of a vector under the group element (column convention)."""
    return mat_vec(g.matrix, vec)


def qminor(g: GroupElement, i: int, j: int, k: int, l: int, q: QMatrix) -> CycScalar:
    """Quantum minor of the action matrix:
    (coeff of v_l in g.v_j)(coeff of v_k in g.v_i) - q_ji (coeff of v_l in g.v_i)(coeff of v_k in g.v_j).
    """
    m = g.matrix
    return m[l][j] * m[k][i] - q.q(j, i) * m[l][i] * m[k][j]


@dataclass
class QCompatViolation:
    """Relation (i, j) is not preserved; residual maps sorted pairs (a, b),
    a <= b, to the leftover coefficient in the quantum polynomial ring."""

    i: int
    j: int
    residual: dict[tuple[int, int], CycScalar] = dc_field(default_factory=dict)

    def __str__(self):
        terms = ", ".join(f"v{a + 1}*v{b + 1}: {c}" for (a, b), c in sorted(self.residual.items()))
        return f"relation (v{self.i + 1}, v{self.j + 1}) residual {{{terms}}}"


def check_q_compatibility(g: GroupElement, q: QMatrix) -> list[QCompatViolation]:
    """Check that g preserves every relation v_i v_j = q_ij v_j v_i.

    For each i < j the image of the relation is expanded in the free
    algebra and reduced modulo the kappa-free straightening rules; any
    nonzero residue (in the sorted-pair basis) is reported.  An empty
    list means g induces an automorphism of the quantum polynomial ring.
    """
    n = q.n
    m = g.matrix
    violations = []
    for i in range(n):
        for j in range(i + 1, n):
            qij = q.q(i, j)
            residual: dict[tuple[int, int], CycScalar] = {}

            def raw(a: int, b: int) -> CycScalar:
                return m[a][i] * m[b][j] - qij * m[a][j] * m[b][i]

            for a in range(n):
                for b in range(a, n):
                    coeff = raw(a, b) if a == b else raw(a, b) + q.q(b, a) * raw(b, a)
                    if coeff:
                        residual[(a, b)] = coeff
            if residual:
                violations.append(QCompatViolation(i, j, residual))
    return violations


@dataclass
class Lemma21Violation:
    identity: str  # "(i)" or "(ii)"
    indices: tuple[int, ...]
    residual: CycScalar

    def __str__(self):
        idx = ",".join(str(x + 1) for x in self.indices)
        return f"identity {self.identity} fails at ({idx}): residual {self.residual}"


def lemma21_diagnostics(g: GroupElement, q: QMatrix) -> list[Lemma21Violation]:
    """Structural identities satisfied by every q-compatible element:

    (i)  q_lk * qminor(i,j,k,l) == -qminor(i,j,l,k) for all index tuples;
    (ii) whenever q_ij != 1, the products (coeff of v_k in g.v_i)(coeff of
         v_k in g.v_j) vanish for all k.

    Expected empty for compatible g; a nonempty result on a compatible
    element would indicate an internal inconsistency.
    """
    n = q.n
    one = q.field.one
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    residual = q.q(l, k) * qminor(g, i, j, k, l, q) + qminor(g, i, j, l, k, q)
                    if residual:
                        out.append(Lemma21Violation("(i)", (i, j, k, l), residual))
    m = g.matrix
    for i in range(n):
        for j in range(n):
            if q.q(i, j) != one:
                for k in range(n):
                    prod = m[k][i] * m[k][j]
                    if prod:
                        out.append(Lemma21Violation("(ii)", (i, j, k), prod))
    return out
