"""Problem files: JSON descriptions of (q, group, kappa) instances.

Layout::

    {
      "n": 2,
      "cyclotomic_order": 4,
      "q": [{"i": 1, "j": 2, "value": "-1"}],
      "group": {"generators": [[["0", "1"], ["1", "0"]]]},
      "kappa": [{"g": "g1", "i": 1, "j": 2, "const": "1", "lin": ["0", "0"]}],
      "options": {"max_group_order": 1024, "mode": "both"}
    }

All scalars are strings in the literal syntax so exactness survives
serialization.  Generator matrices are row-major; column b is the image
of v_b.  Group names g0, g1, ... refer to breadth-first closure order
(g0 is the identity; run ``group-info`` to see the numbering).  Indices
i, j are 1-based and kappa entries must have i < j.

Validation collects *all* diagnostics rather than stopping at the first;
each diagnostic carries a distinct code and the JSON path it refers to.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .errors import GroupTooLargeError, InputError
from .groups import GroupData, QMatrix, check_q_compatibility, close_group
from .kappa import KappaMap
from .parsing import parse_scalar_text
from .scalars import CycField, CycScalar, cyclotomic_field

INCOMPATIBLE_ACTION = "incompatible-action"

MODES = ("theorem", "oracle", "both")


@dataclass
class Diagnostic:
    code: str
    message: str
    path: str = ""

    def __str__(self):
        location = f" at {self.path}" if self.path else ""
        return f"[{self.code}]{location}: {self.message}"


class ProblemError(InputError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))

    def is_precondition_only(self) -> bool:
        return all(d.code == INCOMPATIBLE_ACTION for d in self.diagnostics)


@dataclass
class ProblemFile:
    n: int
    cyclotomic_order: int
    field: CycField
    q: QMatrix
    group: GroupData
    kappa: KappaMap
    options: dict = dc_field(default_factory=dict)

    @property
    def mode(self) -> str:
        return self.options.get("mode", "both")


def _as_positive_int(value, default=None):
    if value is None and default is not None:
        return default
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise InputError("expected a positive integer")
    return value


class _Collector:
    def __init__(self):
        self.diagnostics: list[Diagnostic] = []

    def add(self, code: str, message: str, path: str = ""):
        self.diagnostics.append(Diagnostic(code, message, path))

    def scalar(self, raw, fld: CycField, path: str) -> CycScalar | None:
        if not isinstance(raw, str):
            self.add("scalar-syntax", f"scalars must be strings in the literal syntax, got {raw!r}", path)
            return None
        try:
            return parse_scalar_text(raw, fld)
        except InputError as exc:
            self.add("scalar-syntax", str(exc), path)
            return None


def parse_problem(text: str, require_compatible: bool = True) -> ProblemFile:
    """Parse and fully validate a problem file.

    Raises ProblemError carrying every diagnostic found.  With
    ``require_compatible=False`` an action that breaks the q-relations
    is tolerated (used by group-info, which *reports* compatibility).
    """
    bag = _Collector()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        bag.add("syntax", f"{exc.msg} (line {exc.lineno}, column {exc.colno})")
        raise ProblemError(bag.diagnostics) from None
    if not isinstance(doc, dict):
        bag.add("syntax", "top level must be an object")
        raise ProblemError(bag.diagnostics)

    n = None
    try:
        n = _as_positive_int(doc.get("n"))
    except InputError:
        bag.add("dimension", f"'n' must be a positive integer, got {doc.get('n')!r}", "n")
    order = 1
    try:
        order = _as_positive_int(doc.get("cyclotomic_order"), default=1)
    except InputError:
        bag.add("field", f"'cyclotomic_order' must be a positive integer, got {doc.get('cyclotomic_order')!r}",
                "cyclotomic_order")

    options = doc.get("options", {})
    if not isinstance(options, dict):
        bag.add("options", "'options' must be an object", "options")
        options = {}
    max_order = 1024
    try:
        max_order = _as_positive_int(options.get("max_group_order"), default=1024)
    except InputError:
        bag.add("options", "'max_group_order' must be a positive integer", "options.max_group_order")
    mode = options.get("mode", "both")
    if mode not in MODES:
        bag.add("options", f"'mode' must be one of {MODES}, got {mode!r}", "options.mode")

    if n is None or any(d.code == "field" for d in bag.diagnostics):
        raise ProblemError(bag.diagnostics)
    fld = cyclotomic_field(order)

    q = _parse_q(doc.get("q", []), n, fld, bag)
    group = _parse_group(doc.get("group"), n, fld, max_order, bag)

    compat_witnesses = []
    if q is not None and group is not None:
        for g in group:
            for violation in check_q_compatibility(g, q):
                compat_witnesses.append((g.name, violation))
                bag.add(
                    INCOMPATIBLE_ACTION,
                    f"element {g.name} breaks {violation}",
                    f"group ({g.name})",
                )

    kappa = None
    if group is not None and q is not None:
        kappa = _parse_kappa(doc.get("kappa", []), n, fld, group, bag)

    fatal = [d for d in bag.diagnostics if require_compatible or d.code != INCOMPATIBLE_ACTION]
    if fatal:
        raise ProblemError(bag.diagnostics)
    assert q is not None and group is not None and kappa is not None
    return ProblemFile(n, order, fld, q, group, kappa,
                       {"max_group_order": max_order, "mode": mode})


def _parse_q(raw, n: int, fld: CycField, bag: _Collector) -> QMatrix | None:
    if not isinstance(raw, list):
        bag.add("q-shape", "'q' must be a list of {i, j, value} entries", "q")
        return None
    upper: dict[tuple[int, int], CycScalar] = {}
    ok = True
    for pos, entry in enumerate(raw):
        path = f"q[{pos}]"
        if not isinstance(entry, dict):
            bag.add("q-shape", "q entries must be objects {i, j, value}", path)
            ok = False
            continue
        i, j = entry.get("i"), entry.get("j")
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i <= n and 1 <= j <= n):
            bag.add("q-index", f"q entry indices must be in 1..{n}, got ({i!r}, {j!r})", path)
            ok = False
            continue
        if "value" not in entry:
            bag.add("q-shape", "q entries need a 'value'", path)
            ok = False
            continue
        value = bag.scalar(entry["value"], fld, path + ".value")
        if value is None:
            ok = False
            continue
        if i == j:
            if value != fld.one:
                bag.add("q-diagonal", "diagonal q entries must equal 1", path)
                ok = False
            continue
        if i > j:
            bag.add("q-orientation", "q entries must be given with i < j (the inverse is derived)", path)
            ok = False
            continue
        if (i - 1, j - 1) in upper:
            bag.add("q-duplicate", f"duplicate q entry for ({i},{j})", path)
            ok = False
            continue
        if not value:
            bag.add("q-zero", "q entries must be nonzero", path)
            ok = False
            continue
        upper[(i - 1, j - 1)] = value
    if not ok:
        return None
    try:
        return QMatrix.from_upper(n, fld, upper)
    except InputError as exc:
        bag.add("q-invalid", str(exc), "q")
        return None


def _parse_group(raw, n: int, fld: CycField, max_order: int, bag: _Collector) -> GroupData | None:
    if raw is None:
        bag.add("group-shape", "'group' section is required (use the identity generator for the trivial group)", "group")
        return None
    if not isinstance(raw, dict) or not isinstance(raw.get("generators"), list) or not raw["generators"]:
        bag.add("group-shape", "'group' must be an object with a nonempty 'generators' list", "group")
        return None
    generators = []
    ok = True
    for gpos, matrix in enumerate(raw["generators"]):
        path = f"group.generators[{gpos}]"
        if not (isinstance(matrix, list) and len(matrix) == n
                and all(isinstance(row, list) and len(row) == n for row in matrix)):
            bag.add("group-shape", f"generator must be an {n}x{n} matrix of scalar strings (row-major)", path)
            ok = False
            continue
        rows = []
        for a, row in enumerate(matrix):
            scalars = []
            for b, cell in enumerate(row):
                value = bag.scalar(cell, fld, f"{path}[{a}][{b}]")
                if value is None:
                    ok = False
                else:
                    scalars.append(value)
            if len(scalars) == n:
                rows.append(tuple(scalars))
        if len(rows) == n:
            generators.append(tuple(rows))
    if not ok or len(generators) != len(raw["generators"]):
        return None
    try:
        return close_group(generators, max_order=max_order)
    except GroupTooLargeError as exc:
        bag.add("group-too-large", str(exc), "group")
    except InputError as exc:
        bag.add("group-singular", str(exc), "group")
    return None


def _parse_kappa(raw, n: int, fld: CycField, group: GroupData, bag: _Collector) -> KappaMap | None:
    if not isinstance(raw, list):
        bag.add("kappa-shape", "'kappa' must be a list of entries", "kappa")
        return None
    entries: dict[int, dict[tuple[int, int], tuple[CycScalar, tuple[CycScalar, ...]]]] = {}
    ok = True
    for pos, entry in enumerate(raw):
        path = f"kappa[{pos}]"
        if not isinstance(entry, dict):
            bag.add("kappa-shape", "kappa entries must be objects", path)
            ok = False
            continue
        name = entry.get("g", "g0")
        try:
            element = group.element_by_name(name) if isinstance(name, str) else None
        except InputError:
            element = None
        if element is None:
            bag.add("kappa-group", f"unknown group element {name!r}", path)
            ok = False
            continue
        i, j = entry.get("i"), entry.get("j")
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= n):
            bag.add("kappa-pair", f"kappa entries need 1 <= i < j <= {n}, got ({i!r}, {j!r})", path)
            ok = False
            continue
        const = bag.scalar(entry.get("const", "0"), fld, path + ".const")
        if const is None:
            ok = False
            continue
        lin_raw = entry.get("lin", ["0"] * n)
        if not isinstance(lin_raw, list) or len(lin_raw) != n:
            bag.add("kappa-linear-length", f"'lin' must be a list of {n} scalar strings", path + ".lin")
            ok = False
            continue
        lin = []
        for m, cell in enumerate(lin_raw):
            value = bag.scalar(cell, fld, f"{path}.lin[{m}]")
            if value is None:
                ok = False
            else:
                lin.append(value)
        if len(lin) != n:
            continue
        pairs = entries.setdefault(element.gid, {})
        if (i - 1, j - 1) in pairs:
            bag.add("kappa-duplicate", f"duplicate kappa entry for ({name}, {i}, {j})", path)
            ok = False
            continue
        pairs[(i - 1, j - 1)] = (const, tuple(lin))
    if not ok:
        return None
    return KappaMap(n, fld, entries)
