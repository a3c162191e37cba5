"""Free-algebra rewriting: straightening words over {v_1..v_n, t_g} to
sorted normal form.

Letters are encoded as ints: a variable index i (0-based) is the letter
``i`` itself, and the group symbol for element gid is ``-(gid + 1)``.
A word is a tuple of letters; an element of the free algebra is a
finite dict word -> scalar with no zero coefficients.

The three rule families, for i < j:

    t_g v_i   ->  (image of v_i under g) t_g
    t_g t_h   ->  t_{gh}
    v_j v_i   ->  q_ji v_i v_j  +  kappa(v_j, v_i)

Irreducible words are exactly v_1^{m_1} ... v_n^{m_n} optionally followed
by a single t_g; bare sorted words are kept bare (they stand for the
implicit identity-group component only in meaning, not in storage).

The word order used for termination is *not* plain length-then-lex: a
linear part of kappa may contain variables above the pair being
straightened, and v_m t_g must still count as smaller than v_j v_i.  We
order first by variable-letter count, then by group-letter count, then
positionwise with v_1 < ... < v_n < every t_g and distinct group letters
incomparable.  Every rule strictly decreases this order (verified at
system construction) and it has no infinite descending chains.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import IncompatibleActionError, InputError
from .groups import GroupData, QMatrix, check_q_compatibility
from .kappa import KappaMap, validate_kappa
from .scalars import CycScalar

Word = tuple[int, ...]

LESS = "less"
EQUAL = "equal"
GREATER = "greater"
INCOMPARABLE = "incomparable"


def v_letter(index: int) -> int:
    return index


def t_letter(gid: int) -> int:
    return -(gid + 1)


def is_v_letter(letter: int) -> bool:
    return letter >= 0


def letter_gid(letter: int) -> int:
    return -letter - 1


def v_count(word: Word) -> int:
    return sum(1 for x in word if x >= 0)


def order_compare(a: Word, b: Word) -> str:
    """Compare two words in the termination order (see module docstring)."""
    va, vb = v_count(a), v_count(b)
    if va != vb:
        return LESS if va < vb else GREATER
    ta, tb = len(a) - va, len(b) - vb
    if ta != tb:
        return LESS if ta < tb else GREATER
    for x, y in zip(a, b):
        if x == y:
            continue
        if x >= 0 and y >= 0:
            return LESS if x < y else GREATER
        if x >= 0:
            return LESS
        if y >= 0:
            return GREATER
        return INCOMPARABLE
    return EQUAL


class FreeElement:
    """A finite linear combination of words, kept canonical (no zero terms)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, CycScalar] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> "FreeElement":
        return cls()

    @classmethod
    def from_word(cls, word: Word, coeff: CycScalar) -> "FreeElement":
        return cls({word: coeff})

    @classmethod
    def from_scalar(cls, coeff: CycScalar) -> "FreeElement":
        return cls({(): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "FreeElement") -> "FreeElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w)
            out[w] = c if acc is None else acc + c
        return FreeElement(out)

    def __neg__(self) -> "FreeElement":
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def scaled(self, factor: CycScalar) -> "FreeElement":
        if not factor:
            return FreeElement()
        return FreeElement({w: factor * c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            out: dict[Word, CycScalar] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    acc = out.get(w)
                    out[w] = c if acc is None else acc + c
            return FreeElement(out)
        if isinstance(other, CycScalar):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, CycScalar):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "FreeElement":
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError("free-algebra powers must be nonnegative integers")
        result = None
        for _ in range(exponent):
            result = self if result is None else result * self
        if result is None:
            # x^0: needs a field to make 1; borrow it from any coefficient.
            for c in self.terms.values():
                return FreeElement.from_scalar(c.field.one)
            raise InputError("cannot raise the zero element to the power 0")
        return result

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.terms == other.terms

    def __repr__(self):
        return f"FreeElement({element_str(self)})"


@dataclass(frozen=True)
class NormalMonomial:
    """v_1^{m_1} ... v_n^{m_n} t_g; gid None for a bare sorted word."""

    exponents: tuple[int, ...]
    gid: int | None

    def to_word(self) -> Word:
        letters = []
        for i, m in enumerate(self.exponents):
            letters.extend([i] * m)
        if self.gid is not None:
            letters.append(t_letter(self.gid))
        return tuple(letters)

    @property
    def degree(self) -> int:
        return sum(self.exponents)


def word_to_monomial(word: Word, n: int) -> NormalMonomial | None:
    """The normal monomial a word represents, or None if it is not sorted."""
    exponents = [0] * n
    gid = None
    previous = -1
    for pos, letter in enumerate(word):
        if letter >= 0:
            if gid is not None or letter < previous or letter >= n:
                return None
            exponents[letter] += 1
            previous = letter
        else:
            if gid is not None:
                return None
            gid = letter_gid(letter)
    return NormalMonomial(tuple(exponents), gid)


def is_irreducible_word(word: Word, n: int) -> bool:
    return word_to_monomial(word, n) is not None


class ReductionSystem:
    """The straightening rules determined by (q, group, kappa).

    Construction validates the whole setup: the group must act by
    automorphisms for this q (else IncompatibleActionError), the
    deformation map must be well-formed, and every rule right-hand side
    must be strictly smaller than its left-hand side in the word order.
    """

    def __init__(self, q: QMatrix, group: GroupData, kappa: KappaMap):
        if not (q.n == group.n == kappa.n):
            raise InputError(
                f"dimension mismatch: q has n={q.n}, group n={group.n}, kappa n={kappa.n}"
            )
        if not (q.field == group.field == kappa.field):
            raise InputError("q, group and kappa must share one cyclotomic field")
        incompat = []
        for g in group:
            for violation in check_q_compatibility(g, q):
                incompat.append((g.name, violation))
        if incompat:
            raise IncompatibleActionError(incompat)
        kappa_violations = validate_kappa(kappa, group, q)
        if kappa_violations:
            raise InputError(
                "invalid kappa: " + "; ".join(str(v) for v in kappa_violations)
            )
        self.q = q
        self.group = group
        self.kappa = kappa
        self.n = q.n
        self.field = q.field
        self._verify_rule_descent()

    # -- rules ---------------------------------------------------------

    def is_redex(self, x: int, y: int) -> bool:
        """Is the two-letter word (x, y) the left-hand side of a rule?"""
        if x < 0:
            return True  # t_g v_i and t_g t_h
        return y >= 0 and y < x  # v_j v_i with j > i

    def redex_positions(self, word: Word) -> list[int]:
        return [p for p in range(len(word) - 1) if self.is_redex(word[p], word[p + 1])]

    def _pair_rhs(self, x: int, y: int) -> list[tuple[Word, CycScalar]]:
        """Right-hand side of the rule rewriting the two-letter word (x, y)."""
        if x < 0 and y >= 0:
            gid = letter_gid(x)
            column = self.group.elements[gid].image_of_basis(y)
            return [((m, x), c) for m, c in enumerate(column) if c]
        if x < 0 and y < 0:
            gid = self.group.mult[letter_gid(x)][letter_gid(y)]
            return [((t_letter(gid),), self.field.one)]
        if x >= 0 and y >= 0 and x > y:
            out: list[tuple[Word, CycScalar]] = [((y, x), self.q.q(x, y))]
            for gid in self.kappa.support:
                const = self.kappa.constant(self.q, gid, x, y)
                if const:
                    out.append(((t_letter(gid),), const))
                lin = self.kappa.linear(self.q, gid, x, y)
                for m, coeff in enumerate(lin):
                    if coeff:
                        out.append(((m, t_letter(gid)), coeff))
            return out
        raise InputError(f"pair ({x}, {y}) is not reducible")

    def apply_rule_at(self, word: Word, position: int) -> list[tuple[Word, CycScalar]]:
        """One rewriting step at the given redex position.

        Every produced word is checked to be strictly smaller than the
        input in the word order; this is the termination guard.
        """
        prefix, suffix = word[:position], word[position + 2:]
        out = []
        for fragment, coeff in self._pair_rhs(word[position], word[position + 1]):
            produced = prefix + fragment + suffix
            if order_compare(produced, word) != LESS:
                raise RuntimeError(
                    f"rewriting step failed to decrease the word order: {word} -> {produced}"
                )
            out.append((produced, coeff))
        return out

    def _verify_rule_descent(self):
        lhs_words: list[Word] = []
        for gid in range(self.group.order):
            for i in range(self.n):
                lhs_words.append((t_letter(gid), i))
            for hid in range(self.group.order):
                lhs_words.append((t_letter(gid), t_letter(hid)))
        for i in range(self.n):
            for j in range(i + 1, self.n):
                lhs_words.append((j, i))
        for lhs in lhs_words:
            for rhs, _ in self._pair_rhs(lhs[0], lhs[1]):
                if order_compare(rhs, lhs) != LESS:
                    raise RuntimeError(
                        f"rule for {lhs} has non-decreasing right-hand side word {rhs}"
                    )


def reduce_element(
    element: FreeElement,
    system: ReductionSystem,
    strategy: str = "leftmost",
    seed: int | None = None,
) -> FreeElement:
    """Rewrite an element until every word is irreducible.

    The strategy picks which redex of a word is contracted: "leftmost",
    "rightmost", or "random" (seeded).  When the system satisfies the
    PBW condition the result is independent of the strategy; the knob
    exists so tests can observe exactly that.
    """
    if strategy not in ("leftmost", "rightmost", "random"):
        raise InputError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed) if strategy == "random" else None
    one = system.field.one
    cache: dict[Word, dict[Word, CycScalar]] = {}

    def normal_form(word: Word) -> dict[Word, CycScalar]:
        done = cache.get(word)
        if done is not None:
            return done
        positions = system.redex_positions(word)
        if not positions:
            result = {word: one}
        else:
            if strategy == "leftmost":
                position = positions[0]
            elif strategy == "rightmost":
                position = positions[-1]
            else:
                position = rng.choice(positions)
            result = {}
            for produced, coeff in system.apply_rule_at(word, position):
                for final_word, final_coeff in normal_form(produced).items():
                    contribution = coeff * final_coeff
                    acc = result.get(final_word)
                    total = contribution if acc is None else acc + contribution
                    if total:
                        result[final_word] = total
                    elif acc is not None:
                        del result[final_word]
        cache[word] = result
        return result

    out: dict[Word, CycScalar] = {}
    for word, coeff in element.terms.items():
        for final_word, final_coeff in normal_form(word).items():
            contribution = coeff * final_coeff
            acc = out.get(final_word)
            total = contribution if acc is None else acc + contribution
            if total:
                out[final_word] = total
            elif acc is not None:
                del out[final_word]
    return FreeElement(out)


def enumerate_overlaps(system: ReductionSystem) -> list[Word]:
    """All words carrying an overlap ambiguity, in a deterministic order.

    Exactly four families: t_g t_h t_k, t_g t_h v_i, t_h v_j v_i (i < j)
    and v_k v_j v_i (i < j < k).
    """
    n = system.n
    size = system.group.order
    words: list[Word] = []
    for g in range(size):
        for h in range(size):
            for k in range(size):
                words.append((t_letter(g), t_letter(h), t_letter(k)))
    for g in range(size):
        for h in range(size):
            for i in range(n):
                words.append((t_letter(g), t_letter(h), i))
    for h in range(size):
        for i in range(n):
            for j in range(i + 1, n):
                words.append((t_letter(h), j, i))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                words.append((k, j, i))
    return words


@dataclass
class OverlapResult:
    word: Word
    resolvable: bool
    obstruction: FreeElement | None

    def __str__(self):
        state = "resolvable" if self.resolvable else f"obstruction {element_str(self.obstruction)}"
        return f"{word_str(self.word)}: {state}"


def resolve_overlap(word: Word, system: ReductionSystem) -> OverlapResult:
    """Contract the left-anchored and the right-anchored redex of a
    three-letter overlap word, normalize both results, and compare."""
    if len(word) != 3 or not (
        system.is_redex(word[0], word[1]) and system.is_redex(word[1], word[2])
    ):
        raise InputError(f"{word} is not an overlap word")
    sides = []
    for position in (0, 1):
        element = FreeElement(_collect(system.apply_rule_at(word, position)))
        sides.append(reduce_element(element, system))
    difference = sides[0] - sides[1]
    if difference.is_zero():
        return OverlapResult(word, True, None)
    return OverlapResult(word, False, difference)


def _collect(pairs: list[tuple[Word, CycScalar]]) -> dict[Word, CycScalar]:
    out: dict[Word, CycScalar] = {}
    for word, coeff in pairs:
        acc = out.get(word)
        out[word] = coeff if acc is None else acc + coeff
    return out


# -- rendering ---------------------------------------------------------


def word_str(word: Word) -> str:
    """Render a word in the expression syntax, e.g. ``v1^2*v2*t.g1``."""
    if not word:
        return "1"
    parts = []
    idx = 0
    while idx < len(word):
        letter = word[idx]
        count = 1
        while idx + count < len(word) and word[idx + count] == letter:
            count += 1
        base = f"v{letter + 1}" if letter >= 0 else f"t.g{letter_gid(letter)}"
        parts.append(base if count == 1 else f"{base}^{count}")
        idx += count
    return "*".join(parts)


def _term_sort_key(word: Word, n: int):
    mono = word_to_monomial(word, n)
    if mono is not None:
        gid = -1 if mono.gid is None else mono.gid
        return (0, gid, mono.exponents)
    return (1, len(word), word)


def element_str(element: FreeElement, n: int | None = None) -> str:
    """Render an element; terms are ordered by group id then exponents."""
    if element.is_zero():
        return "0"
    if n is None:
        n = 1 + max((x for w in element.terms for x in w if x >= 0), default=-1)
    rendered = []
    for word in sorted(element.terms, key=lambda w: _term_sort_key(w, n)):
        coeff = element.terms[word]
        coeff_text = str(coeff)
        if not word:
            rendered.append(f"({coeff_text})" if " " in coeff_text else coeff_text)
            continue
        if coeff == 1:
            rendered.append(word_str(word))
        elif coeff == -1:
            rendered.append("-" + word_str(word))
        elif " " in coeff_text:
            rendered.append(f"({coeff_text})*{word_str(word)}")
        else:
            rendered.append(f"{coeff_text}*{word_str(word)}")
    out = rendered[0]
    for piece in rendered[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out
