"""Parser for the expression language and the scalar literal syntax.

Grammar (standard precedence, left associative, explicit ``*`` only):

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := uint ('/' uint)? | 'z' | 'v'<uint> | 't.'<name> | '(' expr ')'

``z`` is the chosen primitive root of unity; ``v1..vn`` and ``t.g0,
t.g1, ...`` are the algebra letters (1-based variable names, closure
order group names).  A scalar literal is simply an expression that uses
no letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .groups import GroupData
from .rewriting import FreeElement, t_letter
from .scalars import CycField, CycScalar


class ExprError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass
class _Token:
    kind: str  # number, name, op, end
    text: str
    line: int
    column: int


_OPS = set("+-*^/()")


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, column = 1, 1
    idx = 0
    while idx < len(text):
        ch = text[idx]
        if ch == "\n":
            line += 1
            column = 1
            idx += 1
            continue
        if ch.isspace():
            column += 1
            idx += 1
            continue
        start_col = column
        if ch.isdigit():
            end = idx
            while end < len(text) and text[end].isdigit():
                end += 1
            tokens.append(_Token("number", text[idx:end], line, start_col))
            column += end - idx
            idx = end
            continue
        if ch.isalpha():
            end = idx
            while end < len(text) and (text[end].isalnum() or text[end] in "._"):
                end += 1
            tokens.append(_Token("name", text[idx:end], line, start_col))
            column += end - idx
            idx = end
            continue
        if ch in _OPS:
            tokens.append(_Token("op", ch, line, start_col))
            column += 1
            idx += 1
            continue
        raise ExprError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(_Token("end", "", line, column))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], field: CycField, n: int,
                 group: GroupData | None, scalars_only: bool):
        self.tokens = tokens
        self.pos = 0
        self.field = field
        self.n = n
        self.group = group
        self.scalars_only = scalars_only

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect_op(self, op: str) -> _Token:
        token = self.peek()
        if token.kind != "op" or token.text != op:
            raise ExprError(f"expected {op!r}, found {token.text or 'end of input'!r}",
                            token.line, token.column)
        return self.take()

    def parse(self) -> FreeElement:
        result = self.expr()
        token = self.peek()
        if token.kind != "end":
            raise ExprError(f"unexpected trailing input {token.text!r}", token.line, token.column)
        return result

    def expr(self) -> FreeElement:
        token = self.peek()
        negate = False
        if token.kind == "op" and token.text in "+-":
            self.take()
            negate = token.text == "-"
        result = self.term()
        if negate:
            result = -result
        while True:
            token = self.peek()
            if token.kind == "op" and token.text in "+-":
                self.take()
                rhs = self.term()
                result = result - rhs if token.text == "-" else result + rhs
            else:
                return result

    def term(self) -> FreeElement:
        result = self.factor()
        while True:
            token = self.peek()
            if token.kind == "op" and token.text == "*":
                self.take()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> FreeElement:
        base = self.atom()
        token = self.peek()
        if token.kind == "op" and token.text == "^":
            self.take()
            exp_token = self.peek()
            if exp_token.kind != "number":
                raise ExprError("exponent must be a nonnegative integer",
                                exp_token.line, exp_token.column)
            self.take()
            try:
                return base ** int(exp_token.text)
            except InputError as exc:
                raise ExprError(str(exc), exp_token.line, exp_token.column) from None
        return base

    def atom(self) -> FreeElement:
        token = self.take()
        if token.kind == "number":
            numerator = int(token.text)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "/":
                self.take()
                den_token = self.peek()
                if den_token.kind != "number":
                    raise ExprError("malformed rational literal", den_token.line, den_token.column)
                self.take()
                if int(den_token.text) == 0:
                    raise ExprError("zero denominator in rational literal",
                                    den_token.line, den_token.column)
                value = Fraction(numerator, int(den_token.text))
            else:
                value = Fraction(numerator)
            return FreeElement.from_scalar(self.field.scalar(value))
        if token.kind == "name":
            return self.name_atom(token)
        if token.kind == "op" and token.text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ExprError(f"expected a value, found {token.text or 'end of input'!r}",
                        token.line, token.column)

    def name_atom(self, token: _Token) -> FreeElement:
        text = token.text
        if text == "z":
            return FreeElement.from_scalar(self.field.zeta())
        if self.scalars_only:
            raise ExprError(f"unknown symbol {text!r} in a scalar literal", token.line, token.column)
        if text.startswith("v") and text[1:].isdigit():
            index = int(text[1:])
            if not (1 <= index <= self.n):
                raise ExprError(f"variable index out of range: {text} (n = {self.n})",
                                token.line, token.column)
            return FreeElement.from_word((index - 1,), self.field.one)
        if text.startswith("t."):
            if self.group is None:
                raise ExprError("group letters are not available here", token.line, token.column)
            try:
                element = self.group.element_by_name(text[2:])
            except InputError:
                raise ExprError(f"unknown group element {text[2:]!r}", token.line, token.column) from None
            return FreeElement.from_word((t_letter(element.gid),), self.field.one)
        raise ExprError(f"unknown symbol {text!r}", token.line, token.column)


def parse_expr_text(text: str, field: CycField, n: int, group: GroupData | None) -> FreeElement:
    """Parse an expression over scalars, v-letters and group letters."""
    parser = _Parser(_tokenize(text), field, n, group, scalars_only=False)
    return parser.parse()


def parse_scalar_text(text: str, field: CycField) -> CycScalar:
    """Parse a scalar literal; letters are rejected."""
    parser = _Parser(_tokenize(text), field, 0, None, scalars_only=True)
    element = parser.parse()
    if element.is_zero():
        return field.zero
    return element.terms[()]
