"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Every coefficient in the package is a :class:`CycScalar`: a polynomial in
a fixed primitive N-th root of unity ``z``, stored in the canonical form
obtained by reducing modulo the N-th cyclotomic polynomial.  Because the
representation is canonical, equality of values is equality of coefficient
vectors, which is what makes exact zero-testing (and hence the whole PBW
checker) possible.

Rational numbers are ``fractions.Fraction`` throughout; N = 1 gives plain
exact rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError, InputError

RationalLike = int | Fraction


def euler_phi(n: int) -> int:
    """Euler totient, by trial-division factorization (n is small here)."""
    if n < 1:
        raise InputError(f"totient undefined for {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Exact division in Q[x]; den need not be monic."""
    num = _poly_trim(list(num))
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    while num and len(num) >= len(den):
        shift = len(num) - len(den)
        factor = num[-1] / lead
        quot[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        _poly_trim(num)
    return quot, num


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


_CYCLO_CACHE: dict[int, tuple[Fraction, ...]] = {}


def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial.

    Computed by dividing x^n - 1 by the cyclotomic polynomials of the
    proper divisors of n; results are memoized.
    """
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    if n == 1:
        poly = (Fraction(-1), Fraction(1))
    else:
        num = [Fraction(0)] * (n + 1)
        num[0], num[n] = Fraction(-1), Fraction(1)
        for d in _divisors(n)[:-1]:
            quot, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            if rem:
                raise ArithmeticError(f"cyclotomic division left a remainder at n={n}, d={d}")
            num = quot
        poly = tuple(num)
    _CYCLO_CACHE[n] = poly
    return poly


class CycField:
    """The cyclotomic field Q(zeta_N), with canonical-form arithmetic.

    Field objects are interned per order (see :func:`cyclotomic_field`),
    so scalars of the same order share one instance.
    """

    def __init__(self, order: int):
        if order < 1:
            raise InputError(f"cyclotomic order must be >= 1, got {order}")
        self.order = order
        self.degree = euler_phi(order)
        self.modulus = cyclotomic_polynomial(order)
        self.zero = CycScalar(self, (Fraction(0),) * self.degree)
        self.one = self.scalar(1)

    def _reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        """Remainder modulo the (monic) cyclotomic polynomial, padded to degree."""
        deg = self.degree
        for top in range(len(coeffs) - 1, deg - 1, -1):
            c = coeffs[top]
            if c:
                coeffs[top] = Fraction(0)
                for i in range(deg):
                    coeffs[top - deg + i] -= c * self.modulus[i]
        out = coeffs[:deg]
        out.extend([Fraction(0)] * (deg - len(out)))
        return tuple(out)

    def scalar(self, value: RationalLike) -> CycScalar:
        """Embed a rational number."""
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(value)
        return CycScalar(self, tuple(coeffs))

    def zeta(self, power: int = 1) -> CycScalar:
        """zeta_N^power in canonical form."""
        power %= self.order
        return CycScalar(self, self._reduce([Fraction(0)] * power + [Fraction(1)]))

    def from_coeffs(self, coeffs) -> CycScalar:
        return CycScalar(self, self._reduce([Fraction(c) for c in coeffs]))

    def __eq__(self, other):
        return isinstance(other, CycField) and other.order == self.order

    def __hash__(self):
        return hash(("CycField", self.order))

    def __repr__(self):
        return f"CycField({self.order})"


_FIELD_CACHE: dict[int, CycField] = {}


def cyclotomic_field(order: int) -> CycField:
    """Interned CycField of the given order."""
    field = _FIELD_CACHE.get(order)
    if field is None:
        field = _FIELD_CACHE[order] = CycField(order)
    return field


class CycScalar:
    """An element of Q(zeta_N), canonical modulo the cyclotomic polynomial.

    Immutable; operators accept ints and Fractions on either side.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> "CycScalar | None":
        if isinstance(other, CycScalar):
            if other.field.order != self.field.order:
                raise FieldMismatchError(
                    f"cannot mix Q(zeta_{self.field.order}) and Q(zeta_{other.field.order})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycScalar(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycScalar(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CycScalar(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        conv = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return CycScalar(self.field, self.field._reduce(conv))

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        """Multiplicative inverse, by the extended Euclidean algorithm
        against the (irreducible) cyclotomic modulus."""
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # r0 = modulus, r1 = self; track s only against self.
        r0 = list(self.field.modulus)
        r1 = _poly_trim(list(self.coeffs))
        s0: list[Fraction] = []
        s1: list[Fraction] = [Fraction(1)]
        while True:
            quot, rem = _poly_divmod(r0, r1)
            if not _poly_trim(rem):
                break
            s_new = list(s0)
            s_new.extend([Fraction(0)] * (len(quot) + len(s1) - 1 - len(s_new)))
            for i, qi in enumerate(quot):
                if qi:
                    for j, sj in enumerate(s1):
                        s_new[i + j] -= qi * sj
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_trim(s_new)
        # r1 is now a unit (nonzero constant) since the modulus is irreducible.
        if len(r1) != 1:
            raise ArithmeticError("gcd with cyclotomic modulus is not constant")
        unit = r1[0]
        return CycScalar(self.field, self.field._reduce([c / unit for c in s1]))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = self.field.one
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.scalar(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.field.order == other.field.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InputError(f"{self} is not rational")
        return self.coeffs[0]

    def __str__(self):
        """Render in the scalar literal syntax (parsable back)."""
        parts: list[str] = []
        for power, c in enumerate(self.coeffs):
            if not c:
                continue
            if power == 0:
                mono = str(abs(c))
            else:
                zpow = "z" if power == 1 else f"z^{power}"
                mono = zpow if abs(c) == 1 else f"{abs(c)}*{zpow}"
            if not parts:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f" + {mono}" if c > 0 else f" - {mono}")
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self} in Q(zeta_{self.field.order})>"


def root_of_unity(order: int, power: int = 1) -> CycScalar:
    """zeta_order^power as an element of Q(zeta_order)."""
    return cyclotomic_field(order).zeta(power)


def multiplicative_order(a: CycScalar, bound: int = 10_000) -> int:
    """Order of a in the unit group, by repeated multiplication."""
    if not a:
        raise InputError("zero has no multiplicative order")
    acc = a
    for k in range(1, bound + 1):
        if acc == a.field.one:
            return k
        acc = acc * a
    raise InputError(f"no order found within {bound} steps")


def parse_scalar(text: str, field: CycField) -> CycScalar:
    """Parse a scalar literal like ``1/2*z^3 - 2`` into the given field.

    This is the literal syntax used in problem files; the full expression
    grammar (with letters v<i> and t.<name>) lives in :mod:`qpbw.parsing`.
    """
    from .parsing import parse_scalar_text

    return parse_scalar_text(text, field)
