"""Exact coefficient fields: prime fields GF(p) and the rationals QQ.

Polynomials store *raw* coefficients for speed: plain ``int`` residues in
``[0, p)`` for GF(p) and :class:`fractions.Fraction` for QQ.  The field
objects below own the arithmetic on raw values.  :class:`PrimeFieldElement`
is the boxed value type handed to users; over QQ the boxed type is
``Fraction`` itself, which is already canonical (reduced, positive
denominator).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union


class ContextError(ValueError):
    """Operands live in different coefficient fields or rings."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field GF(p).  Raw elements are ints in ``[0, p)``."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"GF(p) needs a prime modulus, got {p}")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    zero = 0
    one = 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    __str__ = __repr__

    def __call__(self, x) -> "PrimeFieldElement":
        return PrimeFieldElement(self.convert(x), self)

    def convert(self, x) -> int:
        """Map an int, Fraction or element of this field to a raw residue."""
        if isinstance(x, PrimeFieldElement):
            if x.field != self:
                raise ContextError(f"element of {x.field} used in {self}")
            return x.residue
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 is not invertible in {self}")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def format(self, a: int) -> str:
        return str(a)

    def is_one(self, a) -> bool:
        return a == 1


class RationalField:
    """The field QQ.  Raw elements are ``Fraction`` instances."""

    __slots__ = ()

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    __str__ = __repr__

    def __call__(self, x) -> Fraction:
        return self.convert(x)

    def convert(self, x) -> Fraction:
        if isinstance(x, PrimeFieldElement):
            raise ContextError(f"element of {x.field} used in QQ")
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not invertible in QQ")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return a / b

    def format(self, a: Fraction) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def is_one(self, a) -> bool:
        return a == 1


QQ = RationalField()
Field = Union[PrimeField, RationalField]


def GF(p: int) -> PrimeField:
    return PrimeField(p)


class PrimeFieldElement:
    """An immutable residue class modulo a prime."""

    __slots__ = ("residue", "field")

    def __init__(self, residue: int, field: PrimeField):
        self.residue = residue % field.p
        self.field = field

    def _other(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.field != self.field:
                raise ContextError(f"cannot mix {self.field} and {other.field}")
            return other.residue
        if isinstance(other, int):
            return other % self.field.p
        raise ContextError(f"cannot combine {self.field} element with {type(other).__name__}")

    def __add__(self, other):
        return PrimeFieldElement(self.residue + self._other(other), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement(self.residue - self._other(other), self.field)

    def __rsub__(self, other):
        return PrimeFieldElement(self._other(other) - self.residue, self.field)

    def __mul__(self, other):
        return PrimeFieldElement(self.residue * self._other(other), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.field)

    def __truediv__(self, other):
        return self * PrimeFieldElement(self._other(other), self.field).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return PrimeFieldElement(pow(self.residue, n, self.field.p), self.field)

    def inverse(self) -> "PrimeFieldElement":
        return PrimeFieldElement(self.field.inv(self.residue), self.field)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.field == other.field and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.field.p))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} mod {self.field.p}"

    def __str__(self):
        return str(self.residue)


def field_add(a, b):
    return a + b


def field_sub(a, b):
    return a - b


def field_mul(a, b):
    return a * b


def field_inverse(a):
    """Multiplicative inverse of a boxed field element (``Fraction`` over QQ)."""
    if isinstance(a, PrimeFieldElement):
        return a.inverse()
    if isinstance(a, Fraction):
        if a == 0:
            raise ZeroDivisionError("0 is not invertible in QQ")
        return 1 / a
    raise ContextError(f"not a field element: {a!r}")


_GF_RE = re.compile(r"^\s*(?:GF|ZZ/|F_?)\(?\s*(\d+)\s*\)?\s*$")


def parse_field(text: str) -> Field:
    """Parse ``QQ`` or ``GF(p)`` (also accepts ``ZZ/p``)."""
    t = text.strip()
    if t in ("QQ", "Q"):
        return QQ
    m = _GF_RE.match(t)
    if m is None:
        raise ValueError(f"unknown coefficient field {text!r}")
    return PrimeField(int(m.group(1)))
