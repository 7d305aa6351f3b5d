"""Exact scalar arithmetic over the rationals and over prime fields.

Scalar values are deliberately plain: elements of Q are `fractions.Fraction`
(arbitrary-precision, always reduced, positive denominator) and elements of
F_p are ints in [0, p).  The field object carries the arithmetic; an algebra
stores one field reference and its scalars stay compact.  Mixing values from
different fields is an error, never a coercion.

Text format for scalars is ``[-]?digits(/digits)?`` and is shared by the
JSON interchange format and the CLI.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import (
    DivisionByZero,
    FieldMismatch,
    MalformedScalar,
    NonInvertibleModP,
    ZeroDenominator,
)

_SCALAR_RE = re.compile(r"^-?[0-9]+(?:/[0-9]+)?$")

# deterministic Miller-Rabin; this base set is exact for n < 3.3 * 10^24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def _split_scalar_text(text):
    if not isinstance(text, str) or not _SCALAR_RE.match(text):
        raise MalformedScalar(f"bad scalar text: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        return int(num), int(den)
    return int(text), 1


class Rationals:
    """The field Q.  Elements are reduced `Fraction` values."""

    kind = "Q"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        raise FieldMismatch(f"not a rational scalar: {x!r}")

    def parse(self, text: str) -> Fraction:
        num, den = _split_scalar_text(text)
        if den == 0:
            raise ZeroDenominator(f"zero denominator in {text!r}")
        return Fraction(num, den)

    def render(self, x) -> str:
        x = self.coerce(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def add(self, a, b):
        return self.coerce(a) + self.coerce(b)

    def sub(self, a, b):
        return self.coerce(a) - self.coerce(b)

    def mul(self, a, b):
        return self.coerce(a) * self.coerce(b)

    def div(self, a, b):
        b = self.coerce(b)
        if b == 0:
            raise DivisionByZero("division by zero in Q")
        return self.coerce(a) / b

    def neg(self, a):
        return -self.coerce(a)

    def inv(self, a):
        return self.div(self.one, a)

    def is_zero(self, a) -> bool:
        return self.coerce(a) == 0

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, q: Fraction) -> Fraction:
        return Fraction(q)

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("lienil.Rationals")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p.  Elements are ints in [0, p)."""

    kind = "Fp"

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"modulus must be prime, got {p!r}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x % self.p
        raise FieldMismatch(f"not an F_{self.p} residue: {x!r}")

    def parse(self, text: str) -> int:
        num, den = _split_scalar_text(text)
        if den == 0:
            raise ZeroDenominator(f"zero denominator in {text!r}")
        if den % self.p == 0:
            raise NonInvertibleModP(f"denominator of {text!r} is 0 mod {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def render(self, x) -> str:
        return str(self.coerce(x))

    def add(self, a, b):
        return (self.coerce(a) + self.coerce(b)) % self.p

    def sub(self, a, b):
        return (self.coerce(a) - self.coerce(b)) % self.p

    def mul(self, a, b):
        return self.coerce(a) * self.coerce(b) % self.p

    def div(self, a, b):
        b = self.coerce(b)
        if b == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return self.coerce(a) * pow(b, -1, self.p) % self.p

    def neg(self, a):
        return -self.coerce(a) % self.p

    def inv(self, a):
        return self.div(self.one, a)

    def is_zero(self, a) -> bool:
        return self.coerce(a) == 0

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, q: Fraction) -> int:
        if q.denominator % self.p == 0:
            raise NonInvertibleModP(f"{q} has no residue mod {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def to_json(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("lienil.PrimeField", self.p))

    def __repr__(self):
        return f"F_{self.p}"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_scalar(text: str, field):
    """Parse ``[-]?digits(/digits)?`` into a reduced scalar of the field."""
    return field.parse(text)


def render_scalar(x, field) -> str:
    return field.render(x)


def scalar_arith(field, a, b, op: str):
    """Apply one of add/sub/mul/div to two scalars of the same field."""
    try:
        fn = {"add": field.add, "sub": field.sub, "mul": field.mul, "div": field.div}[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    return fn(a, b)


def field_from_json(obj):
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        p = obj["Fp"]
        if not isinstance(p, int):
            raise ValueError(f"bad field spec {obj!r}")
        return PrimeField(p)
    raise ValueError(f"bad field spec {obj!r}")


def field_to_json(field):
    return field.to_json()
