"""Exact scalar fields: the rationals and prime fields GF(p), p odd.

A :class:`Field` performs arithmetic on *raw* values (``Fraction`` for Q,
``int`` in ``[0, p)`` for GF(p)); this keeps the polynomial and matrix
kernels free of wrapper overhead. :class:`Scalar` is the checked,
operator-overloaded element type for user-facing code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from ..errors import CharTwo, FieldMismatch, InputError, UnsupportedField, ZeroInverse

Raw = Union[int, Fraction]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


@dataclass(frozen=True)
class Field:
    """A field specification, ``Field('Q')`` or ``Field('GF', p)``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise InputError("the rational field takes no modulus")
        elif self.kind == "GF":
            if self.p is None or not _is_prime(self.p):
                raise InputError(f"GF modulus must be prime, got {self.p!r}")
            if self.p == 2:
                raise CharTwo("characteristic 2 is not supported")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    # -- construction / parsing -------------------------------------------------

    @classmethod
    def parse(cls, spec) -> "Field":
        """Accept ``"Q"``, ``"GF:5"``, a :class:`Field`, or the JSON object form."""
        if isinstance(spec, Field):
            return spec
        if isinstance(spec, dict):
            kind = spec.get("field")
            if kind == "Q":
                return cls("Q")
            if kind == "GF":
                p = spec.get("p")
                if not isinstance(p, int) or isinstance(p, bool):
                    raise InputError("GF field needs an integer 'p'")
                return cls("GF", p)
            if isinstance(kind, (str, dict)):
                return cls.parse(kind)
            raise InputError(f"bad field spec {spec!r}")
        if isinstance(spec, str):
            s = spec.strip()
            if s.upper() in ("Q", "QQ"):
                return cls("Q")
            head, _, tail = s.partition(":")
            if head.upper() in ("GF", "F") and tail:
                try:
                    p = int(tail)
                except ValueError:
                    raise InputError(f"bad field spec {spec!r}") from None
                return cls("GF", p)
        raise InputError(f"bad field spec {spec!r}")

    def to_json(self) -> dict:
        return {"field": "Q"} if self.kind == "Q" else {"field": "GF", "p": self.p}

    def __str__(self):
        return "Q" if self.kind == "Q" else f"GF({self.p})"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "GF"

    def require_prime_field(self, what: str = "this operation") -> int:
        if self.kind != "GF":
            raise UnsupportedField(f"{what} requires a prime field GF(p), got {self}")
        return self.p

    # -- raw arithmetic ---------------------------------------------------------

    @property
    def zero(self) -> Raw:
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self) -> Raw:
        return Fraction(1) if self.kind == "Q" else 1

    def coerce(self, x) -> Raw:
        """Convert an int, Fraction, ``"a/b"`` string or Scalar to a raw value."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} element used in {self}")
            return x.value
        if isinstance(x, bool):
            raise InputError("booleans are not field scalars")
        if isinstance(x, str):
            try:
                x = Fraction(x.strip())
            except (ValueError, ZeroDivisionError):
                raise InputError(f"bad scalar {x!r}") from None
        if isinstance(x, int):
            return Fraction(x) if self.kind == "Q" else x % self.p
        if isinstance(x, Fraction):
            if self.kind == "Q":
                return x
            den = x.denominator % self.p
            if den == 0:
                raise ZeroInverse(f"{x} has no image in {self}")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise InputError(f"cannot interpret {x!r} as a scalar of {self}")

    def add(self, a: Raw, b: Raw) -> Raw:
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a: Raw, b: Raw) -> Raw:
        return a - b if self.kind == "Q" else (a - b) % self.p

    def neg(self, a: Raw) -> Raw:
        return -a if self.kind == "Q" else (-a) % self.p

    def mul(self, a: Raw, b: Raw) -> Raw:
        return a * b if self.kind == "Q" else a * b % self.p

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise ZeroInverse("inverse of zero")
        return 1 / a if self.kind == "Q" else pow(a, -1, self.p)

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def half(self) -> Raw:
        return self.inv(self.coerce(2))

    def elements(self) -> Iterator[int]:
        p = self.require_prime_field("element enumeration")
        return iter(range(p))

    def to_json_value(self, a: Raw):
        """Ints stay ints; non-integral rationals become ``"p/q"`` strings."""
        if self.kind == "GF":
            return int(a)
        return int(a) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def fmt(self, a: Raw) -> str:
        return str(self.to_json_value(a))

    def element(self, x) -> "Scalar":
        return Scalar(self, self.coerce(x))


Q = Field("Q")


def GF(p: int) -> Field:
    return Field("GF", p)


@dataclass(frozen=True)
class Scalar:
    """Immutable element of a :class:`Field` with overloaded operators."""

    field: Field
    value: Raw

    def _other(self, other) -> Raw:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field} scalars")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field.fmt(self.value)} in {self.field}"
