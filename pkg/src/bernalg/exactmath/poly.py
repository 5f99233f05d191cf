"""Sparse multivariate polynomials with exact coefficients.

Used to decide "for all x" identities coefficient-wise: a polynomial
identity holds symbolically iff every coefficient of the difference is
zero, which is independent of the size of the field.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..errors import FieldMismatch
from .field import Field, Raw


class MultiPoly:
    """Polynomial in ``nvars`` variables; ``terms`` maps exponent tuples to raw coefficients.

    Zero coefficients are never stored, so the representation is canonical
    regardless of the order in which terms were accumulated.
    """

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Mapping[tuple, Raw] | None = None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
                c = field.coerce(c)
                if c != 0:
                    clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field, nvars, terms):
        p = cls.__new__(cls)
        p.field, p.nvars, p.terms = field, nvars, terms
        return p

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "MultiPoly":
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field: Field, nvars: int, c) -> "MultiPoly":
        c = field.coerce(c)
        return cls._raw(field, nvars, {(0,) * nvars: c} if c != 0 else {})

    @classmethod
    def var(cls, field: Field, nvars: int, i: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(field, nvars, {tuple(exp): field.one})

    @classmethod
    def linear(cls, field: Field, nvars: int, coeffs: Sequence[Raw], offset: int = 0) -> "MultiPoly":
        """``sum_i coeffs[i] * x_{offset+i}``."""
        terms = {}
        for i, c in enumerate(coeffs):
            if c != 0:
                exp = [0] * nvars
                exp[offset + i] = 1
                terms[tuple(exp)] = c
        return cls._raw(field, nvars, terms)

    def _check(self, other: "MultiPoly"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field} polynomials")
        if other.nvars != self.nvars:
            raise ValueError("polynomials over different variable sets")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = F.add(out.get(exp, F.zero), c)
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return MultiPoly._raw(F, self.nvars, out)

    def __neg__(self) -> "MultiPoly":
        F = self.field
        return MultiPoly._raw(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c: Raw) -> "MultiPoly":
        F = self.field
        if c == 0:
            return MultiPoly.zero(F, self.nvars)
        return MultiPoly._raw(F, self.nvars, {e: F.mul(v, c) for e, v in self.terms.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = F.add(out.get(e, F.zero), F.mul(c1, c2))
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly._raw(F, self.nvars, out)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, point: Sequence[Raw]) -> Raw:
        F = self.field
        total = F.zero
        for exp, c in self.terms.items():
            term = c
            for x, k in zip(point, exp):
                if k:
                    term = F.mul(term, x ** k if F.kind == "Q" else pow(x, k, F.p))
            total = F.add(total, term)
        return total

    def first_term(self):
        """Lexicographically least (exponent, coefficient) pair, or ``None``."""
        if not self.terms:
            return None
        exp = min(self.terms)
        return exp, self.terms[exp]

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(exp) if k)
            parts.append(f"{self.field.fmt(self.terms[exp])}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def poly_is_zero(P: MultiPoly) -> bool:
    return P.is_zero()


def format_monomial(exp: Iterable[int], names: Sequence[str]) -> str:
    parts = [n + (f"^{k}" if k > 1 else "") for n, k in zip(names, exp) if k]
    return "*".join(parts) or "1"
