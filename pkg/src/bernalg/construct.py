"""Semidirect products ``V x| k``, the structure decomposition, and named examples."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .algcore import (
    Algebra,
    BaricAlgebra,
    check_4algebra,
    check_bernstein,
    mul,
)
from .bernop import endo, is_bernstein_operator, is_idempotent
from .errors import DimensionMismatch, InputError, NotBernstein, NotIdempotent, UnknownName
from .exactmath import linalg as la
from .exactmath.field import Field, GF


def semidirect(V: Algebra, Om) -> BaricAlgebra:
    """The algebra on ``V + k f`` with ``f^2 = f``, ``e_i f = Om(e_i)/2`` and ``V``'s own products.

    No identities are required of ``(V, Om)``: the result is Bernstein exactly
    when ``V`` is a 4-algebra and ``Om`` a Bernstein operator. ``f`` is the
    last basis vector and the weight is the projection onto it.
    """
    F = V.field
    Om = endo(F, Om)
    n = V.dim
    if len(Om) != n:
        raise DimensionMismatch("operator size does not match the algebra")
    half = F.half()
    zero = F.zero
    sc = [[[zero] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            sc[i][j] = list(V.sc[i][j]) + [zero]
        img = [F.mul(half, Om[r][i]) for r in range(n)] + [zero]
        sc[i][n] = img
        sc[n][i] = list(img)
    sc[n][n] = [zero] * n + [F.one]
    alg = Algebra(F, sc, tuple(V.basis) + ("f",))
    return BaricAlgebra(alg, [zero] * n + [F.one], distinguished=n)


def trivial_bernstein(n: int, Om, field=None) -> BaricAlgebra:
    """``semidirect`` of the ``n``-dimensional zero algebra by an idempotent ``Om``."""
    F = Field.parse(field) if field is not None else Field("Q")
    Om = endo(F, Om)
    if len(Om) != n:
        raise DimensionMismatch("operator size does not match n")
    if not is_idempotent(F, Om):
        raise NotIdempotent("a trivial Bernstein algebra needs an idempotent operator")
    return semidirect(Algebra.abelian(F, n), Om)


@dataclass(frozen=True)
class Decomposition:
    """Output of :func:`decompose`.

    ``psi`` is the matrix (columns in the coordinates of ``B``) of the
    isomorphism ``semidirect(V, omega_op) -> B`` sending ``(x, a)`` to
    ``x + a e``; its first ``dim V`` columns are ``kernel_basis``.
    ``iso`` is the same map written as a morphism witness once ``B`` is
    expressed in the transported basis, i.e. ``(0, I)``.
    """

    V: Algebra
    omega_op: tuple
    e: tuple
    kernel_basis: tuple
    psi: tuple
    iso: Any

    def to_original(self, x, alpha) -> tuple:
        F = self.V.field
        return la.apply(F, self.psi, tuple(la.as_vector(F, x)) + (F.coerce(alpha),))

    def from_original(self, y) -> tuple[tuple, Any]:
        F = self.V.field
        coords = la.apply(F, la.inverse(F, self.psi), la.as_vector(F, y))
        return coords[:-1], coords[-1]


def decompose(B: BaricAlgebra) -> Decomposition:
    """Recover ``(V, Om)`` with ``semidirect(V, Om)`` isomorphic to ``B``.

    ``x`` is the first basis vector of nonzero weight, rescaled to weight 1;
    ``e = x^2`` is then an idempotent of weight 1 and ``Om(v) = 2 e v`` on
    ``V = ker w``.
    """
    if not check_bernstein(B):
        raise NotBernstein("decompose requires a Bernstein algebra")
    from .morphcls import MorphismWitness

    F, A, w = B.field, B.alg, B.weight
    N = A.dim
    b = next(i for i, c in enumerate(w) if c != 0)
    x = tuple(F.inv(w[b]) if k == b else F.zero for k in range(N))
    e = mul(A, x, x)
    kernel = la.nullspace(F, (w,), N)
    n = len(kernel)
    two = F.coerce(2)

    def coords(v):
        return la.coordinates(F, kernel, v)

    sc = [[coords(mul(A, kernel[i], kernel[j])) for j in range(n)] for i in range(n)]
    V = Algebra(F, sc, [f"k{i + 1}" for i in range(n)])
    om_cols = [coords(la.scale(F, two, mul(A, e, kernel[i]))) for i in range(n)]
    Om = la.from_columns(F, om_cols, n)
    psi = la.from_columns(F, list(kernel) + [e], N)
    iso = MorphismWitness(tuple([F.zero] * n), la.identity(F, n))
    return Decomposition(V, Om, e, tuple(kernel), psi, iso)


# -- catalog -------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """A named example; ``kind`` is ``"algebra"``, ``"operator"`` or ``"baric"``.

    Operator entries carry the 4-algebra they act on in ``algebra``.
    """

    name: str
    kind: str
    value: Any
    provenance: str
    algebra: Algebra | None = None


def _exnetri(F):
    return Algebra.from_products(F, 3, {(0, 1): (1, 0, 0)})


def _displayed(F, rows):
    # displayed matrices list the image of e_i in row i; store columns instead
    return la.transpose(la.as_matrix(F, rows))


_EXNETRI_OPS = {
    "exnetri.Omega1": [[1, 0, 0], [0, 0, 0], [0, 0, 1]],
    "exnetri.Omega2": [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
    "exnetri.Omega3": [[1, 0, 0], [0, 0, 0], [1, 0, 0]],
}


def _build(name: str, F: Field) -> CatalogEntry:
    if name in ("V0", "abelian2"):
        return CatalogEntry(name, "algebra", Algebra.abelian(F, 2), "2-dim abelian 4-algebra")
    if name.startswith("abelian") and name[7:].isdigit():
        n = int(name[7:])
        return CatalogEntry(name, "algebra", Algebra.abelian(F, n), f"{n}-dim abelian 4-algebra")
    if name == "V1":
        return CatalogEntry(name, "algebra", Algebra.from_products(F, 2, {(0, 0): (0, 1)}), "2-dim 4-algebra e1^2 = e2")
    if name == "V2":
        return CatalogEntry(
            name, "algebra", Algebra.from_products(F, 2, {(0, 1): (0, 1)}), "2-dim 4-algebra e1 e2 = e2"
        )
    if name in ("W", "exnetri"):
        return CatalogEntry(name, "algebra", _exnetri(F), "3-dim 4-algebra e1 e2 = e1")
    if name in _EXNETRI_OPS:
        return CatalogEntry(
            name,
            "operator",
            _displayed(F, _EXNETRI_OPS[name]),
            "class representative on the 3-dim 4-algebra e1 e2 = e1 (entered transposed from the row-wise display)",
            algebra=_exnetri(F),
        )
    if name in ("exnetri.B1", "exnetri.B2", "exnetri.B3"):
        op = _displayed(F, _EXNETRI_OPS["exnetri.Omega" + name[-1]])
        return CatalogEntry(
            name, "baric", semidirect(_exnetri(F), op), "4-dim Bernstein algebra with kernel e1 e2 = e1"
        )
    if name == "A1":
        return CatalogEntry(name, "baric", trivial_bernstein(1, [[0]], F), "2-dim Bernstein algebra f^2 = f")
    if name == "A2":
        return CatalogEntry(
            name, "baric", trivial_bernstein(1, [[1]], F), "2-dim Bernstein algebra f^2 = f, e1 f = e1/2"
        )
    if name == "A1.3":
        return CatalogEntry(name, "baric", trivial_bernstein(2, [[0, 0], [0, 0]], F), "constant 3-dim Bernstein algebra")
    if name == "A2.3":
        return CatalogEntry(
            name, "baric", trivial_bernstein(2, [[1, 0], [0, 0]], F), "3-dim Bernstein algebra with e1 f = e1/2"
        )
    if name == "A3":
        return CatalogEntry(name, "baric", trivial_bernstein(2, [[1, 0], [0, 1]], F), "unit 3-dim Bernstein algebra")
    raise UnknownName(name)


CATALOG_NAMES = (
    "abelian1", "V0", "V1", "V2", "exnetri",
    "exnetri.Omega1", "exnetri.Omega2", "exnetri.Omega3",
    "exnetri.B1", "exnetri.B2", "exnetri.B3",
    "A1", "A2", "A1.3", "A2.3", "A3",
)  # fmt: skip


def catalog(name: str, field=None) -> CatalogEntry:
    """Look up a named example over ``field`` (default GF(5)); re-validated on every load."""
    F = Field.parse(field) if field is not None else GF(5)
    entry = _build(name, F)
    if entry.kind == "algebra" and not check_4algebra(entry.value):
        raise InputError(f"catalog entry {name} is not a 4-algebra")
    if entry.kind == "operator" and not is_bernstein_operator(entry.algebra, entry.value):
        raise InputError(f"catalog entry {name} is not a Bernstein operator")
    if entry.kind == "baric" and not check_bernstein(entry.value):
        raise InputError(f"catalog entry {name} is not a Bernstein algebra")
    return entry


def catalog_bernstein_algebras(field=None) -> dict[str, BaricAlgebra]:
    return {n: catalog(n, field).value for n in CATALOG_NAMES if _build(n, GF(5)).kind == "baric"}

