"""Structure-constant algebras, baric algebras and their identity checks.

Every "for all x" identity is checked symbolically: coordinates of the
generic element are polynomial variables and the identity holds iff all
coefficients of the coordinate polynomials vanish.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InputError, UnsupportedField
from .exactmath import linalg as la
from .exactmath.field import Field, Raw
from .exactmath.gfarray import all_vectors
from .exactmath.poly import MultiPoly, format_monomial

MAX_DIM = 16


class Algebra:
    """Finite-dimensional commutative algebra given by structure constants.

    ``sc[i][j][k]`` is the coefficient of ``e_k`` in ``e_i * e_j``. The
    tensor must be symmetric in ``(i, j)``; asymmetric input is rejected.
    """

    __slots__ = ("field", "dim", "basis", "sc", "_np")

    def __init__(self, field: Field, sc, basis: Sequence[str] | None = None):
        field = Field.parse(field)
        n = len(sc)
        if n > MAX_DIM:
            raise InputError(f"dimension {n} exceeds the supported maximum {MAX_DIM}")
        rows = []
        for i in range(n):
            if len(sc[i]) != n:
                raise DimensionMismatch("structure constants must be an n x n x n tensor")
            row = []
            for j in range(n):
                if len(sc[i][j]) != n:
                    raise DimensionMismatch("structure constants must be an n x n x n tensor")
                row.append(tuple(field.coerce(c) for c in sc[i][j]))
            rows.append(tuple(row))
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InputError(f"structure constants are not commutative at (e{i}, e{j})")
        self.field = field
        self.dim = n
        self.sc = tuple(rows)
        if basis is None:
            basis = [f"e{i + 1}" for i in range(n)]
        if len(basis) != n:
            raise DimensionMismatch("basis names do not match dimension")
        self.basis = tuple(basis)
        self._np = None

    @classmethod
    def from_products(cls, field, dim: int, products: dict, basis=None) -> "Algebra":
        """Build from sparse products ``{(i, j): vector}``; unlisted products are zero."""
        field = Field.parse(field)
        sc = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
        seen = {}
        for (i, j), vec in products.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"basis index out of range in product ({i}, {j})")
            vec = la.as_vector(field, vec)
            if len(vec) != dim:
                raise DimensionMismatch("product vector has the wrong length")
            key = (min(i, j), max(i, j))
            if key in seen and seen[key] != vec:
                raise InputError(f"conflicting products for (e{key[0]}, e{key[1]})")
            seen[key] = vec
            sc[i][j] = list(vec)
            sc[j][i] = list(vec)
        return cls(field, sc, basis)

    @classmethod
    def abelian(cls, field, dim: int, basis=None) -> "Algebra":
        field = Field.parse(field)
        return cls(field, [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)], basis)

    def product(self, i: int, j: int) -> tuple:
        return self.sc[i][j]

    def is_abelian(self) -> bool:
        return all(c == 0 for plane in self.sc for row in plane for c in row)

    def to_numpy(self) -> np.ndarray:
        """``(n, n, n)`` int64 tensor of structure constants (prime fields only)."""
        self.field.require_prime_field("numpy export")
        if self._np is None:
            arr = np.array(self.sc, dtype=np.int64).reshape(self.dim, self.dim, self.dim)
            arr.setflags(write=False)
            self._np = arr
        return self._np

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.field == other.field and self.sc == other.sc

    def __hash__(self):
        return hash((self.field, self.sc))

    def __repr__(self):
        F = self.field
        parts = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                v = self.sc[i][j]
                if any(c != 0 for c in v):
                    parts.append(f"{self.basis[i]}*{self.basis[j]} = {format_vector(F, v, self.basis)}")
        body = ", ".join(parts) if parts else "abelian"
        return f"Algebra(dim={self.dim} over {F}: {body})"


def format_vector(F: Field, v, names) -> str:
    terms = []
    for c, name in zip(v, names):
        if c == 0:
            continue
        terms.append(name if c == F.one else f"{F.fmt(c)}*{name}")
    return " + ".join(terms) if terms else "0"


class BaricAlgebra:
    """An algebra with a weight: a nonzero algebra morphism to the field.

    ``distinguished`` optionally records the index of the basis vector ``f``
    of a semidirect product.
    """

    __slots__ = ("alg", "weight", "distinguished")

    def __init__(self, alg: Algebra, weight, distinguished: int | None = None):
        F = alg.field
        weight = la.as_vector(F, weight)
        if len(weight) != alg.dim:
            raise DimensionMismatch("weight length does not match algebra dimension")
        if all(w == 0 for w in weight):
            raise InputError("the weight must be nonzero")
        bad = weight_violation(alg, weight)
        if bad is not None:
            i, j = bad
            raise InputError(f"weight is not multiplicative on ({alg.basis[i]}, {alg.basis[j]})")
        self.alg = alg
        self.weight = weight
        self.distinguished = distinguished

    @property
    def field(self) -> Field:
        return self.alg.field

    @property
    def dim(self) -> int:
        return self.alg.dim

    def weight_of(self, x) -> Raw:
        F = self.field
        return dot(F, self.weight, la.as_vector(F, x))

    def __eq__(self, other):
        return isinstance(other, BaricAlgebra) and self.alg == other.alg and self.weight == other.weight

    def __hash__(self):
        return hash((self.alg, self.weight))

    def __repr__(self):
        return f"BaricAlgebra({self.alg!r}, weight={[self.field.fmt(w) for w in self.weight]})"


def dot(F: Field, u, v) -> Raw:
    s = F.zero
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            s = F.add(s, F.mul(a, b))
    return s


def weight_violation(alg: Algebra, w) -> tuple[int, int] | None:
    F = alg.field
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            if dot(F, w, alg.sc[i][j]) != F.mul(w[i], w[j]):
                return i, j
    return None


# -- concrete arithmetic -------------------------------------------------------


def mul(A: Algebra, x, y) -> tuple:
    """Product of two coordinate vectors."""
    F = A.field
    x, y = la.as_vector(F, x), la.as_vector(F, y)
    if len(x) != A.dim or len(y) != A.dim:
        raise DimensionMismatch(f"vectors must have length {A.dim}")
    out = [F.zero] * A.dim
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            c = F.mul(xi, yj)
            for k, s in enumerate(A.sc[i][j]):
                if s != 0:
                    out[k] = F.add(out[k], F.mul(c, s))
    return tuple(out)


def basis_vector(F: Field, n: int, i: int) -> tuple:
    return tuple(F.one if k == i else F.zero for k in range(n))


def change_basis(A: Algebra, P, basis=None) -> Algebra:
    """The same algebra written in the basis whose ``j``-th vector is column ``j`` of ``P``."""
    F = A.field
    P = la.as_matrix(F, P)
    Pinv = la.inverse(F, P)
    cols = [la.column(P, j) for j in range(A.dim)]
    sc = [[la.apply(F, Pinv, mul(A, cols[i], cols[j])) for j in range(A.dim)] for i in range(A.dim)]
    return Algebra(F, sc, basis if basis is not None else A.basis)


def change_basis_baric(B: BaricAlgebra, P) -> BaricAlgebra:
    F = B.field
    P = la.as_matrix(F, P)
    w = tuple(dot(F, B.weight, la.column(P, j)) for j in range(B.dim))
    return BaricAlgebra(change_basis(B.alg, P), w)


# -- symbolic machinery --------------------------------------------------------


def sym_vector(F: Field, nvars: int, n: int, offset: int = 0) -> list[MultiPoly]:
    """Generic element ``sum_i x_{offset+i} e_i`` as a list of coordinate polynomials."""
    return [MultiPoly.var(F, nvars, offset + i) for i in range(n)]


def sym_mul(A: Algebra, X: Sequence[MultiPoly], Y: Sequence[MultiPoly]) -> list[MultiPoly]:
    F = A.field
    nvars = X[0].nvars if X else 0
    out = [MultiPoly.zero(F, nvars) for _ in range(A.dim)]
    for i in range(A.dim):
        if X[i].is_zero():
            continue
        for j in range(A.dim):
            if Y[j].is_zero():
                continue
            col = A.sc[i][j]
            if all(c == 0 for c in col):
                continue
            prod = X[i] * Y[j]
            for k, c in enumerate(col):
                if c != 0:
                    out[k] = out[k] + prod.scale(c)
    return out


def sym_apply(F: Field, M, X: Sequence[MultiPoly]) -> list[MultiPoly]:
    nvars = X[0].nvars if X else 0
    out = []
    for row in M:
        acc = MultiPoly.zero(F, nvars)
        for c, x in zip(row, X):
            if c != 0:
                acc = acc + x.scale(c)
        out.append(acc)
    return out


def sym_linear_form(F: Field, w, X: Sequence[MultiPoly]) -> MultiPoly:
    nvars = X[0].nvars if X else 0
    acc = MultiPoly.zero(F, nvars)
    for c, x in zip(w, X):
        if c != 0:
            acc = acc + x.scale(c)
    return acc


def poly_expand_square(A: Algebra, X: Sequence[MultiPoly] | None = None) -> list[MultiPoly]:
    """Coordinates of ``x^2`` for the generic element (or for the given polynomial vector)."""
    if X is None:
        X = sym_vector(A.field, A.dim, A.dim)
    if len(X) != A.dim:
        raise DimensionMismatch(f"need {A.dim} coordinate polynomials")
    return sym_mul(A, X, X)


@dataclass(frozen=True)
class Violation:
    """First nonzero coefficient of a failed identity."""

    identity: str
    component: str
    monomial: str
    coefficient: str

    def __str__(self):
        return (
            f"{self.identity} fails: coefficient of {self.monomial} in component "
            f"{self.component} is {self.coefficient}"
        )

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "component": self.component,
            "monomial": self.monomial,
            "coefficient": self.coefficient,
        }


def first_violation(identity: str, polys: Sequence[MultiPoly], components, var_names) -> Violation | None:
    for name, P in zip(components, polys):
        t = P.first_term()
        if t is not None:
            exp, c = t
            return Violation(identity, name, format_monomial(exp, var_names), P.field.fmt(c))
    return None


def _var_names(n: int, blocks: str = "x") -> list[str]:
    return [f"{b}{i + 1}" for b in blocks for i in range(n)]


def four_algebra_violation(A: Algebra) -> Violation | None:
    X = sym_vector(A.field, A.dim, A.dim)
    S = sym_mul(A, X, X)
    T = sym_mul(A, S, S)
    return first_violation("(x^2)^2 = 0", T, A.basis, _var_names(A.dim))


def check_4algebra(A: Algebra) -> bool:
    return four_algebra_violation(A) is None


def bernstein_violation(B: BaricAlgebra) -> Violation | None:
    A, F = B.alg, B.field
    X = sym_vector(F, A.dim, A.dim)
    S = sym_mul(A, X, X)
    T = sym_mul(A, S, S)
    w = sym_linear_form(F, B.weight, X)
    w2 = w * w
    diff = [t - w2 * s for t, s in zip(T, S)]
    return first_violation("(a^2)^2 = w(a)^2 a^2", diff, A.basis, _var_names(A.dim))


def check_bernstein(B: BaricAlgebra) -> bool:
    return bernstein_violation(B) is None


def normal_bernstein_violation(B: BaricAlgebra) -> Violation | None:
    A, F = B.alg, B.field
    n = A.dim
    X = sym_vector(F, 2 * n, n)
    Y = sym_vector(F, 2 * n, n, offset=n)
    S = sym_mul(A, X, X)
    lhs = sym_mul(A, S, Y)
    w = sym_linear_form(F, B.weight, X)
    rhs = sym_mul(A, X, Y)
    diff = [l - w * r for l, r in zip(lhs, rhs)]
    return first_violation("a^2 b = w(a) a b", diff, A.basis, _var_names(n, "xy"))


def check_normal_bernstein(B: BaricAlgebra) -> bool:
    return normal_bernstein_violation(B) is None


# -- weights ---------------------------------------------------------------------


def find_weights(A: Algebra, max_candidates: int = 10**7) -> list[tuple]:
    """All nonzero algebra morphisms ``A -> k``, as coordinate vectors.

    Over GF(p) every functional is tested (vectorized); over Q the
    quadratic system ``w_i w_j = w(e_i e_j)`` is solved exactly for dim <= 4.
    """
    F = A.field
    n = A.dim
    if F.kind == "GF":
        p = F.p
        if p**n > max_candidates:
            raise UnsupportedField(f"{p}^{n} functionals exceed the exhaustive limit")
        W = all_vectors(p, n)
        sc = A.to_numpy()
        ok = np.any(W != 0, axis=1)
        for i in range(n):
            for j in range(i, n):
                lhs = W @ sc[i, j] % p
                ok &= lhs == (W[:, i] * W[:, j]) % p
        return [tuple(int(x) for x in row) for row in W[ok]]
    if n > 4:
        raise UnsupportedField("exact weight search over Q is limited to dimension <= 4")
    return _rational_weights(A)


def _rational_weights(A: Algebra) -> list[tuple]:
    import sympy

    n = A.dim
    ws = sympy.symbols(f"w0:{n}")
    eqs = []
    for i in range(n):
        for j in range(i, n):
            lin = sum(sympy.Rational(c.numerator, c.denominator) * ws[k] for k, c in enumerate(A.sc[i][j]))
            eqs.append(sympy.expand(ws[i] * ws[j] - lin))
    if n == 0:
        return []
    sols = sympy.solve(eqs, ws, dict=True)
    out = set()
    for sol in sols:
        vals = [sol.get(w, w) for w in ws]
        if any(getattr(v, "free_symbols", None) for v in vals):
            raise UnsupportedField("the weight equations have a positive-dimensional solution set")
        if not all(v.is_rational for v in vals):
            continue
        vec = tuple(A.field.coerce(f"{sympy.Rational(v).p}/{sympy.Rational(v).q}") for v in vals)
        if any(c != 0 for c in vec):
            out.add(vec)
    return sorted(out)


# -- solvability -----------------------------------------------------------------


def subspace_product(A: Algebra, U: Sequence[tuple], W: Sequence[tuple]) -> list[tuple]:
    prods = [mul(A, u, w) for u in U for w in W]
    return la.span_basis(A.field, prods, A.dim)


def derived_series(A: Algebra) -> list[int]:
    """Dimensions of ``A, A.A, (A.A).(A.A), ...`` until zero or stabilization."""
    F = A.field
    cur = [basis_vector(F, A.dim, i) for i in range(A.dim)]
    dims = [len(cur)]
    while cur:
        nxt = subspace_product(A, cur, cur)
        if len(nxt) == len(cur):
            break
        cur = nxt
        dims.append(len(cur))
    return dims


def is_solvable(A: Algebra) -> tuple[bool, list[int]]:
    dims = derived_series(A)
    return dims[-1] == 0, dims


# -- batched symbolic check --------------------------------------------------------


def _quartic_classes(n: int) -> np.ndarray:
    """0/1 matrix mapping ordered index 4-tuples to their monomial (sorted multiset)."""
    monos = sorted(set(tuple(sorted(t)) for t in itertools.product(range(n), repeat=4)))
    index = {m: c for c, m in enumerate(monos)}
    M = np.zeros((n**4, len(monos)), dtype=np.int64)
    for r, t in enumerate(itertools.product(range(n), repeat=4)):
        M[r, index[tuple(sorted(t))]] = 1
    return M


def four_algebra_mask(sc_batch: np.ndarray, p: int) -> np.ndarray:
    """Symbolic ``(x^2)^2 = 0`` test for a batch ``(N, n, n, n)`` of symmetric tensors over GF(p).

    The coefficient of a degree-4 monomial is the sum of the full quartic
    tensor over every ordering of its index multiset.
    """
    N, n = sc_batch.shape[0], sc_batch.shape[1]
    if n == 0:
        return np.ones(N, dtype=bool)
    classes = _quartic_classes(n)
    # T[N, i, j, l, m, k] = sum_{a,b} c[i,j,a] c[l,m,b] c[a,b,k]
    inner = np.einsum("nija,nabk->nijbk", sc_batch, sc_batch) % p
    T = np.einsum("nlmb,nijbk->nijlmk", sc_batch, inner) % p
    T = T.reshape(N, n**4, n)
    coeffs = np.einsum("nrk,rc->nck", T, classes) % p
    return ~np.any(coeffs.reshape(N, -1), axis=1)
