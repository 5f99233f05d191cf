"""JSON schemas for fields, algebras, operators, data and witnesses.

Scalars are written as ints or ``"p/q"`` strings so rationals round-trip
bit-exactly. Structure constants are sparse ``[i, j, k, value]`` entries,
0-based, with ``i <= j``; the mirrored entry is implied.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .algcore import Algebra, BaricAlgebra
from .errors import BernsteinError, InputError
from .exactmath import linalg as la
from .exactmath.field import Field


def read_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def canonical_hash(obj) -> str:
    """sha256 of the key-sorted compact encoding."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _require(d, key, what):
    if not isinstance(d, dict):
        raise InputError(f"{what} must be a JSON object")
    if key not in d:
        raise InputError(f"{what} is missing {key!r}")
    return d[key]


def _scalar(F: Field, x):
    if isinstance(x, float):
        raise InputError(f"floating-point scalar {x!r}; use an int or a 'p/q' string")
    return F.coerce(x)


# -- fields ------------------------------------------------------------------


def field_from_json(d, default: Field | None = None) -> Field:
    """Read the field of an object: ``"field": "Q"``, ``"field": "GF", "p": 5``, or a nested FieldSpec.

    Objects without a field use ``default``; a conflicting ``default`` is an error.
    """
    if not isinstance(d, dict):
        raise InputError("expected a JSON object")
    if "field" not in d:
        if default is None:
            raise InputError("no field given")
        return default
    spec = d["field"]
    if spec == "GF" and "p" in d:
        spec = {"field": "GF", "p": d["p"]}
    F = Field.parse(spec)
    if default is not None and F != default:
        raise InputError(f"input is over {F} but {default} was requested")
    return F


# -- algebras ------------------------------------------------------------------


def algebra_to_json(A: Algebra) -> dict:
    F = A.field
    entries = [
        [i, j, k, F.to_json_value(c)]
        for i in range(A.dim)
        for j in range(i, A.dim)
        for k, c in enumerate(A.sc[i][j])
        if c != 0
    ]
    return {**F.to_json(), "dim": A.dim, "basis": list(A.basis), "sc": entries}


def algebra_from_json(d, field: Field | None = None) -> Algebra:
    F = field_from_json(d, field)
    n = _require(d, "dim", "algebra")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputError("'dim' must be a non-negative integer")
    basis = d.get("basis")
    if basis is not None and (not isinstance(basis, list) or len(basis) != n):
        raise InputError("'basis' must list one name per dimension")
    from .algcore import MAX_DIM

    if n > MAX_DIM:
        raise InputError(f"dimension {n} exceeds the supported maximum {MAX_DIM}")
    sc = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
    seen = set()
    for entry in d.get("sc", []):
        if not isinstance(entry, list) or len(entry) != 4:
            raise InputError(f"structure constant entry {entry!r} is not [i, j, k, value]")
        i, j, k, val = entry
        if not all(isinstance(t, int) and not isinstance(t, bool) for t in (i, j, k)):
            raise InputError(f"indices of {entry!r} must be integers")
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            raise InputError(f"index out of range in {entry!r}")
        if i > j:
            raise InputError(f"entry {entry!r} has i > j; list each product once with i <= j")
        if (i, j, k) in seen:
            raise InputError(f"duplicate entry for ({i}, {j}, {k})")
        seen.add((i, j, k))
        c = _scalar(F, val)
        sc[i][j][k] = c
        sc[j][i][k] = c
    return Algebra(F, sc, [str(b) for b in basis] if basis is not None else None)


def baric_to_json(B: BaricAlgebra) -> dict:
    out = algebra_to_json(B.alg)
    out["weight"] = [B.field.to_json_value(w) for w in B.weight]
    if B.distinguished is not None:
        out["distinguished"] = B.distinguished
    return out


def baric_from_json(d, field: Field | None = None) -> BaricAlgebra:
    A = algebra_from_json(d, field)
    w = _require(d, "weight", "baric algebra")
    if not isinstance(w, list):
        raise InputError("'weight' must be a list")
    dist = d.get("distinguished")
    if dist is not None and not (isinstance(dist, int) and 0 <= dist < A.dim):
        raise InputError("'distinguished' must be a basis index")
    return BaricAlgebra(A, [_scalar(A.field, c) for c in w], distinguished=dist)


# -- operators, data, witnesses ---------------------------------------------------


def matrix_to_json(F: Field, M) -> dict:
    return {"matrix": [[F.to_json_value(c) for c in row] for row in M]}


def matrix_from_json(d, F: Field) -> tuple:
    rows = d["matrix"] if isinstance(d, dict) and "matrix" in d else d
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("a matrix must be a list of rows")
    return la.as_matrix(F, [[_scalar(F, c) for c in r] for r in rows])


def vector_from_json(v, F: Field) -> tuple:
    if not isinstance(v, list):
        raise InputError("a vector must be a list")
    return tuple(_scalar(F, c) for c in v)


def datum_to_json(V: Algebra, Om) -> dict:
    return {"algebra": algebra_to_json(V), "operator": matrix_to_json(V.field, Om)}


def datum_from_json(d, field: Field | None = None) -> tuple[Algebra, tuple]:
    """``(V, Om)`` without validating the operator (callers decide what to check)."""
    V = algebra_from_json(_require(d, "algebra", "datum"), field)
    return V, matrix_from_json(_require(d, "operator", "datum"), V.field)


def witness_to_json(src, dst, w) -> dict:
    F = src.V.field
    return {
        "src": datum_to_json(src.V, src.omega_op),
        "dst": datum_to_json(dst.V, dst.omega_op),
        "v0": [F.to_json_value(c) for c in w.v0],
        "f": [[F.to_json_value(c) for c in row] for row in w.f],
    }


def witness_from_json(d, field: Field | None = None):
    """Returns ``((V, Om), (W, Om'), MorphismWitness)``."""
    from .morphcls import MorphismWitness

    V, Om = datum_from_json(_require(d, "src", "witness"), field)
    W, OmP = datum_from_json(_require(d, "dst", "witness"), field or V.field)
    F = V.field
    if W.field != F:
        raise InputError("source and target are over different fields")
    v0 = vector_from_json(_require(d, "v0", "witness"), F)
    f = _require(d, "f", "witness")
    if not isinstance(f, list) or (f and not all(isinstance(r, list) for r in f)):
        raise InputError("'f' must be a list of rows")
    f = tuple(tuple(_scalar(F, c) for c in r) for r in f)
    return (V, Om), (W, OmP), MorphismWitness(v0, f)


def load_any(d, field: Field | None = None):
    """Dispatch on shape: a datum, a baric algebra, or a plain algebra."""
    try:
        if isinstance(d, dict) and "algebra" in d and "operator" in d:
            return datum_from_json(d, field)
        if isinstance(d, dict) and "weight" in d:
            return baric_from_json(d, field)
        return algebra_from_json(d, field)
    except BernsteinError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise InputError(f"malformed input: {exc}") from None
