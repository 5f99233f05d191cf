"""Command-line front end: ``bernalg <command> ...``.

Exit codes: 0 ok, 1 a check or comparison failed, 2 bad input,
3 search budget exceeded. Inputs are JSON files or ``catalog:NAME``.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Any

import numpy as np

from . import __version__
from . import jsonio as jio
from .algcore import (
    BaricAlgebra,
    Algebra,
    bernstein_violation,
    four_algebra_violation,
    normal_bernstein_violation,
)
from .bernop import BernsteinDatum, bernstein_operator_violation, enumerate_operators_array
from .construct import CATALOG_NAMES, catalog, decompose, semidirect
from .errors import (
    BernsteinError,
    BudgetExceeded,
    InputError,
    Not4Algebra,
    NotOperator,
    UnknownName,
)
from .exactmath.field import Field, GF
from .morphcls import automorphism_group, classify_operators, is_isomorphic, morphism_violation
from .search import DEFAULT_BUDGET

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
ELEMENT_LIMIT = 200


class Failed(Exception):
    """Raised by a command whose check or comparison did not pass."""

    def __init__(self, results):
        super().__init__("check failed")
        self.results = results


# -- input helpers ----------------------------------------------------------------


def _field(args) -> Field | None:
    return Field.parse(args.field) if args.field else None


def _load(ref: str, args, inputs: dict) -> Any:
    """JSON document behind a path or ``catalog:NAME``; records its hash in ``inputs``."""
    if ref.startswith("catalog:"):
        name = ref.split(":", 1)[1]
        F = _field(args) or GF(5)
        try:
            entry = catalog(name, F)
        except UnknownName:
            raise InputError(f"unknown catalog name {name!r}") from None
        doc = _entry_doc(entry)
    else:
        doc = jio.read_json(ref)
    inputs[ref] = jio.canonical_hash(doc)
    return doc


def _entry_doc(entry) -> dict:
    if entry.kind == "algebra":
        return jio.algebra_to_json(entry.value)
    if entry.kind == "baric":
        return jio.baric_to_json(entry.value)
    return jio.datum_to_json(entry.algebra, entry.value)


def _guard(fn, *a):
    try:
        return fn(*a)
    except BernsteinError:
        raise
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        raise InputError(f"malformed input: {exc}") from None


def _algebra(doc, args) -> Algebra:
    if isinstance(doc, dict) and "algebra" in doc:
        doc = doc["algebra"]
    return _guard(jio.algebra_from_json, doc, _field(args))


def _baric(doc, args) -> BaricAlgebra:
    return _guard(jio.baric_from_json, doc, _field(args))


def _datum(doc, args):
    return _guard(jio.datum_from_json, doc, _field(args))


def _operator(doc, F):
    if isinstance(doc, dict) and "operator" in doc:
        doc = doc["operator"]
    return _guard(jio.matrix_from_json, doc, F)


def _mat(F, M):
    return [[F.to_json_value(c) for c in row] for row in M]


def _vec(F, v):
    return [F.to_json_value(c) for c in v]


# -- commands -----------------------------------------------------------------------


def cmd_verify(args, inputs) -> dict:
    doc = _load(args.path, args, inputs)
    kind = args.kind
    if kind == "4algebra":
        A = _algebra(doc, args)
        bad = four_algebra_violation(A)
    elif kind in ("bernstein", "normal"):
        B = _baric(doc, args)
        bad = bernstein_violation(B) if kind == "bernstein" else normal_bernstein_violation(B)
    elif kind == "operator":
        if args.operator:
            V = _algebra(doc, args)
            Om = _operator(_load(args.operator, args, inputs), V.field)
        else:
            V, Om = _datum(doc, args)
        try:
            bad = bernstein_operator_violation(V, Om)
        except Not4Algebra as exc:
            return _verdict(kind, None, str(exc))
    elif kind == "witness":
        (V, Om), (W, OmP), w = _guard(jio.witness_from_json, doc, _field(args))
        try:
            src, dst = BernsteinDatum(V, Om), BernsteinDatum(W, OmP)
        except (NotOperator, Not4Algebra) as exc:
            return _verdict(kind, None, f"endpoint is not a Bernstein datum: {exc}")
        bad = morphism_violation(src, dst, w)
    else:
        raise InputError(f"unknown kind {kind!r}")
    return _verdict(kind, bad)


def _verdict(kind, bad, reason=None) -> dict:
    ok = bad is None and reason is None
    out = {"kind": kind, "ok": ok}
    if bad is not None:
        out["violation"] = bad.to_json()
    if reason is not None:
        out["reason"] = reason
    if not ok:
        raise Failed(out)
    return out


def cmd_reproduce(args, inputs) -> dict:
    from . import reproduce as rp

    F = rp.check_field(_field(args) or rp.default_field())
    name = args.example
    if name == "clasif1-n":
        result = rp.run_clasif1(F, ns=tuple(args.n) if args.n else (1, 2, 3))
    elif name == "exauto":
        result = rp.run_exauto(F, seed=args.seed)
    else:
        result = rp.RUNNERS[name](F)
    result = {"example": name, **result, "ok": all(c["ok"] for c in result["checks"])}
    if not result["ok"]:
        raise Failed(result)
    return result


def cmd_question3(args, inputs) -> dict:
    from .survey import question3

    F = _field(args) or GF(5)
    F.require_prime_field("question3")
    return question3(F, args.n, samples=args.samples, seed=args.seed, density=args.density, budget=args.budget)


def cmd_construct(args, inputs) -> dict:
    V = _algebra(_load(args.four_algebra, args, inputs), args)
    Om = _operator(_load(args.operator, args, inputs), V.field)
    B = semidirect(V, Om)
    out = jio.baric_to_json(B)
    _emit(args, out)
    return {"dim": B.dim, "distinguished": B.distinguished, "output": args.output}


def cmd_decompose(args, inputs) -> dict:
    B = _baric(_load(args.input, args, inputs), args)
    d = decompose(B)
    F = B.field
    out = {
        **jio.datum_to_json(d.V, d.omega_op),
        "e": _vec(F, d.e),
        "kernel_basis": [_vec(F, v) for v in d.kernel_basis],
        "psi": _mat(F, d.psi),
    }
    _emit(args, out)
    return {"dim": d.V.dim, "output": args.output}


def cmd_catalog(args, inputs) -> dict:
    if args.list or not args.name:
        return {"names": list(CATALOG_NAMES)}
    F = _field(args) or GF(5)
    try:
        entry = catalog(args.name, F)
    except UnknownName:
        raise InputError(f"unknown catalog name {args.name!r}") from None
    out = {"name": entry.name, "kind": entry.kind, "provenance": entry.provenance, **_entry_doc(entry)}
    _emit(args, out)
    return {"name": entry.name, "kind": entry.kind, "output": args.output}


def cmd_solve_bo(args, inputs) -> dict:
    V = _algebra(_load(args.algebra, args, inputs), args)
    ops = enumerate_operators_array(V, args.mode, args.budget)
    return {"mode": args.mode, "count": int(ops.shape[0]), "operators": ops.tolist()}


def cmd_classify_bo(args, inputs) -> dict:
    V = _algebra(_load(args.algebra, args, inputs), args)
    F = V.field
    classes = classify_operators(V, "normal" if args.normal else "bernstein", args.budget)
    rows = []
    for cl in classes:
        row = {"rep": _mat(F, cl.representative), "size": cl.size}
        if args.members:
            row["members"] = [
                {"matrix": _mat(F, M), "v0": _vec(F, cl.witness_map[M].v0), "f": _mat(F, cl.witness_map[M].f)}
                for M in cl.members
            ]
        rows.append(row)
    return {"mode": "normal" if args.normal else "bernstein", "classes": rows}


def cmd_aut(args, inputs) -> dict:
    V, Om = _datum(_load(args.datum, args, inputs), args)
    F = V.field
    G = automorphism_group(BernsteinDatum(V, Om), args.budget)
    out: dict = {"order": G.order}
    if G.vs is None:
        out["note"] = "too many elements to store"
    elif G.order <= ELEMENT_LIMIT:
        out["elements"] = [{"v": _vec(F, v), "f": _mat(F, f)} for v, f in zip(G.vs.tolist(), G.fs.tolist())]
    else:
        gens = generators(G)
        out["generators"] = [{"v": _vec(F, G.vs[i].tolist()), "f": _mat(F, G.fs[i].tolist())} for i in gens]
    return out


def generators(G) -> list[int]:
    """Indices of a generating set, picked greedily in element order."""
    n = G.vs.shape[1]
    key = {}
    for i, (v, f) in enumerate(zip(G.vs, G.fs)):
        key[tuple(v.tolist()) + tuple(f.ravel().tolist())] = i
    ident = tuple([0] * n) + tuple(np.eye(n, dtype=np.int64).ravel().tolist())
    inside = {key[ident]}
    gens: list[int] = []
    for cand in range(G.order):
        if cand in inside:
            continue
        gens.append(cand)
        frontier = list(inside)
        while frontier:
            idx = np.array(frontier)
            new = []
            for g in gens:
                v, f = G.compose(G.vs[idx], G.fs[idx], G.vs[g][None], G.fs[g][None])
                for vv, ff in zip(v.tolist(), f.reshape(len(idx), -1).tolist()):
                    j = key[tuple(vv) + tuple(ff)]
                    if j not in inside:
                        inside.add(j)
                        new.append(j)
            frontier = new
        if len(inside) == G.order:
            break
    if len(inside) != G.order:
        raise AssertionError("generated subgroup is smaller than the group")
    return gens


def cmd_is_iso(args, inputs) -> dict:
    A = _baric(_load(args.a, args, inputs), args)
    B = _baric(_load(args.b, args, inputs), args)
    res = is_isomorphic(A, B, args.budget)
    F = A.field
    out = {"isomorphic": res.is_isomorphic}
    if res.is_isomorphic:
        out["witness"] = {"v0": _vec(F, res.witness.v0), "f": _mat(F, res.witness.f)}
        out["matrix"] = _mat(F, res.matrix)
    else:
        raise Failed(out)
    return out


def _emit(args, obj):
    if args.output:
        jio.write_json(args.output, obj)
    elif not args.quiet:
        print(jio.dumps(obj))


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q or GF:p (inputs without a field use it; others must agree)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max candidates explored per search")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", dest="json_out", metavar="OUT", help="write the run report here")
    common.add_argument("--quiet", action="store_true")

    ap = argparse.ArgumentParser(prog="bernalg", description="Exact computations with Bernstein algebras.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check an identity on an input")
    s.add_argument("kind", choices=["4algebra", "bernstein", "normal", "operator", "witness"])
    s.add_argument("path", help="JSON file or catalog:NAME")
    s.add_argument("--operator", help="EndoMatrix JSON when PATH is a bare algebra")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("reproduce", parents=[common], help="rerun a worked example against frozen values")
    s.add_argument("example", choices=["dim2", "dim3-abelian", "exnetri", "clasif1-n", "exauto"])
    s.add_argument("--n", type=int, action="append", help="kernel dimension for clasif1-n (repeatable)")
    s.set_defaults(func=cmd_reproduce)

    s = sub.add_parser("question3", parents=[common], help="count operator classes over many 4-algebras")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, default=5, help="random 4-algebras for n = 3")
    s.add_argument("--density", type=float, default=0.15, help="probability that a sampled entry is nonzero")
    s.set_defaults(func=cmd_question3)

    s = sub.add_parser("construct", parents=[common], help="semidirect product of a 4-algebra and an operator")
    s.add_argument("--four-algebra", required=True)
    s.add_argument("--operator", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("decompose", parents=[common], help="recover (V, Omega) from a Bernstein algebra")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("catalog", parents=[common], help="print a named example")
    s.add_argument("--name")
    s.add_argument("--list", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("solve-bo", parents=[common], help="enumerate (normal) Bernstein operators over GF(p)")
    s.add_argument("--algebra", required=True)
    s.add_argument("--mode", choices=["bernstein", "normal"], default="bernstein")
    s.set_defaults(func=cmd_solve_bo)

    s = sub.add_parser("classify-bo", parents=[common], help="equivalence classes of operators over GF(p)")
    s.add_argument("--algebra", required=True)
    s.add_argument("--normal", action="store_true")
    s.add_argument("--members", action="store_true", help="include members with witnesses")
    s.set_defaults(func=cmd_classify_bo)

    s = sub.add_parser("aut", parents=[common], help="automorphism group of a Bernstein datum")
    s.add_argument("--datum", required=True)
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("is-iso", parents=[common], help="isomorphism test for Bernstein algebras")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_is_iso)
    return ap


def report(command: str, args, inputs: dict, results, status: int, seconds: float) -> dict:
    body = {
        "command": command,
        "inputs": dict(sorted(inputs.items())),
        "field": args.field or "default",
        "seed": args.seed,
        "status": status,
        "results": results,
        "version": __version__,
    }
    # the hash covers everything except timing, so reruns reproduce it exactly
    return {**body, "report_hash": jio.canonical_hash(body), "timing": {"seconds": round(seconds, 3)}}


def _summary_line(command, status, results) -> str:
    label = {EXIT_OK: "ok", EXIT_FAIL: "FAILED", EXIT_INPUT: "input error", EXIT_BUDGET: "budget exceeded"}[status]
    extra = ""
    if isinstance(results, dict):
        if "violation" in results:
            v = results["violation"]
            extra = f": {v['identity']} fails, coefficient {v['coefficient']} of {v['monomial']} in {v['component']}"
        elif "reason" in results:
            extra = f": {results['reason']}"
        elif "error" in results:
            extra = f": {results['error']}"
        elif "checks" in results:
            failed = [c["name"] for c in results["checks"] if not c["ok"]]
            extra = f": {len(results['checks']) - len(failed)}/{len(results['checks'])} checks passed"
            if failed:
                extra += " (failed: " + "; ".join(failed) + ")"
    return f"{command}: {label}{extra}"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    inputs: dict = {}
    start = time.perf_counter()
    try:
        results = args.func(args, inputs)
        status = EXIT_OK
    except Failed as exc:
        results, status = exc.results, EXIT_FAIL
    except BudgetExceeded as exc:
        results, status = {"error": str(exc), "explored": exc.explored, "budget": exc.budget}, EXIT_BUDGET
    except BernsteinError as exc:
        results, status = {"error": f"{type(exc).__name__}: {exc}"}, EXIT_INPUT
    results = _jsonable(results)
    rep = report(args.command, args, inputs, results, status, time.perf_counter() - start)
    if args.json_out:
        jio.write_json(args.json_out, rep)
    if not args.quiet:
        print(_summary_line(args.command, status, results), file=sys.stderr if status else sys.stdout)
        if args.command in ("solve-bo", "classify-bo", "aut", "is-iso", "reproduce", "question3", "verify") and not args.json_out:
            print(jio.dumps(results))
    return status


if __name__ == "__main__":
    sys.exit(main())
