"""Exact computations with Bernstein algebras over Q and GF(p).

The package models a Bernstein algebra as a semidirect product of a
4-algebra ``V`` and a Bernstein operator on it, and provides checks,
enumeration, classification and automorphism groups on top of that.
"""

__version__ = "0.1.0"

from .algcore import (  # noqa: E402
    Algebra,
    BaricAlgebra,
    check_4algebra,
    check_bernstein,
    check_normal_bernstein,
    find_weights,
    is_solvable,
)
from .bernop import (  # noqa: E402
    BernsteinDatum,
    enumerate_operators,
    is_bernstein_operator,
    is_normal_bernstein_operator,
)
from .construct import catalog, decompose, semidirect, trivial_bernstein  # noqa: E402
from .exactmath import GF, Q, Field, MultiPoly, poly_is_zero  # noqa: E402
from .morphcls import (  # noqa: E402
    MorphismWitness,
    are_equivalent,
    automorphism_group,
    classify_operators,
    dot_similar,
    enumerate_morphisms,
    is_isomorphic,
    is_morphism_witness,
)

__all__ = [
    "Algebra", "BaricAlgebra", "BernsteinDatum", "Field", "GF", "Q", "MultiPoly", "MorphismWitness",
    "are_equivalent", "automorphism_group", "catalog", "check_4algebra", "check_bernstein",
    "check_normal_bernstein", "classify_operators", "decompose", "dot_similar", "enumerate_morphisms",
    "enumerate_operators", "find_weights", "is_bernstein_operator", "is_isomorphic", "is_morphism_witness",
    "is_normal_bernstein_operator", "is_solvable", "poly_is_zero", "semidirect", "trivial_bernstein",
]
