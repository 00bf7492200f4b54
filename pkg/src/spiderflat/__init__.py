"""Explicit flat degenerations of curvilinear algebras to spider algebras.

The package derives the generic relations of ``Q[t]/(t^n)`` in divided
difference coordinates, picks weights making every border monomial strictly
heaviest, homogenizes, and certifies that the resulting one-parameter family
is flat with the spider algebra as special fibre.
"""

from .exactlinear import Matrix, NoSolution, NonUnique, Rational, rank, row_reduce, solve_linear
from .poly import Lex, Poly, WeightedDegRevLex, buchberger, fglm, normal_form, standard_monomials
from .series import (
    TruncSeries,
    divided_difference_coords,
    eval_poly_as_series,
    invert,
    mobius_generator,
)
from .spider import (
    BasisDegenerate,
    NoFeasibleWeights,
    ReesFamily,
    Relation,
    SpiderType,
    build_basis,
    build_family,
    derive_relations,
    homogenize,
    margins,
    search_weights,
    select_weights,
)
from .verify import (
    DEFAULT_LAMBDAS,
    check_curvilinear_fiber,
    check_special_fiber,
    fiber_dimension,
    flatness_certificate,
    macaulay_corank,
    verify_relation,
)
from .descriptor import FamilyDescriptor, describe, to_family
from .emit import emit_script

__version__ = "0.1.0"
