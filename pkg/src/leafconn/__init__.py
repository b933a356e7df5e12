"""Exact symbolic computation for Poisson structures, the linear
connections living on their leaf ideals, and the Lie-algebra homology
behind their characteristic classes.

Everything is computed over exact rational numbers: polynomial and
exterior-algebra arithmetic, Gröbner-basis ideal membership, graded
brackets, Lie algebra (co)homology, and the obstruction class of a Lie
algebra ideal.  The :mod:`leafconn.cli` module exposes the same
machinery as a batch command.
"""
from __future__ import annotations

from .charclass import (
    CharClassResult,
    LieIdeal,
    ProjectionOperator,
    abelianize,
    characteristic_class,
)
from .ideals import Ideal
from .liealg import (
    ChainElement,
    CochainCE,
    LieAlgebraFD,
    LieModuleFD,
    boundary_delta,
    ce_coboundary,
    cohomology,
    heisenberg3,
    homology,
    sl2,
    supercommutator,
)
from .connection import (
    ConormalForm,
    LeafContext,
    NotOnLeafError,
    TransversalMultivector,
    TransversalVector,
    covariant_derivative_conormal,
    covariant_derivative_multivector,
    covariant_derivative_transversal,
    duality_check,
    flat_sections_at_point,
    is_flat_at_point,
)
from .derivations import der_I_basis, is_regular_integral
from .parse import ParseError, parse_form, parse_multivector, parse_polynomial
from .poisson import NotPoissonError, PoissonStructure, jacobi_defect
from .poly import Polynomial, VarContext
from .tensors import (
    DifferentialForm,
    GradeError,
    MultivectorField,
    contract_covector,
    differential,
    exterior_derivative,
    interior_product,
    lie_derivative,
    pairing,
    schouten_bracket,
    wedge,
)

__all__ = [
    "CharClassResult",
    "ChainElement",
    "CochainCE",
    "ConormalForm",
    "DifferentialForm",
    "GradeError",
    "Ideal",
    "LeafContext",
    "LieAlgebraFD",
    "LieIdeal",
    "LieModuleFD",
    "MultivectorField",
    "NotOnLeafError",
    "NotPoissonError",
    "ParseError",
    "PoissonStructure",
    "Polynomial",
    "ProjectionOperator",
    "TransversalMultivector",
    "TransversalVector",
    "VarContext",
    "abelianize",
    "boundary_delta",
    "ce_coboundary",
    "characteristic_class",
    "cohomology",
    "contract_covector",
    "covariant_derivative_conormal",
    "covariant_derivative_multivector",
    "covariant_derivative_transversal",
    "der_I_basis",
    "differential",
    "duality_check",
    "exterior_derivative",
    "flat_sections_at_point",
    "heisenberg3",
    "homology",
    "interior_product",
    "is_flat_at_point",
    "is_regular_integral",
    "jacobi_defect",
    "lie_derivative",
    "pairing",
    "parse_form",
    "parse_multivector",
    "parse_polynomial",
    "schouten_bracket",
    "sl2",
    "supercommutator",
    "wedge",
]
