"""Exact Hochschild homology of weighted-homogeneous algebras over Q.

The pipeline resolves ``A`` by a Koszul-Tate resolvent ``R``, builds the
acyclic algebra ``B`` over ``S = R (x) R``, the universal Atiyah class and
the exponential map ``Phi`` from the Hochschild model to the cotangent
model, and checks everything per bidegree against the bar complex.
"""
from .atiyah import DecompositionMaps, build, pipeline
from .bar import bar_dims, bar_homology, quotient_basis
from .gca import (Algebra, AlgebraMap, Derivation, Element, PresentationError, Variable,
                  apply_derivation, check_presentation, commutator, mul)
from .homology import decompose, homology_dims, slice, verify_iso
from .parsing import format_algebra, parse_algebra, parse_polynomial
from .resolvent import AffineAlgebra, enveloping, koszul_tate_resolve

__all__ = [
    "AffineAlgebra", "Algebra", "AlgebraMap", "DecompositionMaps", "Derivation", "Element",
    "PresentationError", "Variable", "apply_derivation", "bar_dims", "bar_homology", "build",
    "check_presentation", "commutator", "decompose", "enveloping", "format_algebra",
    "homology_dims", "koszul_tate_resolve", "mul", "parse_algebra", "parse_polynomial",
    "pipeline", "quotient_basis", "slice", "verify_iso",
]
