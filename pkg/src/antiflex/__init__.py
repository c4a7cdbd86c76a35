"""Exact-rational toolkit for anti-flexible algebras: bimodules, Rota-Baxter
and Nijenhuis operators, the graded-bracket Maurer-Cartan characterizations,
Rota-Baxter cohomology, infinitesimal deformations, and ON-structures."""

__version__ = "0.1.0"

from .linalg import Matrix, MultiMap, Rat, parse_rational, render_rational
from .algebra import Algebra, LieAlgebra, classify
from .bimodule import Bimodule, regular_bimodule, zero_bimodule

__all__ = [
    "__version__",
    "Matrix",
    "MultiMap",
    "Rat",
    "parse_rational",
    "render_rational",
    "Algebra",
    "LieAlgebra",
    "classify",
    "Bimodule",
    "regular_bimodule",
    "zero_bimodule",
]
