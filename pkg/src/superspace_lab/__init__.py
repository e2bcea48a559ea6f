"""Grassmann and superspace calculus for the classical path integral.

The package builds superfields over a symplectic phase space, reduces
``L(Phi)`` by Berezin integration, and checks the quantization map and the
large-action insertion against exact rational arithmetic, dimensional
analysis and a numeric time lattice.
"""

from .dimensions import Dimension, DimensionAssignment, check_dimensionless, default_assignment, infer_dims
from .grassmann import (
    GeneratorSet,
    GrassmannElement,
    berezin_integrate,
    expand_even_function,
    gmul,
    grassmann_delta,
    invert_even,
    left_derivative,
)
from .lattice import BigActionInput, LatticeConfig, compute_B, qm_lattice_kernel
from .parser import SymbolTable, parse
from .reduction import (
    cpi_component_lagrangian,
    equivalence_check,
    large_action_insert,
    quantize,
    super_action,
    support_analysis,
)
from .scalar import ScalarExpr, delta, differentiate, substitute, symbol
from .superspace import PhaseSpace, build_superfield, superfield_of_function

__version__ = "0.1.0"

__all__ = [
    "BigActionInput",
    "Dimension",
    "DimensionAssignment",
    "GeneratorSet",
    "GrassmannElement",
    "LatticeConfig",
    "PhaseSpace",
    "ScalarExpr",
    "SymbolTable",
    "berezin_integrate",
    "build_superfield",
    "check_dimensionless",
    "compute_B",
    "cpi_component_lagrangian",
    "default_assignment",
    "delta",
    "differentiate",
    "equivalence_check",
    "expand_even_function",
    "gmul",
    "grassmann_delta",
    "infer_dims",
    "invert_even",
    "large_action_insert",
    "left_derivative",
    "parse",
    "qm_lattice_kernel",
    "quantize",
    "substitute",
    "super_action",
    "superfield_of_function",
    "support_analysis",
    "symbol",
]
