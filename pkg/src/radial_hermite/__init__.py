"""
Radial Hermite polynomials
"""

__version__ = "0.1.0"

from radial_hermite.inner_product import MomentSum, SymbolicMoment, gram_matrix, inner_product, moment, norm_sq
from radial_hermite.operators import OperatorTag, apply_operator, dunkl_Y, project, reflect_Rr
from radial_hermite.oscillator import WeightedFunction, hermite_function, spectrum_table
from radial_hermite.params import ModelParams, deformed_number, parse_rational
from radial_hermite.polynomials import LaurentPoly, SparsePoly, evaluate, gen_hermite, laguerre, radial_hermite
from radial_hermite.utils import DomainError, InvariantViolation, ParameterError, RadialHermiteError
from radial_hermite.verification import errata, run_checks, run_grid

__all__ = [
    "DomainError",
    "InvariantViolation",
    "LaurentPoly",
    "ModelParams",
    "MomentSum",
    "OperatorTag",
    "ParameterError",
    "RadialHermiteError",
    "SparsePoly",
    "SymbolicMoment",
    "WeightedFunction",
    "apply_operator",
    "deformed_number",
    "dunkl_Y",
    "errata",
    "evaluate",
    "gen_hermite",
    "gram_matrix",
    "hermite_function",
    "inner_product",
    "laguerre",
    "moment",
    "norm_sq",
    "parse_rational",
    "project",
    "radial_hermite",
    "reflect_Rr",
    "run_checks",
    "run_grid",
    "spectrum_table",
    "__version__",
]
