"""Exact verification toolkit for lambda-double Lie algebras, Rota-Baxter
operators on M_n, weighted AYBE tensors and double brackets."""

from .core_linear import Matrix, NoSolution, format_rational, parse_rational
from .matrix_rb import MatrixOperator, RBReport, catalog, catalog_weight, is_lambda_skew, is_rb
from .double_bracket import FiniteBracket, bracket_from_rb, is_lambda_double_lie, rb_from_bracket
from .aybe import check_aybe, rb_from_tensor, tensor_from_rb
from .free_ncpoly import NCPoly, extend_bracket
from .poly_double import PolyFamily, poly_bracket
from .double_construction import DoubleElement, check_assoc, check_q_invariance, dr_product

__all__ = [
    "Matrix", "NoSolution", "format_rational", "parse_rational",
    "MatrixOperator", "RBReport", "catalog", "catalog_weight", "is_lambda_skew", "is_rb",
    "FiniteBracket", "bracket_from_rb", "is_lambda_double_lie", "rb_from_bracket",
    "check_aybe", "rb_from_tensor", "tensor_from_rb",
    "NCPoly", "extend_bracket",
    "PolyFamily", "poly_bracket",
    "DoubleElement", "check_assoc", "check_q_invariance", "dr_product",
]
