"""Generating functions for tensor-product multiplicities of su(N) and sp(4)."""

from .algebra import DivergentExpansionError, Polynomial, RationalGF, UsageError, VarTable, gf_equal
from .pipeline import AlgebraSpec, cross_validate, elementary_couplings, generating_function, tensor_coefficient
from .rules import Weight, multiplicity, parse_weight

__all__ = [
    "AlgebraSpec",
    "DivergentExpansionError",
    "Polynomial",
    "RationalGF",
    "UsageError",
    "VarTable",
    "Weight",
    "cross_validate",
    "elementary_couplings",
    "generating_function",
    "gf_equal",
    "multiplicity",
    "parse_weight",
    "tensor_coefficient",
]
