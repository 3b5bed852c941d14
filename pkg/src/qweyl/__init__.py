"""Exact normal ordering in q-deformed Weyl-type algebras and their symmetric powers."""

from .algebra import AlgebraError, AlgebraId, NCPolynomial, NormalMonomial, Word, monomial, presentation
from .closed_forms import (
    base_expand,
    chi_k,
    closed_form_product,
    h_normal_coords,
    normal_coords,
    q_normal_coords,
    qo_normal_coords,
    qo_recursion_step,
    sl2_normal_coords,
)
from .coeffs import H, ONE, Q, ZERO, PolyQH
from .parser import ParseError, parse, render
from .representation import verify_corollary_qosc, verify_corollary_qweyl, verify_representation
from .rewrite import TensorElement, multiply, normal_order, symmetrize, tensor_multiply
from .sympower import SizeError, SymElement, from_invariants, sym_product, to_invariants

__all__ = [
    "AlgebraError",
    "AlgebraId",
    "H",
    "NCPolynomial",
    "NormalMonomial",
    "ONE",
    "ParseError",
    "PolyQH",
    "Q",
    "SizeError",
    "SymElement",
    "TensorElement",
    "Word",
    "ZERO",
    "base_expand",
    "chi_k",
    "closed_form_product",
    "from_invariants",
    "h_normal_coords",
    "monomial",
    "multiply",
    "normal_coords",
    "normal_order",
    "parse",
    "presentation",
    "q_normal_coords",
    "qo_normal_coords",
    "qo_recursion_step",
    "render",
    "sl2_normal_coords",
    "sym_product",
    "symmetrize",
    "tensor_multiply",
    "to_invariants",
    "verify_corollary_qosc",
    "verify_corollary_qweyl",
    "verify_representation",
]
