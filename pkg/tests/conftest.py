from qweyl.algebra import NCPolynomial, NormalMonomial, AlgebraId
from qweyl.coeffs import PolyQH


def poly(algebra, terms):
    """Build an NCPolynomial from ``{exps: coeff}``."""
    algebra = AlgebraId.parse(algebra)
    return NCPolynomial(algebra, {NormalMonomial(algebra, tuple(e)): c for e, c in terms.items()})


def qh(text_terms):
    """``{(dq, dh): c}`` shorthand."""
    return PolyQH(text_terms)
