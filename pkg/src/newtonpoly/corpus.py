"""Reference curves for cross-validation of the invariant machinery.

Branch curves are built from their parameterisations: monomial branches get
explicit binomial equations, multi-exponent branches are eliminated with a
resultant.  The semigroup attached to each curve is the independent input
against which the direct polar computation is checked.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .invariants import validate_semigroup
from .series import YPolynomial, parse_polynomial


def curve_from_parameterisation(x_exp: int, y_terms) -> YPolynomial:
    """Minimal equation of the branch x = t^a, y = sum c t^b, by elimination."""
    t, x, y = sympy.symbols("t x y")
    ypoly = sum(sympy.Rational(c) * t**b for b, c in y_terms)
    res = sympy.resultant(t**x_exp - x, ypoly - y, t)
    res = sympy.expand(res)
    poly = sympy.Poly(res, x, y)
    terms = {}
    for (i, j), c in poly.terms():
        terms[(int(i), int(j))] = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
    f = YPolynomial.from_terms(terms)
    lead = f.coeffs[-1]
    if len(lead.coeffs) == 1 and lead.coeffs[0][0] == 0:
        inv = lead.coeffs[0][1].inverse()
        f = YPolynomial.make([c.scale(inv) for c in f.coeffs], f.xvar, f.yvar)
    return f


def monomial_branch_curve(a: int, b: int) -> YPolynomial:
    """y^a - x^b for the semigroup <a, b> with gcd(a, b) = 1."""
    return parse_polynomial(f"y^{a} - x^{b}")


def merle_corpus():
    """Pairs (semigroup, equation) for the cross-check suite."""
    items = []
    for k in range(1, 6):
        items.append((validate_semigroup([2, 2 * k + 1]), monomial_branch_curve(2, 2 * k + 1)))
    items.append((validate_semigroup([3, 4]), monomial_branch_curve(3, 4)))
    items.append((validate_semigroup([3, 5]), monomial_branch_curve(3, 5)))
    items.append(
        (
            validate_semigroup([4, 6, 13]),
            curve_from_parameterisation(4, [(6, 1), (7, 1)]),
        )
    )
    return items


def reducible_corpus():
    """Reducible curves with their expected milnor numbers."""
    cusp_line = parse_polynomial("y^2 - x^3") * parse_polynomial("y - x")
    node = parse_polynomial("y^2 - x^2 - x^3")
    tacnode = parse_polynomial("y - x^2") * parse_polynomial("y + x^2")
    return [(cusp_line, 5), (node, 1), (tacnode, 3)]
