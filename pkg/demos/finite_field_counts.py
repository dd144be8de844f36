"""
Weighted point counts over F_p
==============================

Singular points carry their multiplicity. The nodal cubic has one double
point, so its weighted count exceeds the plain count by one.
"""

from arakount import parse_polynomial
from arakount.finite_field_geometry import FqHypersurface, is_geometrically_integral_fq, weighted_count

curves = ["x*z - y^2", "y^2*z - x^3 - x^2*z", "x^3 + y^3 + z^3", "x^2 + y^2"]
for text in curves:
    for p in (5, 7, 11):
        X = FqHypersurface.from_polynomial(parse_polynomial(text), p)
        gi = is_geometrically_integral_fq(X)
        res = weighted_count(X, geometrically_integral=gi)
        print(f"{text:<22} p={p:<3} #X={res.count:<4} n(X)={res.weighted:<4} geom. integral={gi}")
