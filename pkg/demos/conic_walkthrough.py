"""
Points on the conic xz = y^2
============================

Enumerate points of bounded height, group them by reduction mod 3, and build
the lowest-degree curve through them that does not contain the conic.
"""

from arakount import parse_polynomial, weil_height
from arakount.auxiliary import minimal_auxiliary
from arakount.rational_points import enumerate_S, reduction_classes

f = parse_polynomial("x*z - y^2")

for B in (4, 10, 40, 100):
    S = enumerate_S(f, B)
    print(f"B = {B:>3}: #S = {S.count}")

S = enumerate_S(f, 4)
for P in S:
    hv = weil_height(P)
    print(P.coords, f"H = {hv.H}, h = {hv.h:.4f}, h_Ar = {hv.h_arakelov:.4f}")

# points sharing a reduction mod p crowd together p-adically
for key, members in reduction_classes(S.points, 3).items():
    print(key, [P.coords for P in members])

aux = minimal_auxiliary(f, S.points)
print("degree", aux.D, "g =", aux.g.to_text())
print("certificate ok:", aux.verify(f))
