"""
Chebyshev-type sums against their explicit envelopes
====================================================

theta and psi sit far inside their envelopes. For phi the closed-form
envelope shrinks like log(x)^2/x while the deviation settles near a
constant, so it is eventually crossed. The integral form keeps the
constant and holds.
"""

from arakount.prime_distribution import chebyshev_sums, grh_envelopes

for x in (10, 10 ** 3, 10 ** 5, 10 ** 6):
    s = chebyshev_sums("Q", x)
    chk = grh_envelopes("Q", x, s).checks
    phi = chk["phi"]
    print(
        f"x = {x:>8}: theta = {s.theta:12.3f}  psi = {s.psi:7.4f}  phi = {s.phi:7.4f}  "
        f"phi dev = {phi['deviation']:.4f}  closed env = {phi['envelope']:.4f}  "
        f"integral env = {chk['phi_integral_form']['envelope']:.1f}"
    )
