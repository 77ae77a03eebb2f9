"""The correspondence in both regimes, and how it behaves under twisting.

Run with:  python demos/correspondence_tour.py
"""

from gl2modp.characters import ResidualHom, norm_character
from gl2modp.correspondence import correspond, local_params, one_plus_omega, twist_rep
from gl2modp.ext import tz_lines

# q = 5, p = 3: q = -1 mod p.  Only the shape of the extension matters.
P = local_params(3, 5)
for case in ("split", "ext_1_by_omega", "ext_omega_by_1"):
    d = correspond(one_plus_omega(P, case=case))
    print(f"q=5 {case:16s} -> {d!r:22s} jh={d.jh} socle={d.socle}")

# Twisting by |.|det swaps the two nonsplit answers and fixes the split one.
nrm = norm_character(P.group, P.field)
w = correspond(one_plus_omega(P, case="ext_omega_by_1"))
print(f"\n{w!r} twisted by |.|det -> {twist_rep(w, nrm)!r}")

# q = 7, p = 3: q = 1 mod p.  Now the extension class sigma is a parameter.
Q = local_params(3, 7)
zero = ResidualHom.zero(Q.group, Q.field)
print(f"\nq=7 sigma=0 -> {correspond(one_plus_omega(Q, sigma=zero))!r}")
for line in tz_lines(Q.group, Q.field):
    d = correspond(one_plus_omega(Q, sigma=line.rep))
    print(f"q=7 sigma={line.rep!r} -> {d!r}")

# q = 4 = 2^2 is also 1 mod 3, so it lands in the same regime.
R = local_params(3, 2, 2)
print(f"\nq=4 sigma=0 -> {correspond(one_plus_omega(R))!r}")
