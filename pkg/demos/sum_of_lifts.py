"""Recovering the answer for q = 1 mod p from the reductions of all lifts.

For each residual representation we collect every lift, reduce the
distinguished lattice of the corresponding smooth representation, and take
the sum of the results inside the envelope.  The engine's closed-form answer
should come out every time.

Run with:  python demos/sum_of_lifts.py
"""

import time
from collections import Counter

from gl2modp.characters import ResidualHom
from gl2modp.correspondence import (SearchParams, brute_force_correspond, correspond,
                                    enumerate_lifts, lift_reduction, local_params,
                                    one_plus_omega)
from gl2modp.ext import tz_lines

P = local_params(3, 7)
search = SearchParams(precision=3, mode="full")
targets = [ResidualHom.zero(P.group, P.field)] + [l.rep for l in tz_lines(P.group, P.field)]

for sigma in targets:
    rho = one_plus_omega(P, sigma=sigma)
    t0 = time.perf_counter()
    lifts = enumerate_lifts(rho, search)
    kinds = Counter(l.type_tag for l in lifts)
    lines = Counter(lift_reduction(l).class_line for l in lifts)
    lines.pop(None, None)   # bare Steinberg reductions carry no line
    oracle = brute_force_correspond(rho, search)
    engine = correspond(rho)
    print(f"sigma={sigma!r}: lifts by type {dict(sorted(kinds.items()))}, "
          f"{len(lines)} distinct lines")
    print(f"   oracle {oracle!r}  engine {engine!r}  "
          f"{'agree' if oracle == engine else 'DISAGREE'}  ({time.perf_counter() - t0:.2f}s)")
