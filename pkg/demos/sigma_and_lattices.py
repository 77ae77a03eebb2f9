"""Two congruent characters, their sigma class, and the lattices they act on.

Run with:  python demos/sigma_and_lattices.py
"""

from gl2modp.characters import character_from_digits, sigma_class, standard_model, trivial_character
from gl2modp.dvr import make_dvr
from gl2modp.field import FiniteFieldCtx
from gl2modp.lattices import (diagonal_module, enumerate_stable_lattices,
                              reduction_extension_direct, sigma_from_lattice_proof_formula)

# F^x for F/Q_7 at p = 3: a uniformizer u of infinite order and a tame generator t of order 6.
G = standard_model(3, 7)
O = make_dvr(FiniteFieldCtx(3), 5)   # F_3[w]/(w^5)

chi1 = character_from_digits(G, O, {"u": [1, 1]})   # u -> 1 + w
chi2 = trivial_character(G, O)
print("chi1 =", chi1)
print("chi2 =", chi2)
print("sigma(chi1, chi2) =", sigma_class(chi1, chi2))

# O^2 with the diagonal action; look at every stable lattice up to homothety
# at tree distance <= 2 from the standard one.
mod = diagonal_module(chi1, chi2)
print(f"\ncongruence level a = {mod.level}")
for L in enumerate_stable_lattices(mod, 1):
    red = reduction_extension_direct(L, mod)
    line = f"  r={L.r} s={L.s} off={list(L.off_digits())}: {red!r}"
    if not red.split:
        ext, details = sigma_from_lattice_proof_formula(L, mod)
        line += f"   [recipe: b={details['b']}, swapped={details['swapped']}, line {ext.class_line!r}]"
    print(line)

# Every nonsplit reduction spans the same line as sigma, however far the
# lattice sits from the standard one.
