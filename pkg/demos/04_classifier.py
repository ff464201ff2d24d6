"""
Closed-form atom classification
===============================

For n in 2, 3, 4, 5, 6, 7 and 11 atoms are recognised from the
factorization alone, and every verdict names the family that decided it.
"""

from tauatoms.classifier import SUPPORTED_MODULI, classify_atom
from tauatoms.engine import is_tau_atom_oracle

for x, n in [(50, 11), (296, 11), (6, 7), (6, 5), (98, 2), (98, 4), (12, 6)]:
    print(f"{x:>4} mod {n:<2} {classify_atom(x, n)}")

# agreement with the search oracle on a small range
agree = all(classify_atom(x, n).is_atom == is_tau_atom_oracle(x, n) for n in SUPPORTED_MODULI for x in range(2, 3000))
print("agrees with the oracle up to 3000:", agree)
