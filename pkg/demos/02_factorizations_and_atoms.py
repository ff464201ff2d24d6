"""
Factorizations, atoms and the search oracle
===========================================

A proper tau_n factorization of x splits |x| into two or more nonunit
parts, signed so they are pairwise congruent mod n.
"""

from tauatoms.arith import factor
from tauatoms.engine import (
    EnumConfig,
    SignConvention,
    enumerate_proper_tau_factorizations,
    find_proper_tau_factorization,
    is_tau_atom_oracle,
)

print(f"98 = {factor(98)}")

# no split of 98 has all parts of one parity, so it is a tau_2 atom
print("tau_2 atom:", is_tau_atom_oracle(98, 2))

# mod 7 it splits, for instance as (-14) * (-7)
for f in enumerate_proper_tau_factorizations(98, 7):
    print("  ", f)

# 6 reduces mod 5 (3 and -2 agree) but not mod 7
print(find_proper_tau_factorization(6, 5), is_tau_atom_oracle(6, 7))

# counting every signed split of 28, congruence ignored
every = EnumConfig(sign_convention=SignConvention.ALL_SIGN_PATTERNS)
print(len(enumerate_proper_tau_factorizations(28, None, every)), "signed proper factorizations of 28")
