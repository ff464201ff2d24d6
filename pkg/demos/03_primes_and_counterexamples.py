"""
tau_n primes
============

x is a tau_n prime when it divides a factor every time it divides the
product of a tau_n factorization.  The closed-form test decides it; the
scan over multiples finds concrete counterexamples.
"""

from tauatoms.classifier import classify_tau_prime
from tauatoms.engine import is_tau_prime_check

print("14 tau_2 prime:", classify_tau_prime(14, 2))
print("98 tau_2 prime:", classify_tau_prime(98, 2))

# 98 divides 196 = 14 * 14 but divides neither factor
v = is_tau_prime_check(98, 2, bound=500)
print(v.kind.value, v.multiple, v.factorization)

# with the closed form disabled the scan still finds nothing for 14
print(is_tau_prime_check(14, 2, bound=1400, use_classifier=False).kind.value)
