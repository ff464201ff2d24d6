"""
Congruence relations and mu classes
===================================

tau_n relates integers congruent mod n; mu_n also relates x with -x.
For an odd prime n the nonzero mu classes are indexed by powers of a base.
"""

from tauatoms.relations import build_class_table, class_index, index_add, mu_related, tau_related

# -7 and -14 agree mod 7; 2 and 3 only agree up to sign mod 5
print(tau_related(-7, -14, 7), tau_related(2, 3, 5), mu_related(2, 3, 5))

# the class table for 11: base 2, indices 0..4 plus the zero class
t = build_class_table(11)
print(f"base={t.base} q={t.q}")
for i, members in enumerate(t.classes()[1:]):
    print(f"  x{i}: residues {members}")

# indices add under multiplication: 5 is x4, 37 is x2, and 5*37 lands in x1
print(class_index(5, t), class_index(37, t), class_index(5 * 37, t))
print(index_add(class_index(5, t), class_index(37, t), t))
