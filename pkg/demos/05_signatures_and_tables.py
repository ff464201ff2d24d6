"""
Signatures and exhaustive atom tables
=====================================

Atomicity depends only on how many prime factors fall in each mu class.
That makes it possible to tabulate every signature with a bounded
number of factors per class.
"""

import io

from tauatoms.relations import build_class_table
from tauatoms.signatures import (
    atoms_in_table,
    generate_atom_table,
    signature_is_atom,
    signature_of,
    write_table_csv,
)

t = build_class_table(11)
for x in (50, 296, 2 * 2 * 7):
    s = signature_of(x, t)
    print(x, s.label(), signature_is_atom(s).verdict.value)

# a reducible signature comes with a witness split into equal-class blocks
s = signature_of(2 * 2 * 2 * 2 * 2, t)
print(s.label(), signature_is_atom(s).witness_label())

# the 625-entry table for 11 and the atoms in it
table = generate_atom_table(11, 4)
print(len(table), "entries,", len(atoms_in_table(table)), "atoms")
print(", ".join(s.label() for s in atoms_in_table(table)))

# 13 has 7776 entries at up to five factors per class
print(len(generate_atom_table(13, 5)), "entries for n = 13")

buf = io.StringIO()
write_table_csv(generate_atom_table(7, 2).entries.items(), 7, buf)
print(buf.getvalue())
