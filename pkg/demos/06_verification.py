"""
Cross-checks and errata
=======================

Each named check compares closed forms against search over a range.
Where the reference text and computation disagree the check carries an
erratum entry instead of quietly patching either side.
"""

from tauatoms.classifier import Interpretation
from tauatoms.relations import build_class_table
from tauatoms.signatures import Signature
from tauatoms.verify import adjudicate, instantiate_signature, run_all_checks, score_interpretations, sweep_compare

for c in run_all_checks():
    print(f"{'PASS' if c.passed else 'FAIL'}  {c.id}  errata={len(c.errata)}")

# the three decision paths agree on 7 up to 5000
report = sweep_compare(7, 2, 5000, ["oracle", "theorem", "signature"])
print(report.to_dict()["atom_counts"], "mismatches:", len(report.mismatches))

# two readings of the sufficient condition, scored against signature decisions
scores = score_interpretations((5, 7, 11), 4)
for it in Interpretation:
    print(scores[it].to_dict())
print("adjudicated:", adjudicate(scores).value)

# smallest integer realising a signature
print(instantiate_signature(Signature.of(5, {1: 3, 2: 1}), build_class_table(11)))
