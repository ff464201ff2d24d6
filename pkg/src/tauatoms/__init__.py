"""Factorization in the integers under the tau_n relation (x ~ y iff x = y mod n)."""

from .arith import factor
from .classifier import classify_atom, classify_tau_prime
from .engine import enumerate_proper_tau_factorizations, find_proper_tau_factorization, is_tau_atom_oracle
from .relations import build_class_table, mu_related, tau_related
from .signatures import Signature, generate_atom_table, signature_is_atom, signature_of

__version__ = "0.1.0"

__all__ = [
    "Signature",
    "build_class_table",
    "classify_atom",
    "classify_tau_prime",
    "enumerate_proper_tau_factorizations",
    "factor",
    "find_proper_tau_factorization",
    "generate_atom_table",
    "is_tau_atom_oracle",
    "mu_related",
    "signature_is_atom",
    "signature_of",
    "tau_related",
]
