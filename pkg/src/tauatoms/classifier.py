"""Closed-form classification of tau_n-primes and tau_n-atoms.

Atoms are recognised by matching an integer's signature against the
known family lists for n in {2, 3, 5, 7, 11}; n = 4 and n = 6 reduce to
those.  Nothing here searches: every verdict names the family (rule)
that decided it, so disagreements with the brute-force oracle point at
a specific family.

The sufficient condition for shapes ``x0^k * xi^m * xj`` is exposed as
a checker plus a one-way predictor; a failed condition predicts nothing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .arith import factor, is_prime
from .errors import UnsupportedModulusError, UnitInputError
from .relations import build_class_table
from .signatures import Signature, signature_of

SUPPORTED_MODULI = (2, 3, 4, 5, 6, 7, 11)


def classify_tau_prime(x: int, n: int) -> bool:
    """True iff x is squarefree over the primes dividing n times at most one other prime."""
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    outside = 0
    for p, e in factor(x).factors:
        if n % p == 0:
            if e > 1:
                return False
        else:
            outside += e
    return outside <= 1


class Rule(str, enum.Enum):
    USUAL_PRIME = "usual-prime"
    MODULUS_ONCE = "modulus-multiplicity-one"
    MODULUS_REPEATED = "modulus-multiplicity-two-plus"
    COPRIME_COMPOSITE = "coprime-composite"
    X0K_XI = "x0^k*xi"
    XI_XJ = "xi*xj"
    X0K_XI_XJ = "x0^k*xi*xj"
    XI2_XJ = "xi^2*xj"
    X0K_XI2_XJ = "x0^k*xi^2*xj"
    XI3_X2I = "xi^3*x2i"
    NO_FAMILY = "no-atom-family"
    TAU4_AS_TAU2 = "tau4-as-tau2"
    TAU6_AS_TAU2_OR_TAU3 = "tau6-as-tau2-or-tau3"


@dataclass(frozen=True)
class AtomVerdict:
    is_atom: bool
    rule: Rule
    # for n = 4 and n = 6, the rule of the smaller modulus that decided
    detail: Rule | None = None

    def __str__(self) -> str:
        kind = "atom" if self.is_atom else "reducible"
        extra = f" <- {self.detail.value}" if self.detail else ""
        return f"{kind} [{self.rule.value}{extra}]"


def _small_prime_modulus(x: int, n: int) -> AtomVerdict:
    e = factor(x).exponent(n)
    if e == 1:
        return AtomVerdict(True, Rule.MODULUS_ONCE)
    if e >= 2:
        return AtomVerdict(False, Rule.MODULUS_REPEATED)
    # every prime factor is +-1 mod n, so negating the right ones aligns them
    return AtomVerdict(False, Rule.COPRIME_COMPOSITE)


def _families_5(s: Signature) -> Rule | None:
    return Rule.X0K_XI if s.counts[1] == 1 else None


def _families_7(s: Signature) -> Rule | None:
    c0, c1, c2 = s.counts
    if c1 + c2 == 1:
        return Rule.X0K_XI
    if c0 == 0 and c1 == 1 and c2 == 1:
        return Rule.XI_XJ
    return None


def _families_11(s: Signature) -> Rule | None:
    k = s.counts[0]
    nz = {i: c for i, c in enumerate(s.counts) if i and c}
    shape = sorted(nz.values())
    if shape == [1]:
        return Rule.X0K_XI
    if shape == [1, 1]:
        i, j = nz
        if k == 0:
            return Rule.XI_XJ
        return Rule.X0K_XI_XJ if (i + j) % 5 else None
    if shape == [1, 2]:
        i = next(a for a, c in nz.items() if c == 2)
        j = next(a for a, c in nz.items() if c == 1)
        if (2 * i - j) % 5 == 0:
            return None
        if k == 0:
            return Rule.XI2_XJ
        return Rule.X0K_XI2_XJ if (2 * i + j) % 5 else None
    if shape == [1, 3]:
        i = next(a for a, c in nz.items() if c == 3)
        j = next(a for a, c in nz.items() if c == 1)
        return Rule.XI3_X2I if k == 0 and j == 2 * i % 5 else None
    return None


_FAMILIES = {5: _families_5, 7: _families_7, 11: _families_11}


def classify_atom(x: int, n: int) -> AtomVerdict:
    """Decide tau_n-atomicity of ``x`` from its factorization, for n in SUPPORTED_MODULI."""
    if n not in SUPPORTED_MODULI:
        raise UnsupportedModulusError(f"no closed-form atom classifier for n={n}; use the oracle or signatures")
    if abs(x) < 2:
        raise UnitInputError(f"{x} is a unit or zero")
    x = abs(x)
    if n == 4:
        base = classify_atom(x, 2)
        return AtomVerdict(base.is_atom, Rule.TAU4_AS_TAU2, base.rule)
    if n == 6:
        v2 = classify_atom(x, 2)
        v3 = classify_atom(x, 3)
        decider = v2 if v2.is_atom or not v3.is_atom else v3
        return AtomVerdict(v2.is_atom or v3.is_atom, Rule.TAU6_AS_TAU2_OR_TAU3, decider.rule)
    if is_prime(x):
        return AtomVerdict(True, Rule.USUAL_PRIME)
    if n in (2, 3):
        return _small_prime_modulus(x, n)
    sig = signature_of(x, build_class_table(n))
    if sig.zero_count == 1:
        return AtomVerdict(True, Rule.MODULUS_ONCE)
    if sig.zero_count >= 2:
        return AtomVerdict(False, Rule.MODULUS_REPEATED)
    rule = _FAMILIES[n](sig)
    return AtomVerdict(True, rule) if rule else AtomVerdict(False, Rule.NO_FAMILY)


# -- sufficient conditions for x0^k * xi^m * xj ------------------------------


class Interpretation(enum.Enum):
    """How to range the bound variables z (divisors of m) and c.

    DEFAULT: z runs over every positive integer dividing m, which is
    every positive integer when m = 0; c runs over 1 <= c < m - 1.
    ALTERNATIVE: z runs over divisors with 1 <= z <= m, so none when
    m = 0; c runs over 0 <= c < m - 1.
    """

    DEFAULT = "default"
    ALTERNATIVE = "alternative"


@dataclass(frozen=True)
class GeneralizationInstance:
    n: int
    i: int
    j: int
    m: int
    k: int

    def __post_init__(self) -> None:
        q = self.q
        if not (0 < self.i < q and 0 < self.j < q):
            raise ValueError(f"i and j must be nonzero indices below q={q}")
        if self.m < 0 or self.k < 0:
            raise ValueError("m and k must be nonnegative")

    @property
    def q(self) -> int:
        return build_class_table(self.n).q

    def signature(self) -> Signature:
        counts = {0: self.k, self.i: self.m}
        counts[self.j] = counts.get(self.j, 0) + 1
        return Signature.of(self.q, counts)


@dataclass(frozen=True)
class ConditionCheck:
    holds: bool
    divisors_avoid_j: bool
    full_sum_forces_no_x0: bool
    partial_sums_nonzero: bool

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "divisors_avoid_j": self.divisors_avoid_j,
            "full_sum_forces_no_x0": self.full_sum_forces_no_x0,
            "partial_sums_nonzero": self.partial_sums_nonzero,
        }


def check_generalization_conditions(
    g: GeneralizationInstance, interpretation: Interpretation = Interpretation.DEFAULT
) -> ConditionCheck:
    q, i, j, m, k = g.q, g.i, g.j, g.m, g.k
    if m > 0:
        zs = [z for z in range(1, m + 1) if m % z == 0]
    elif interpretation is Interpretation.DEFAULT:
        zs = list(range(1, q + 1))  # z*i mod q repeats with period q
    else:
        zs = []
    first = all((z * i - j) % q for z in zs)
    second = (m * i + j) % q != 0 or k == 0
    c_lo = 1 if interpretation is Interpretation.DEFAULT else 0
    third = all((c * i + j) % q for c in range(c_lo, m - 1))
    return ConditionCheck(first and second and third, first, second, third)


@dataclass(frozen=True)
class Prediction:
    applicable: bool
    predicted_atom: bool
    instances: tuple[GeneralizationInstance, ...] = ()
    # m = 0 shapes: whether they are covered depends on the interpretation
    m_zero: bool = False


def shape_instances(s: Signature, n: int) -> tuple[GeneralizationInstance, ...]:
    """All ways to read a zero-free signature as ``x0^k * xi^m * xj``."""
    if s.zero_count:
        return ()
    q = s.q
    k = s.counts[0]
    nz = {i: c for i, c in enumerate(s.counts) if i and c}
    out = []
    if len(nz) == 1:
        (a, c), = nz.items()
        if c == 1:
            out.extend(GeneralizationInstance(n, i, a, 0, k) for i in range(1, q))
        out.append(GeneralizationInstance(n, a, a, c - 1, k))
    elif len(nz) == 2:
        for j, cj in nz.items():
            if cj == 1:
                i = next(a for a in nz if a != j)
                out.append(GeneralizationInstance(n, i, j, nz[i], k))
    return tuple(out)


def predict_atom_via_generalization(
    s: Signature, n: int, interpretation: Interpretation = Interpretation.DEFAULT
) -> Prediction:
    """One-way prediction: ``predicted_atom`` False means no prediction, not reducible."""
    instances = shape_instances(s, n)
    if not instances:
        return Prediction(False, False)
    holding = tuple(g for g in instances if check_generalization_conditions(g, interpretation).holds)
    m_zero = any(g.m == 0 for g in instances)
    return Prediction(True, bool(holding), holding or instances, m_zero)
