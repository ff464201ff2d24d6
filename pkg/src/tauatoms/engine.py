"""Brute-force ground truth for tau_n-factorizations.

A tau_n-factorization of x is ``x = lam * a_1 * ... * a_k`` with
``lam`` in {+1, -1}, every ``|a_i| >= 2`` and all ``a_i`` pairwise
congruent mod n.  Because each part may be negated (the sign is pushed
into ``lam``), a proper one exists exactly when some multiplicative
partition of ``|x|`` into at least two parts has every part in one mu
class.  That reduction is what the production search below uses; it
never consults any closed-form classification.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod

from .arith import divisors
from .errors import BadModulusError, TooManyPartitionsError, UnitInputError
from .relations import Modulus, mu_rep

DEFAULT_PARTITION_CAP = 10**7
PRIME_SCAN_CAP = 10**7


class SignConvention(enum.Enum):
    # every distinct multiset of signed parts that is a tau_n-factorization
    CANONICAL = "canonical"
    # every distinct multiset of signed parts, with no congruence condition
    ALL_SIGN_PATTERNS = "all"


@dataclass(frozen=True)
class EnumConfig:
    max_parts: int | None = None
    sign_convention: SignConvention = SignConvention.CANONICAL
    cap: int = DEFAULT_PARTITION_CAP

    def __post_init__(self) -> None:
        if self.max_parts is not None and self.max_parts < 2:
            raise ValueError("max_parts must be >= 2 when set")


@dataclass(frozen=True)
class SignedFactorization:
    """``unit * prod(parts)``; parts are kept sorted by (|a|, a), largest first."""

    unit: int
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.unit not in (1, -1):
            raise ValueError("unit must be +1 or -1")
        if any(abs(a) < 2 for a in self.parts):
            raise ValueError("parts must be nonunits")
        object.__setattr__(self, "parts", _canonical_parts(self.parts))

    @property
    def value(self) -> int:
        return self.unit * prod(self.parts)

    @property
    def is_proper(self) -> bool:
        return len(self.parts) >= 2

    def __str__(self) -> str:
        body = " * ".join(f"({a})" if a < 0 else str(a) for a in self.parts)
        return f"-1 * {body}" if self.unit < 0 else body

    def to_dict(self) -> dict:
        return {"unit": self.unit, "parts": list(self.parts)}


def _canonical_parts(parts) -> tuple[int, ...]:
    return tuple(sorted(parts, key=lambda a: (abs(a), a), reverse=True))


def _modulus(n: int | Modulus) -> int:
    return Modulus(n).n if isinstance(n, int) else n.n


def _require_nonunit(x: int) -> None:
    if abs(x) < 2:
        raise UnitInputError(f"{x} is a unit or zero")


def _iter_partitions(m: int, max_part: int, max_parts: int | None):
    # parts in nonincreasing order; larger leading parts come first
    if max_parts is not None and max_parts < 1:
        return
    if m <= max_part:
        yield (m,)
    if max_parts == 1:
        return
    sub = None if max_parts is None else max_parts - 1
    for d in reversed(divisors(m)):
        if d >= m or d > max_part:
            continue
        if d < 2:
            break
        for rest in _iter_partitions(m // d, d, sub):
            yield (d,) + rest


def multiplicative_partitions(m: int, cfg: EnumConfig | None = None) -> list[tuple[int, ...]]:
    """Every multiset of integers >= 2 with product ``m``, including ``(m,)``.

    Each partition is a nonincreasing tuple; the list is in reverse
    lexicographic order, so ``28`` gives ``(28,), (14, 2), (7, 4), (7, 2, 2)``.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    cfg = cfg or EnumConfig()
    out = []
    for part in _iter_partitions(m, m, cfg.max_parts):
        out.append(part)
        if len(out) > cfg.cap:
            raise TooManyPartitionsError(f"more than {cfg.cap} partitions of {m}")
    return out


def is_tau_factorization(f: SignedFactorization, n: int | Modulus) -> bool:
    n = _modulus(n)
    if not f.parts:
        return False
    r = f.parts[0] % n
    return all(a % n == r for a in f.parts)


def _aligned_search(m: int, n: int, avoid: int | None = None) -> tuple[int, ...] | None:
    """First partition of ``m`` into >= 2 parts sharing one mu class.

    Partitions are visited in the same reverse lexicographic order as
    :func:`multiplicative_partitions`.  With ``avoid`` set, parts
    divisible by ``avoid`` are not allowed.
    """
    memo: dict[tuple[int, int, int], tuple[int, ...] | None] = {}

    def fill(rest: int, max_part: int, cls: int) -> tuple[int, ...] | None:
        key = (rest, max_part, cls)
        if key in memo:
            return memo[key]
        found = None
        for d in reversed(divisors(rest)):
            if d < 2:
                break
            if d > max_part or mu_rep(d, n) != cls:
                continue
            if avoid is not None and d % avoid == 0:
                continue
            if d == rest:
                found = (d,)
                break
            tail = fill(rest // d, d, cls)
            if tail is not None:
                found = (d,) + tail
                break
        memo[key] = found
        return found

    for d in reversed(divisors(m)):
        if d < 2:
            break
        if d == m or (avoid is not None and d % avoid == 0):
            continue
        tail = fill(m // d, d, mu_rep(d, n))
        if tail is not None:
            return (d,) + tail
    return None


def align_signs(x: int, parts: tuple[int, ...], n: int) -> SignedFactorization:
    """Sign the positive ``parts`` so they are pairwise congruent mod n.

    The first (largest) part stays positive; every other part is negated
    only when that is needed to match it.
    """
    target = parts[0] % n
    signed = [parts[0]] + [a if a % n == target else -a for a in parts[1:]]
    unit = 1 if x * prod(signed) > 0 else -1
    return SignedFactorization(unit, tuple(signed))


def find_proper_tau_factorization(x: int, n: int | Modulus) -> SignedFactorization | None:
    """A proper tau_n-factorization of ``x``, or None when ``x`` is an atom."""
    _require_nonunit(x)
    n = _modulus(n)
    parts = _aligned_search(abs(x), n)
    return None if parts is None else align_signs(x, parts, n)


def exists_proper_tau_factorization(x: int, n: int | Modulus) -> bool:
    _require_nonunit(x)
    return _aligned_search(abs(x), _modulus(n)) is not None


def is_tau_atom_oracle(x: int, n: int | Modulus) -> bool:
    """Decide tau_n-atomicity by exhaustive search (no closed forms)."""
    return not exists_proper_tau_factorization(x, n)


def _signed_variants(parts: tuple[int, ...], n: int | None) -> set[tuple[int, ...]]:
    if n is None:
        choices = [(a, -a) for a in parts]
        return {_canonical_parts(c) for c in itertools.product(*choices)}
    out: set[tuple[int, ...]] = set()
    for target in {parts[0] % n, -parts[0] % n}:
        choices = []
        for a in parts:
            allowed = tuple(s * a for s in (1, -1) if (s * a) % n == target)
            if not allowed:
                break
            choices.append(allowed)
        else:
            out.update(_canonical_parts(c) for c in itertools.product(*choices))
    return out


def enumerate_proper_tau_factorizations(
    x: int, n: int | Modulus | None, cfg: EnumConfig | None = None
) -> list[SignedFactorization]:
    """All proper signed factorizations of ``x``, each multiset once.

    With ``SignConvention.CANONICAL`` the parts must be pairwise tau_n
    related.  ``SignConvention.ALL_SIGN_PATTERNS`` drops the congruence
    condition and lists every sign pattern of every proper partition
    (``n`` is ignored and may be None); it exists for counting.
    """
    _require_nonunit(x)
    cfg = cfg or EnumConfig()
    if cfg.sign_convention is SignConvention.ALL_SIGN_PATTERNS:
        mod = None
    elif n is None:
        raise BadModulusError("a modulus is required for CANONICAL enumeration")
    else:
        mod = _modulus(n)
    found: set[tuple[int, ...]] = set()
    for part in multiplicative_partitions(abs(x), cfg):
        if len(part) < 2:
            continue
        if mod is not None and len({mu_rep(a, mod) for a in part}) != 1:
            continue
        found.update(_signed_variants(part, mod))
        if len(found) > cfg.cap:
            raise TooManyPartitionsError(f"more than {cfg.cap} factorizations of {x}")
    sign = 1 if x > 0 else -1
    result = [SignedFactorization(sign * (1 if prod(p) > 0 else -1), p) for p in found]
    result.sort(key=lambda f: (len(f.parts), [abs(a) for a in f.parts], f.parts))
    return result


class VerdictKind(enum.Enum):
    CONFIRMED_PRIME = "confirmed_prime"
    COUNTEREXAMPLE = "counterexample"
    NO_COUNTEREXAMPLE = "no_counterexample"


@dataclass(frozen=True)
class PrimeCheckVerdict:
    kind: VerdictKind
    multiple: int | None = None
    factorization: SignedFactorization | None = None
    bound: int | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "multiple": self.multiple,
            "factorization": None if self.factorization is None else self.factorization.to_dict(),
            "bound": self.bound,
        }


def default_prime_bound(x: int) -> int:
    return min(100 * x, PRIME_SCAN_CAP)


def is_tau_prime_check(
    x: int, n: int | Modulus, bound: int | None = None, use_classifier: bool = True
) -> PrimeCheckVerdict:
    """Look for a witness that ``x`` is not a tau_n-prime.

    Multiples ``x, 2x, ...`` up to ``bound`` are scanned for a
    tau_n-factorization none of whose parts ``x`` divides.  When the
    closed-form prime test applies it short-circuits the scan unless
    ``use_classifier`` is False.
    """
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    n = _modulus(n)
    bound = default_prime_bound(x) if bound is None else bound
    if bound < x:
        raise ValueError("bound must be >= x")
    if use_classifier:
        from .classifier import classify_tau_prime

        if classify_tau_prime(x, n):
            return PrimeCheckVerdict(VerdictKind.CONFIRMED_PRIME)
    for m in range(x, bound + 1, x):
        parts = _aligned_search(m, n, avoid=x)
        if parts is not None:
            return PrimeCheckVerdict(VerdictKind.COUNTEREXAMPLE, m, align_signs(m, parts, n))
    return PrimeCheckVerdict(VerdictKind.NO_COUNTEREXAMPLE, bound=bound)


@lru_cache(maxsize=None)
def signed_proper_factorization_count(x: int) -> int:
    """Distinct multisets of signed parts over all proper partitions of ``x``."""
    cfg = EnumConfig(sign_convention=SignConvention.ALL_SIGN_PATTERNS)
    return len(enumerate_proper_tau_factorizations(x, None, cfg))
