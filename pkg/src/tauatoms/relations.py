"""Congruence (tau) and plus-or-minus congruence (mu) relations modulo n.

For an odd prime ``n`` the nonzero mu classes form a cyclic group of
order ``q = (n - 1) / 2`` (the units mod n modulo {+1, -1}).  Picking a
base ``a`` whose powers ``a, a**2, ..., a**q`` land in distinct classes
gives every nonzero class an index ``i`` in ``[0, q)``, with the class
of ``+-1`` at index 0, and products of classes become index addition
mod q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .arith import is_prime
from .errors import BadModulusError, NoGeneratorError, ZeroInputError


@dataclass(frozen=True)
class Modulus:
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise BadModulusError(f"modulus must be >= 2, got {self.n}")

    @property
    def is_odd_prime(self) -> bool:
        return self.n > 2 and is_prime(self.n)

    @property
    def class_count(self) -> int:
        """Number of mu classes: the residue pairs {r, n - r} plus the class of 0."""
        return self.n // 2 + 1

    @property
    def unit_index_modulus(self) -> int:
        if not self.is_odd_prime:
            raise BadModulusError(f"{self.n} is not an odd prime")
        return (self.n - 1) // 2


def _as_int(n: int | Modulus) -> int:
    value = n.n if isinstance(n, Modulus) else n
    if value < 2:
        raise BadModulusError(f"modulus must be >= 2, got {value}")
    return value


def tau_related(x: int, y: int, n: int | Modulus) -> bool:
    n = _as_int(n)
    return (x - y) % n == 0


def mu_related(x: int, y: int, n: int | Modulus) -> bool:
    n = _as_int(n)
    return (x - y) % n == 0 or (x + y) % n == 0


def mu_rep(x: int, n: int) -> int:
    """Smallest nonnegative member of the residue pair ``{x, -x} mod n``."""
    r = x % n
    return min(r, n - r) if r else 0


@dataclass(frozen=True)
class MuClassIndex:
    """Index of a mu class: ``index`` is None for the zero class."""

    index: int | None

    @property
    def is_zero(self) -> bool:
        return self.index is None

    def __str__(self) -> str:
        return "zero" if self.index is None else f"x{self.index}"

    def __lt__(self, other: MuClassIndex) -> bool:  # zero sorts last
        return _sort_key(self) < _sort_key(other)


def _sort_key(c: MuClassIndex) -> tuple[int, int]:
    return (1, 0) if c.index is None else (0, c.index)


ZERO = MuClassIndex(None)


def unit(i: int) -> MuClassIndex:
    return MuClassIndex(i)


def _power_classes(n: int, a: int) -> list[int]:
    q = (n - 1) // 2
    reps, x = [], 1
    for _ in range(q):
        x = x * a % n
        reps.append(mu_rep(x, n))
    return reps


def _require_odd_prime(n: int) -> None:
    if n < 3 or not is_prime(n):
        raise BadModulusError(f"class tables need an odd prime modulus, got {n}")


def verify_mureps_claim(n: int, a: int) -> bool:
    """Do ``a, ..., a**q`` hit q distinct nonzero mu classes, with ``a**q`` in the class of 1?"""
    _require_odd_prime(n)
    if not 1 < a < n:
        raise ValueError(f"base must lie strictly between 1 and {n}")
    reps = _power_classes(n, a)
    return len(set(reps)) == len(reps) and reps[-1] == 1


def find_mu_generator(n: int) -> int:
    """Smallest base in (1, n) whose powers index every nonzero mu class."""
    _require_odd_prime(n)
    q = (n - 1) // 2
    for a in range(2, n):
        if len(set(_power_classes(n, a))) == q:
            return a
    raise NoGeneratorError(f"no mu generator found for {n}")


@dataclass(frozen=True)
class ClassTable:
    n: int
    base: int
    q: int
    # position r holds the unit index of residue r; position 0 (the zero class) holds -1
    _index_of: tuple[int, ...] = field(repr=False)

    def residue_to_index(self, r: int) -> MuClassIndex:
        r %= self.n
        return ZERO if r == 0 else MuClassIndex(self._index_of[r])

    def raw_index(self, x: int) -> int:
        """Unit index of ``x`` as a plain int, -1 for the zero class."""
        return self._index_of[x % self.n]

    def members(self, c: MuClassIndex) -> list[int]:
        if c.is_zero:
            return [0]
        return [r for r in range(1, self.n) if self._index_of[r] == c.index]

    def classes(self) -> list[list[int]]:
        """Residue members of every class: the zero class first, then indices 0..q-1."""
        return [[0]] + [self.members(unit(i)) for i in range(self.q)]

    def to_dict(self) -> dict:
        return {"n": self.n, "base": self.base, "q": self.q, "classes": self.classes()}


@lru_cache(maxsize=None)
def build_class_table(n: int) -> ClassTable:
    _require_odd_prime(n)
    if n > 10**6:
        raise BadModulusError(f"class tables are limited to n <= 10**6, got {n}")
    a = find_mu_generator(n)
    q = (n - 1) // 2
    index_of = [-1] * n
    x = 1
    for i in range(1, q + 1):
        x = x * a % n
        index_of[x] = index_of[n - x] = i % q
    return ClassTable(n, a, q, tuple(index_of))


def class_index(x: int, t: ClassTable) -> MuClassIndex:
    if x == 0:
        raise ZeroInputError("zero has no mu class index")
    return t.residue_to_index(x)


def index_add(i: MuClassIndex, j: MuClassIndex, t: ClassTable | int) -> MuClassIndex:
    """Class index of a product, given the class indices of its two factors."""
    q = t.q if isinstance(t, ClassTable) else t
    if i.is_zero or j.is_zero:
        return ZERO
    return MuClassIndex((i.index + j.index) % q)


def index_sum(indices: Iterable[MuClassIndex], t: ClassTable | int) -> MuClassIndex:
    total = MuClassIndex(0)
    for c in indices:
        total = index_add(total, c, t)
    return total
