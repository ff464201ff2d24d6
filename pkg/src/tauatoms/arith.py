"""Exact integer arithmetic on signed 64-bit magnitudes.

Factorization is trial division by the primes below ``TRIAL_LIMIT``
followed by Brent's variant of Pollard rho on whatever cofactor is left.
Primality is a Miller-Rabin test with a base set that is deterministic
for every integer below 2**64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import BadModulusError, NotPrimeError, OverflowInputError, ZeroInputError

MAX_MAGNITUDE = 2**63 - 1
TRIAL_LIMIT = 10**6

# Deterministic for n < 3.3e24, which covers the whole 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = _MR_BASES


@dataclass(frozen=True)
class PrimeFactorization:
    """A nonzero integer written as ``sign * prod(p**e)``."""

    value: int
    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.sign * self.magnitude() != self.value:
            raise ValueError(f"factors do not multiply to {self.value}")

    def magnitude(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def is_unit(self) -> bool:
        return not self.factors

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def prime_list(self) -> list[int]:
        """Prime factors of ``|value|`` repeated by multiplicity, ascending."""
        return [p for p, e in self.factors for _ in range(e)]

    def omega(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return str(self.sign)
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return f"-{body}" if self.sign < 0 else body


def _check_range(x: int) -> None:
    if x == 0:
        raise ZeroInputError("zero has no factorization")
    if abs(x) > MAX_MAGNITUDE:
        raise OverflowInputError(f"|{x}| exceeds 2**63 - 1")


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_LIMIT + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, TRIAL_LIMIT + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(x: int) -> bool:
    """True iff ``|x|`` is a usual (rational) prime."""
    n = abs(x)
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    return _miller_rabin(n)


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"pollard rho failed on {n}")  # pragma: no cover


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    d = _pollard_brent(n)
    _split_large(d, out)
    _split_large(n // d, out)


@lru_cache(maxsize=1 << 16)
def factor(x: int) -> PrimeFactorization:
    """Return the prime factorization of the nonzero integer ``x``."""
    _check_range(x)
    sign = 1 if x > 0 else -1
    n = abs(x)
    found: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    else:
        # cofactor has no prime factor below TRIAL_LIMIT
        _split_large(n, found)
        n = 1
    if n > 1:
        found[n] = found.get(n, 0) + 1
    return PrimeFactorization(x, sign, tuple(sorted(found.items())))


def multiplicity(x: int, p: int) -> int:
    """Largest ``e`` with ``p**e`` dividing ``x``."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if x == 0:
        raise ZeroInputError("multiplicity is undefined at zero")
    p = abs(p)
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def mod_pow(base: int, exp: int, n: int) -> int:
    """``base**exp mod n`` as a residue in ``[0, n)``."""
    if n < 2:
        raise BadModulusError(f"modulus must be >= 2, got {n}")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, n)


@lru_cache(maxsize=1 << 16)
def divisors(x: int) -> tuple[int, ...]:
    """Positive divisors of ``|x|`` in ascending order."""
    divs = [1]
    for p, e in factor(x).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))
