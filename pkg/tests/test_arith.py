from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tauatoms.arith import MAX_MAGNITUDE, divisors, factor, is_prime, mod_pow, multiplicity
from tauatoms.errors import BadModulusError, NotPrimeError, OverflowInputError, ZeroInputError


def naive_is_prime(n: int) -> bool:
    n = abs(n)
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_factor_goldens():
    assert factor(98).factors == ((2, 1), (7, 2))
    assert factor(296).factors == ((2, 3), (37, 1))
    one = factor(1)
    assert one.sign == 1 and one.factors == () and one.is_unit
    assert str(factor(360)) == "2^3 * 3^2 * 5"


def test_factor_negative_and_minus_one():
    f = factor(-12)
    assert f.sign == -1 and f.factors == ((2, 2), (3, 1))
    assert factor(-1).factors == () and factor(-1).sign == -1


def test_factor_errors():
    with pytest.raises(ZeroInputError):
        factor(0)
    with pytest.raises(OverflowInputError):
        factor(MAX_MAGNITUDE + 1)


@pytest.mark.parametrize(
    "x",
    [
        MAX_MAGNITUDE,  # 7^2 * 73 * 127 * 337 * 92737 * 649657
        (2**31 - 1) * (2**31 + 11),  # semiprime above the trial-division limit
        1_000_003 * 1_000_033,
        2**61 - 1,  # Mersenne prime
        999_983**2,
    ],
)
def test_factor_large(x):
    f = factor(x)
    assert f.magnitude() == x
    assert all(is_prime(p) for p in f.primes())
    assert list(f.primes()) == sorted(set(f.primes()))


@given(st.integers(min_value=1, max_value=10**12))
def test_factor_round_trip(x):
    f = factor(x)
    assert prod(p**e for p, e in f.factors) == x
    assert all(e >= 1 and is_prime(p) for p, e in f.factors)
    g = factor(-x)
    assert g.factors == f.factors and g.sign == -f.sign


def test_is_prime_matches_trial_division():
    for n in range(-50, 5000):
        assert is_prime(n) == naive_is_prime(n), n


def test_is_prime_goldens():
    assert is_prime(7)
    assert not is_prime(1)
    assert not is_prime(91)
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime(MAX_MAGNITUDE)


def test_multiplicity():
    assert multiplicity(16, 2) == 4
    assert multiplicity(98, 7) == 2
    assert multiplicity(45, 3) == 2
    assert multiplicity(-45, 5) == 1
    assert multiplicity(7, 2) == 0
    with pytest.raises(NotPrimeError):
        multiplicity(16, 4)
    with pytest.raises(ZeroInputError):
        multiplicity(0, 2)


def test_mod_pow():
    assert mod_pow(2, 4, 11) == 5
    assert mod_pow(2, 5, 11) == 10
    assert mod_pow(123, 0, 7) == 1
    assert mod_pow(-3, 3, 7) == (-27) % 7
    with pytest.raises(BadModulusError):
        mod_pow(2, 3, 1)


def test_divisors():
    assert divisors(28) == (1, 2, 4, 7, 14, 28)
    assert divisors(1) == (1,)
    for x in range(1, 500):
        assert divisors(x) == tuple(d for d in range(1, x + 1) if x % d == 0)
