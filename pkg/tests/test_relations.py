import pytest
from hypothesis import given
from hypothesis import strategies as st

from tauatoms.arith import is_prime
from tauatoms.errors import BadModulusError, ZeroInputError
from tauatoms.relations import (
    ZERO,
    Modulus,
    build_class_table,
    class_index,
    find_mu_generator,
    index_add,
    index_sum,
    mu_related,
    tau_related,
    unit,
    verify_mureps_claim,
)

ODD_PRIMES_200 = [p for p in range(3, 200) if is_prime(p)]

ints = st.integers(min_value=-10**6, max_value=10**6)
moduli = st.integers(min_value=2, max_value=60)


@pytest.mark.parametrize("rel", [tau_related, mu_related])
@given(x=ints, y=ints, z=ints, n=moduli)
def test_equivalence_laws(rel, x, y, z, n):
    assert rel(x, x, n)
    assert rel(x, y, n) == rel(y, x, n)
    if rel(x, y, n) and rel(y, z, n):
        assert rel(x, z, n)


def test_relation_goldens():
    assert tau_related(-7, -14, 7)
    assert not tau_related(2, 49, 2)
    assert mu_related(-2, 3, 5)
    assert not mu_related(2, 3, 7)
    for n in range(2, 30):
        for k in range(-40, 40):
            assert mu_related(k, n - k, n)


def test_modulus():
    assert Modulus(11).class_count == 6
    assert Modulus(11).unit_index_modulus == 5
    assert Modulus(11).is_odd_prime and not Modulus(9).is_odd_prime
    # even n: the pairs {r, n-r} plus the singletons 0 and n/2
    assert Modulus(8).class_count == 5
    with pytest.raises(BadModulusError):
        Modulus(1)
    with pytest.raises(BadModulusError):
        Modulus(9).unit_index_modulus


@pytest.mark.parametrize("n", range(2, 40))
def test_class_count_matches_direct_partition(n):
    pairs = {frozenset({r, (-r) % n}) for r in range(n)}
    assert Modulus(n).class_count == len(pairs)


def test_generator_goldens():
    assert find_mu_generator(5) == 2
    assert find_mu_generator(11) == 2
    assert find_mu_generator(13) == 2
    assert find_mu_generator(7) == 2


def test_class_table_goldens():
    t7 = build_class_table(7)
    assert t7.members(unit(1)) == [2, 5]
    assert t7.members(unit(2)) == [3, 4]
    assert t7.members(unit(0)) == [1, 6]
    t5 = build_class_table(5)
    assert t5.members(unit(1)) == [2, 3]
    assert t5.members(unit(0)) == [1, 4]
    t11 = build_class_table(11)
    assert class_index(5, t11) == unit(4)
    assert class_index(37, t11) == unit(2)
    assert class_index(11, t11) == ZERO
    assert t11.to_dict()["classes"][0] == [0]


def test_class_index_errors():
    with pytest.raises(ZeroInputError):
        class_index(0, build_class_table(7))
    with pytest.raises(BadModulusError):
        build_class_table(9)
    with pytest.raises(BadModulusError):
        build_class_table(2)


@pytest.mark.parametrize("n", ODD_PRIMES_200)
def test_class_table_invariants(n):
    t = build_class_table(n)
    q = (n - 1) // 2
    assert t.q == q
    classes = t.classes()
    assert len(classes) == (n + 1) // 2
    direct = {frozenset({r, n - r}) for r in range(1, n)} | {frozenset({0})}
    assert {frozenset(c) for c in classes} == direct
    assert pow(t.base, q, n) in (1, n - 1)
    for r in range(1, n):
        assert t.residue_to_index(r) == t.residue_to_index(n - r)
        assert pow(t.base, t.residue_to_index(r).index or q, n) in (r, n - r)


@pytest.mark.parametrize("n", [p for p in ODD_PRIMES_200 if p < 50])
def test_mu_related_iff_same_class(n):
    t = build_class_table(n)
    for x in range(1, 200):
        for y in range(1, 200):
            assert mu_related(x, y, n) == (t.residue_to_index(x) == t.residue_to_index(y))


@pytest.mark.parametrize("n", [3, 5, 7, 11, 13, 17, 19, 23])
@given(x=st.integers(-10**9, 10**9).filter(bool), y=st.integers(-10**9, 10**9).filter(bool))
def test_class_index_multiplicative(n, x, y):
    t = build_class_table(n)
    assert class_index(x * y, t) == index_add(class_index(x, t), class_index(y, t), t)


def test_index_add_goldens():
    t7 = build_class_table(7)
    assert index_add(unit(1), unit(2), t7) == unit(0)
    assert index_add(unit(2), unit(2), t7) == unit(1)
    assert index_add(ZERO, unit(3), 5) == ZERO
    assert index_sum([unit(1), unit(1), unit(1)], 5) == unit(3)
    assert index_sum([], 5) == unit(0)


def test_zero_sorts_last():
    assert sorted([ZERO, unit(2), unit(0)]) == [unit(0), unit(2), ZERO]


def test_mureps_claim():
    assert verify_mureps_claim(11, 2)
    assert not verify_mureps_claim(7, 6)
    assert not verify_mureps_claim(13, 3)
    with pytest.raises(ValueError):
        verify_mureps_claim(11, 11)


def test_mureps_claim_holds_for_the_chosen_base():
    for n in ODD_PRIMES_200:
        assert verify_mureps_claim(n, find_mu_generator(n))
