from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from nilpat.coefficients import (
    QQ,
    DivisionByZero,
    NonPrimeModulus,
    PrimeField,
    embed_integer,
    field_of,
    invert,
    is_prime,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def test_field_of_prime_and_rationals():
    assert field_of(7) == PrimeField(7)
    assert field_of(2).p == 2
    assert field_of("Q") is QQ
    for bad in (6, 1, 0, 9, -3):
        with pytest.raises(NonPrimeModulus):
            field_of(bad)


def test_is_prime_against_sieve():
    limit = 500
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for k in range(i * i, limit, i):
                sieve[k] = False
    assert [n for n in range(limit) if is_prime(n)] == [n for n in range(limit) if sieve[n]]


def test_invert_examples():
    assert invert(2, PrimeField(7)) == 4
    assert invert(1, PrimeField(11)) == 1
    assert invert(Fraction(1), QQ) == 1
    assert invert(Fraction(-3, 4), QQ) == Fraction(-4, 3)
    with pytest.raises(DivisionByZero):
        invert(0, PrimeField(5))
    with pytest.raises(DivisionByZero):
        invert(Fraction(0), QQ)


def test_embed_integer_examples():
    assert embed_integer(7, PrimeField(7)) == 0
    assert embed_integer(-1, PrimeField(7)) == 6
    q = embed_integer(3, QQ)
    assert q == Fraction(3, 1) and isinstance(q, Fraction)


def test_embed_fraction_into_prime_field():
    F = PrimeField(7)
    assert F.embed(Fraction(1, 2)) == 4
    assert F.embed(Fraction(-3, 2)) == F.mul(F.embed(-3), F.inv(2))
    with pytest.raises(DivisionByZero):
        F.embed(Fraction(1, 7))


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_field_axioms_exhaustive(p):
    F = PrimeField(p)
    els = list(F.elements())
    for a, b in product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        assert 0 <= F.add(a, b) < p and 0 <= F.mul(a, b) < p
        for c in els:
            assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in F.nonzero():
        assert F.mul(a, F.inv(a)) == 1
        assert F.mul(F.div(a, a), 1) == 1
    assert all(F.add(a, F.neg(a)) == 0 for a in els)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_signed_representatives(p):
    F = PrimeField(p)
    for a in F.elements():
        s = F.signed(a)
        assert F.embed(s) == a
        assert -p / 2 <= s <= p / 2


rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)


@given(rationals, rationals, rationals)
def test_rational_axioms(a, b, c):
    assert QQ.add(QQ.add(a, b), c) == QQ.add(a, QQ.add(b, c))
    assert QQ.mul(a, QQ.add(b, c)) == QQ.add(QQ.mul(a, b), QQ.mul(a, c))
    if a:
        assert QQ.mul(a, QQ.inv(a)) == 1
    r = QQ.mul(a, b)
    assert r.denominator > 0


@pytest.mark.parametrize("p", SMALL_PRIMES)
@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_embed_is_ring_homomorphism(p, a, b):
    for F in (PrimeField(p), QQ):
        assert embed_integer(a + b, F) == F.add(embed_integer(a, F), embed_integer(b, F))
        assert embed_integer(a * b, F) == F.mul(embed_integer(a, F), embed_integer(b, F))
