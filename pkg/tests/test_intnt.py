import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ffprog import intnt


def test_factorize_examples():
    assert intnt.factorize(1).factors == {}
    assert intnt.factorize(360).factors == {2: 3, 3: 2, 5: 1}
    assert (5**4 - 1) // 2 == 312
    assert intnt.factorize(312).factors == {2: 3, 3: 1, 13: 1}


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        intnt.factorize(0)


@given(st.integers(min_value=1, max_value=10**12))
@settings(max_examples=200, deadline=None)
def test_factorize_matches_sympy(n):
    fac = intnt.factorize(n)
    assert fac.factors == sympy.factorint(n)
    prod = 1
    for p, e in fac.factors.items():
        prod *= p**e
    assert prod == n


def test_factorize_large_semiprime():
    p, q = 1000003, 999983
    fac = intnt.factorize(p * q)
    assert fac.factors == {q: 1, p: 1}


def test_is_prime_against_sympy():
    for n in range(2, 2000):
        assert intnt.is_prime(n) == sympy.isprime(n)
    for n in (2**61 - 1, 2**61 + 15, 10**18 + 9):
        assert intnt.is_prime(n) == sympy.isprime(n)


def test_euler_phi():
    assert intnt.euler_phi(intnt.factorize(1)) == 1
    assert intnt.euler_phi(intnt.factorize(12)) == 4
    assert intnt.euler_phi(intnt.factorize(312)) == 96
    for n in range(1, 500):
        assert intnt.euler_phi(n) == sympy.totient(n)


def test_mobius():
    assert intnt.mobius(1) == 1
    assert intnt.mobius(30) == -1
    assert intnt.mobius(12) == 0
    for n in range(1, 500):
        assert intnt.mobius(n) == sympy.mobius(n)


def test_count_squarefree_divisors():
    assert intnt.count_squarefree_divisors(1) == 1
    assert intnt.count_squarefree_divisors(12) == 4
    assert intnt.count_squarefree_divisors(312) == 8
    for n in range(1, 300):
        direct = sum(
            1 for d in intnt.factorize(n).divisors() if intnt.mobius(d) != 0
        )
        assert intnt.count_squarefree_divisors(n) == direct


def test_w_equals_mobius_square_sum():
    for n in range(1, 400):
        total = sum(intnt.mobius(d) ** 2 for d in intnt.factorize(n).divisors())
        assert intnt.count_squarefree_divisors(n) == total


def test_primorial():
    assert intnt.primorial(3) == 30
    assert intnt.primorial(5) == 2310
    for e in range(1, 60):
        assert intnt.primorial(e) == sympy.primorial(e)
    assert intnt.primorial(10) == intnt.primorial(9) * 29


def test_primorial_265_stays_below_threshold():
    assert 2 * intnt.primorial(265) < 412 * 10**716


def test_reduce_by_gcd():
    assert intnt.reduce_by_gcd(12, 8) == 3
    assert intnt.reduce_by_gcd(7, 7) == 1
    assert intnt.reduce_by_gcd(312, 2) == 156


def test_divisors_sorted_and_complete():
    ds = intnt.factorize(360).divisors()
    assert ds == sorted(ds)
    assert len(ds) == 24
    assert all(360 % d == 0 for d in ds)


def test_mobius_phi_sum_examples():
    assert intnt.mobius_phi_sum(1, 1) == 1
    assert intnt.mobius_phi_sum(4, 2) == 4
    assert intnt.mobius_phi_sum(6, 1) == 4


@given(st.integers(min_value=1, max_value=400),
       st.integers(min_value=1, max_value=40))
@settings(max_examples=300, deadline=None)
def test_mobius_phi_sum_identity(R, r):
    got = intnt.mobius_phi_sum(R, r)
    want = math.gcd(R, r) * intnt.count_squarefree_divisors(
        intnt.reduce_by_gcd(R, r)
    )
    assert got == Fraction(want)


def test_next_prime_and_primes_from():
    assert intnt.next_prime(1) == 2
    assert intnt.next_prime(2) == 3
    assert intnt.next_prime(997) == 1009
    gen = intnt.primes_from(59)
    assert [next(gen) for _ in range(4)] == [59, 61, 67, 71]
