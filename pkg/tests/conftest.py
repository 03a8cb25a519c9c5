import functools

import pytest

from ffprog import intnt
from ffprog.ffcore import make_field


@functools.lru_cache(maxsize=None)
def cached_field(p, s, n):
    return make_field(p, s, n)


@pytest.fixture
def field():
    """Factory fixture: field(p, s, n) shares contexts across tests."""
    return cached_field


def tower_contexts(limit, n_min=2, odd_only=False):
    """All (p, s, n) with (p^s)^n <= limit and n >= n_min."""
    out = []
    for p in intnt.SMALL_PRIMES:
        if p**n_min > limit:
            break
        if odd_only and p == 2:
            continue
        s = 1
        while (p**s) ** n_min <= limit:
            q = p**s
            n = n_min
            while q**n <= limit:
                out.append((p, s, n))
                n += 1
            s += 1
    return sorted(out, key=lambda t: ((t[0] ** t[1]) ** t[2], t))


def prime_power_decomp(q):
    fac = intnt.factorize(q)
    assert len(fac.factors) == 1, f"{q} is not a prime power"
    p = fac.primes[0]
    return p, fac.factors[p]
