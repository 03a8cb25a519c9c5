import pytest

from ffprog import classify, fqpoly, intnt
from ffprog.errors import NotADivisor, NotADivisorPoly, NotNormal, ZeroElement
from ffprog.ffcore import mult_order
from ffprog.fqpoly import ctx_xn_factorization, module_action, xn_minus_one
from test_ffcore import find_sqrt_minus_one


def test_is_r_primitive_prime_field(field):
    ctx = field(7, 1, 1)
    assert classify.is_r_primitive(ctx, ctx.embed(3), 1)
    assert classify.is_r_primitive(ctx, ctx.embed(2), 2)
    assert classify.is_r_primitive(ctx, ctx.one, 6)
    assert not classify.is_r_primitive(ctx, ctx.embed(2), 1)
    with pytest.raises(ZeroElement):
        classify.is_r_primitive(ctx, ctx.zero, 1)
    with pytest.raises(NotADivisor):
        classify.is_r_primitive(ctx, ctx.one, 4)


def test_is_Rr_free_examples(field):
    ctx = field(3, 1, 2)
    i = find_sqrt_minus_one(ctx)
    assert classify.is_Rr_free(ctx, i, 4, 2)
    assert not classify.is_Rr_free(ctx, ctx.generator, 4, 2)
    # R = 1 reduces to subgroup membership
    for a in ctx.elem_of_dlog:
        member = ctx.pow(a, 4) == ctx.one
        assert classify.is_Rr_free(ctx, a, 1, 2) == member
    # a primitive element is never in a proper subgroup
    assert not classify.is_Rr_free(ctx, ctx.generator, 1, 2)
    with pytest.raises(NotADivisor):
        classify.is_Rr_free(ctx, i, 3, 2)


def test_r_primitive_iff_full_freeness(field):
    # r-primitive <=> ((q^n-1)/r, r)-free, exhaustively on small fields
    for p, s, n in [(3, 1, 2), (2, 1, 4), (5, 1, 2), (2, 2, 2), (3, 1, 3)]:
        ctx = field(p, s, n)
        N1 = ctx.order - 1
        for r in intnt.factorize(N1).divisors():
            for a in ctx.elem_of_dlog:
                assert classify.is_r_primitive(ctx, a, r) == (
                    classify.is_Rr_free(ctx, a, N1 // r, r)
                )


def test_r_primitive_census(field):
    for p, s, n in [(3, 1, 2), (2, 1, 5), (5, 1, 2)]:
        ctx = field(p, s, n)
        N1 = ctx.order - 1
        for r in intnt.factorize(N1).divisors():
            count = sum(
                1 for a in ctx.elem_of_dlog if classify.is_r_primitive(ctx, a, r)
            )
            assert count == intnt.euler_phi(N1 // r)


def test_is_g_free_examples(field):
    ctx = field(3, 1, 2)
    i = find_sqrt_minus_one(ctx)
    xn1 = xn_minus_one(ctx.fq, 2)
    for a in ctx.elements():
        assert classify.is_g_free(ctx, a, (1,))
    assert classify.is_g_free(ctx, ctx.add(ctx.one, i), xn1)
    assert not classify.is_g_free(ctx, i, xn1)
    with pytest.raises(NotADivisorPoly):
        classify.is_g_free(ctx, i, (1, 1, 1))


def test_normal_iff_xn_free(field):
    for p, s, n in [(3, 1, 2), (2, 1, 4), (2, 2, 2)]:
        ctx = field(p, s, n)
        xn1 = xn_minus_one(ctx.fq, n)
        for a in ctx.elements():
            assert (classify.k_normality(ctx, a) == 0) == classify.is_g_free(
                ctx, a, xn1
            )


def test_k_normality_examples(field):
    ctx = field(3, 1, 2)
    i = find_sqrt_minus_one(ctx)
    assert classify.k_normality(ctx, ctx.add(ctx.one, i)) == 0
    assert classify.k_normality(ctx, ctx.embed(2)) == 1
    assert classify.k_normality(ctx, ctx.zero) == 2


def test_k_normality_gcd_route_agrees(field):
    for p, s, n in [(3, 1, 2), (2, 1, 4), (2, 2, 2), (5, 1, 2), (3, 1, 3)]:
        ctx = field(p, s, n)
        for a in ctx.elements():
            classify.k_normality(ctx, a, cross_check=True)


def test_k_census(field):
    for p, s, n in [(3, 1, 2), (2, 1, 4), (3, 1, 4)]:
        ctx = field(p, s, n)
        xnf = ctx_xn_factorization(ctx)
        counts = {}
        for a in ctx.elements():
            k = classify.k_normality(ctx, a, cross_check=False)
            counts[k] = counts.get(k, 0) + 1
        for k in range(n + 1):
            expected = 0
            for h, exps in xnf.divisors_with_exponents():
                if fqpoly.poly_degree(h) == n - k:
                    factors = [
                        (g, e) for (g, _), e in zip(xnf.factors, exps) if e
                    ]
                    expected += fqpoly.phi_q(ctx.fq, factors)
            assert counts.get(k, 0) == expected
        assert sum(counts.values()) == ctx.order


def test_construct_k_normal(field):
    ctx = field(3, 1, 2)
    i = find_sqrt_minus_one(ctx)
    beta = ctx.add(ctx.one, i)
    assert classify.construct_k_normal(ctx, (1,), beta) == beta
    assert classify.construct_k_normal(ctx, (1, 1), beta) == ctx.embed(2)
    xn1 = xn_minus_one(ctx.fq, 2)
    assert classify.construct_k_normal(ctx, xn1, beta) == ctx.zero
    with pytest.raises(NotNormal):
        classify.construct_k_normal(ctx, (1, 1), ctx.one)
    with pytest.raises(NotADivisorPoly):
        classify.construct_k_normal(ctx, (1, 1, 1), beta)


def test_construct_k_normal_across_divisors(field):
    for p, s, n in [(2, 1, 4), (3, 1, 4), (2, 2, 2)]:
        ctx = field(p, s, n)
        beta = classify.find_normal_element(ctx)
        xnf = ctx_xn_factorization(ctx)
        for f, _ in xnf.divisors_with_exponents():
            alpha = classify.construct_k_normal(ctx, f, beta)
            assert classify.k_normality(ctx, alpha) == fqpoly.poly_degree(f)


def test_find_normal_element(field):
    for p, s, n in [(3, 1, 2), (2, 1, 2), (2, 2, 3), (5, 1, 4)]:
        ctx = field(p, s, n)
        b = classify.find_normal_element(ctx)
        assert classify.is_g_free(ctx, b, xn_minus_one(ctx.fq, n))
        assert b == classify.find_normal_element(ctx)  # deterministic


def test_profile(field):
    ctx = field(3, 1, 2)
    prof = classify.profile(ctx, ctx.generator)
    assert prof.order == 8
    assert prof.r_value == 1
    assert prof.k_value in (0, 1)
    zero = classify.profile(ctx, ctx.zero)
    assert zero.order is None and zero.k_value == 2
    one = classify.profile(ctx, ctx.one)
    assert one.order == 1 and one.r_value == 8 and one.k_value == 1
