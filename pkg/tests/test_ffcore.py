import pytest

from conftest import tower_contexts
from ffprog import intnt
from ffprog.errors import NotPrime, TooLarge, ZeroElement
from ffprog.ffcore import frobenius_q, make_field, mult_order, trace_to_prime


def find_sqrt_minus_one(ctx):
    """An element i with i^2 = -1, independent of the modulus chosen."""
    return next(
        a for a in ctx.elements()
        if a != ctx.zero and ctx.mul(a, a) == ctx.neg(ctx.one)
    )


def test_make_field_f49(field):
    ctx = field(7, 1, 2)
    assert ctx.order == 49
    assert ctx.group_order.value == 48
    assert mult_order(ctx, ctx.generator) == 48


def test_make_field_f81_generator_order(field):
    ctx = field(3, 1, 4)
    g = ctx.generator
    assert ctx.pow(g, 80) == ctx.one
    for ell in (2, 5):
        assert ctx.pow(g, 80 // ell) != ctx.one


def test_make_field_rejects_composite_char():
    with pytest.raises(NotPrime):
        make_field(4, 1, 2)


def test_make_field_cap():
    with pytest.raises(TooLarge):
        make_field(2, 1, 70)
    make_field(2, 1, 70, cap=None)  # bound-only contexts are uncapped


def test_make_field_deterministic():
    a = make_field(5, 2, 3)
    b = make_field(5, 2, 3)
    assert a.base_modulus == b.base_modulus
    assert a.ext_modulus == b.ext_modulus
    assert a.generator == b.generator
    c = make_field(5, 2, 3, seed=1)
    assert (c.ext_modulus, c.generator) != (a.ext_modulus, a.generator) or (
        c.base_modulus != a.base_modulus
    )


def test_frobenius_fixes_base(field):
    ctx = field(3, 1, 2)
    assert frobenius_q(ctx, ctx.one) == ctx.one
    for c in range(ctx.q):
        emb = ctx.embed(c)
        assert frobenius_q(ctx, emb) == emb


def test_frobenius_of_sqrt_minus_one(field):
    ctx = field(3, 1, 2)
    i = find_sqrt_minus_one(ctx)
    assert frobenius_q(ctx, i) == ctx.neg(i)


def test_frobenius_period_and_linearity(field):
    for p, s, n in [(3, 1, 2), (2, 2, 2), (5, 1, 3), (2, 1, 4)]:
        ctx = field(p, s, n)
        for a in ctx.elements():
            b = a
            for _ in range(n):
                b = frobenius_q(ctx, b)
            assert b == a, "q-power map must have period n"
        elems = list(ctx.elements())
        for a in elems[:6]:
            for b in elems[-6:]:
                assert frobenius_q(ctx, ctx.add(a, b)) == ctx.add(
                    frobenius_q(ctx, a), frobenius_q(ctx, b)
                )
        for c in range(ctx.q):
            for a in elems[:6]:
                assert frobenius_q(ctx, ctx.scalar_mul(c, a)) == ctx.scalar_mul(
                    c, frobenius_q(ctx, a)
                )


def test_mult_order_base_elements(field):
    ctx = field(7, 1, 2)
    assert mult_order(ctx, ctx.embed(3)) == 6
    assert mult_order(ctx, ctx.embed(2)) == 3
    assert mult_order(ctx, ctx.one) == 1
    with pytest.raises(ZeroElement):
        mult_order(ctx, ctx.zero)


def test_mult_order_vs_brute_force(field):
    ctx = field(3, 1, 3)
    for a in ctx.elements():
        if a == ctx.zero:
            continue
        o, x = 1, a
        while x != ctx.one:
            x = ctx.mul(x, a)
            o += 1
        assert mult_order(ctx, a) == o


def test_order_census_matches_totient(field):
    for p, s, n in [(3, 1, 2), (2, 1, 5), (5, 1, 2), (2, 2, 2)]:
        ctx = field(p, s, n)
        counts = {}
        for a in ctx.elements():
            if a == ctx.zero:
                continue
            counts[mult_order(ctx, a)] = counts.get(mult_order(ctx, a), 0) + 1
        for d in intnt.factorize(ctx.order - 1).divisors():
            assert counts.get(d, 0) == intnt.euler_phi(d)


def test_trace_examples(field):
    ctx = field(3, 1, 2)
    assert trace_to_prime(ctx, ctx.zero) == 0
    assert trace_to_prime(ctx, ctx.one) == 2
    i = find_sqrt_minus_one(ctx)
    assert trace_to_prime(ctx, i) == 0


def test_trace_is_additive_and_surjective(field):
    for p, s, n in [(2, 2, 2), (3, 1, 3), (5, 1, 2)]:
        ctx = field(p, s, n)
        elems = list(ctx.elements())
        for a in elems[:5]:
            for b in elems[-5:]:
                assert (
                    trace_to_prime(ctx, ctx.add(a, b))
                    == (trace_to_prime(ctx, a) + trace_to_prime(ctx, b)) % p
                )
        values = {trace_to_prime(ctx, a) for a in elems}
        assert values == set(range(p))


def test_dlog_table_roundtrip(field):
    ctx = field(3, 1, 2)
    for t, e in enumerate(ctx.elem_of_dlog):
        assert ctx.dlog[ctx.encode(e)] == t
    assert ctx.dlog[ctx.encode(ctx.zero)] == -1


def test_degree_one_extension(field):
    ctx = field(7, 1, 1)
    assert ctx.order == 7
    assert mult_order(ctx, ctx.embed(3)) == 6
    assert frobenius_q(ctx, ctx.embed(5)) == ctx.embed(5)


def test_tower_with_nontrivial_base(field):
    ctx = field(2, 2, 3)  # F_64 over F_4
    assert ctx.order == 64
    assert mult_order(ctx, ctx.generator) == 63
    # Frobenius is the 4-power map here, not squaring
    elems = list(ctx.elements())
    assert all(frobenius_q(ctx, a) == ctx.pow(a, 4) for a in elems[:10])


def test_all_small_towers_have_valid_generators():
    for p, s, n in tower_contexts(300):
        ctx = make_field(p, s, n)
        assert mult_order(ctx, ctx.generator) == ctx.order - 1
