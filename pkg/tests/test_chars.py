import pytest

from ffprog import chars, classify, fqpoly, intnt
from ffprog.chars import AddChar, add_char_fq_order, char_table, i0, indicator_Rr, omega_g
from ffprog.errors import CapExceeded
from ffprog.fqpoly import ctx_xn_factorization, phi_q, poly_degree, xn_minus_one
from test_ffcore import find_sqrt_minus_one


def test_trivial_character_has_order_one(field):
    ctx = field(3, 1, 2)
    assert add_char_fq_order(ctx, AddChar(ctx.zero)) == (1,)
    # a nontrivial character never has order 1
    assert add_char_fq_order(ctx, AddChar(ctx.one)) != (1,)


def test_character_count_per_order(field):
    # the number of additive characters of each order is Phi_q(h)
    for p, s, n in [(3, 1, 2), (2, 1, 4), (2, 2, 2), (3, 1, 3), (5, 1, 2)]:
        ctx = field(p, s, n)
        tab = char_table(ctx)
        xnf = ctx_xn_factorization(ctx)
        total = 0
        for h, exps in xnf.divisors_with_exponents():
            factors = [(g, e) for (g, _), e in zip(xnf.factors, exps) if e]
            cnt = len(tab.codes_by_order.get(h, []))
            assert cnt == phi_q(ctx.fq, factors)
            total += cnt
        assert total == ctx.order


def test_i0_orthogonality(field):
    ctx = field(3, 1, 2)
    assert abs(i0(ctx, ctx.zero) - 1) < 1e-9
    assert abs(i0(ctx, ctx.one)) < 1e-9
    for a in list(ctx.elem_of_dlog)[:5]:
        assert abs(i0(ctx, a)) < 1e-9


def test_mult_char_orthogonality(field):
    ctx = field(5, 1, 2)
    tab = char_table(ctx)
    N1 = ctx.order - 1
    for e in (0, 1, 3, 8):
        total = sum(tab.exp_mult[e * t % N1] for t in range(N1)) / N1
        expected = 1.0 if e == 0 else 0.0
        assert abs(total - expected) < 1e-9


def test_omega_examples(field):
    ctx = field(3, 1, 2)
    i = find_sqrt_minus_one(ctx)
    xn1 = xn_minus_one(ctx.fq, 2)
    assert abs(omega_g(ctx, ctx.one, (1,)) - 1) < 1e-9
    assert abs(omega_g(ctx, ctx.add(ctx.one, i), xn1) - 1) < 1e-9
    assert abs(omega_g(ctx, i, xn1)) < 1e-9


def test_indicator_examples(field):
    ctx = field(3, 1, 2)
    i = find_sqrt_minus_one(ctx)
    assert abs(indicator_Rr(ctx, i, 4, 2) - 1) < 1e-9
    assert abs(indicator_Rr(ctx, ctx.generator, 4, 2)) < 1e-9
    for a in ctx.elem_of_dlog:
        assert abs(indicator_Rr(ctx, a, 1, 1) - 1) < 1e-9


def full_equivalence_sweep(ctx, tol=1e-6):
    """Exact-vs-character agreement on every element and parameter choice."""
    xnf = ctx_xn_factorization(ctx)
    divisors = xnf.divisors_with_exponents()
    for a in ctx.elements():
        for g, _ in divisors:
            want = 1.0 if classify.is_g_free(ctx, a, g) else 0.0
            got = omega_g(ctx, a, g)
            assert abs(got - want) <= tol, (ctx.q, ctx.n, a, g)
    N1 = ctx.order - 1
    for a in ctx.elem_of_dlog:
        for r in intnt.factorize(N1).divisors():
            for R in intnt.factorize(N1 // r).divisors():
                want = 1.0 if classify.is_Rr_free(ctx, a, R, r) else 0.0
                got = indicator_Rr(ctx, a, R, r)
                assert abs(got - want) <= tol, (ctx.q, ctx.n, a, R, r)


def test_equivalence_small_fields(field):
    full_equivalence_sweep(field(3, 1, 2))
    full_equivalence_sweep(field(2, 2, 2))


def test_weil_bounds_f9(field):
    ctx = field(3, 1, 2)
    rep = chars.check_weil_bounds(ctx, 2)
    assert rep.case_a_bound == pytest.approx(6.0)
    assert rep.case_a_max <= rep.case_a_bound + 1e-6
    assert rep.ok


def test_weil_bounds_respects_cap(field):
    ctx = field(3, 1, 2)
    with pytest.raises(CapExceeded):
        chars.check_weil_bounds(ctx, 2, cap=5)


def test_case_b_dichotomy_f9(field):
    # preimage sets for f = x - 1 in F_9 have size 0 or q = 3
    ctx = field(3, 1, 2)
    tab = char_table(ctx)
    xnf = ctx_xn_factorization(ctx)
    f = next(h for h, _ in xnf.divisors_with_exponents()
             if poly_degree(h) == 1)
    basis = tab._basis_elements()
    f_img = [fqpoly.module_action(ctx, f, b) for b in basis]
    sizes = set()
    for chi_code in range(ctx.order):
        chi = ctx.decode(chi_code)
        cnt = 0
        for psi_code in range(ctx.order):
            psi = ctx.decode(psi_code)
            if all(
                tab.trace_by_code[ctx.encode(ctx.mul(chi, b))]
                == tab.trace_by_code[ctx.encode(ctx.mul(psi, fb))]
                for b, fb in zip(basis, f_img)
            ):
                cnt += 1
        sizes.add(cnt)
    assert sizes == {0, 3}
