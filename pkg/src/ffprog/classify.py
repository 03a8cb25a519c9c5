"""Direct (character-free) tests of element properties.

Multiplicative side: membership in the index-r subgroup and freeness by
power tests against the factored group order.  Additive side: g-freeness
by the annihilator criterion (a is in the image of the action of h
exactly when (x^n - 1)/h kills a), and the normality defect k both from
the F_q-order and from the conjugate-polynomial gcd, cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _poly, fqpoly, intnt
from .errors import NotADivisor, NotADivisorPoly, NotNormal, ZeroElement
from .ffcore import FieldCtx, mult_order
from .fqpoly import PolyFq, ctx_xn_factorization, module_action, poly_degree


@dataclass(frozen=True)
class ElementProfile:
    """Order data of a single element: both defect parameters at once."""

    order: int | None
    r_value: int | None
    fq_order: PolyFq
    k_value: int


def is_r_primitive(ctx: FieldCtx, a, r: int) -> bool:
    """True when the multiplicative order of a is (q^n - 1)/r."""
    if a == ctx.zero:
        raise ZeroElement("zero is never r-primitive")
    N1 = ctx.order - 1
    if r < 1 or N1 % r != 0:
        raise NotADivisor(f"r = {r} does not divide q^n - 1 = {N1}")
    return mult_order(ctx, a) == N1 // r


def is_Rr_free(ctx: FieldCtx, a, R: int, r: int) -> bool:
    """Membership in the order-(q^n-1)/r subgroup plus R-freeness inside it."""
    if a == ctx.zero:
        raise ZeroElement("freeness is defined on the multiplicative group")
    N1 = ctx.order - 1
    if r < 1 or N1 % r != 0:
        raise NotADivisor(f"r = {r} does not divide q^n - 1 = {N1}")
    M = N1 // r
    if R < 1 or M % R != 0:
        raise NotADivisor(f"R = {R} does not divide (q^n - 1)/r = {M}")
    if ctx.pow(a, M) != ctx.one:
        return False
    for ell in intnt.factorize(R).primes:
        if ctx.pow(a, M // ell) == ctx.one:
            return False
    return True


def is_g_free(ctx: FieldCtx, a, g: PolyFq) -> bool:
    """No nontrivial divisor h of g admits a with a = h acting on some b.

    Uses the annihilator criterion per irreducible divisor h of g:
    a lies in the image of the h-action iff (x^n - 1)/h kills a.
    """
    xnf = ctx_xn_factorization(ctx)
    g_exps = xnf.exponents_of(g)  # raises NotADivisorPoly when g is not a divisor
    full = tuple(e for _, e in xnf.factors)
    orbit = fqpoly.frobenius_orbit(ctx, a)
    for idx, k in enumerate(g_exps):
        if k == 0:
            continue
        quot_exps = tuple(
            e - 1 if i == idx else e for i, e in enumerate(full)
        )
        quot = xnf.poly_from_exponents(quot_exps)
        if fqpoly.module_action_orbit(ctx, quot, orbit) == ctx.zero:
            return False
    return True


def k_normality(ctx: FieldCtx, a, cross_check: bool = True) -> int:
    """Normality defect: n minus the degree of the F_q-order of a.

    With cross_check (the default) the conjugate-polynomial gcd
    gcd(sum a^(q^i) x^(n-1-i), x^n - 1) over F_{q^n} is computed as well
    and the two answers are required to agree.
    """
    k = ctx.n - poly_degree(fqpoly.fq_order(ctx, a))
    if cross_check:
        k_gcd = _k_via_gcd(ctx, a)
        if k_gcd != k:
            raise RuntimeError(
                f"normality defect mismatch: order route {k}, gcd route {k_gcd}"
            )
    return k


def _k_via_gcd(ctx: FieldCtx, a) -> int:
    ext = ctx.ext
    orbit = fqpoly.frobenius_orbit(ctx, a)
    # conjugates as coefficients, a^(q^i) at degree n-1-i
    conj = _poly.trim(list(reversed(orbit)), ext.zero)
    xn1 = (ext.neg(ext.one),) + (ext.zero,) * (ctx.n - 1) + (ext.one,)
    g = _poly.gcd(ext, conj, xn1)
    return _poly.degree(g) if g else ctx.n


def construct_k_normal(ctx: FieldCtx, f: PolyFq, beta):
    """Image of a normal element under the action of a degree-k divisor f.

    The result has normality defect exactly deg f, which is asserted.
    """
    xnf = ctx_xn_factorization(ctx)
    xnf.exponents_of(f)  # divisor check
    if not fqpoly.poly_is_monic(f):
        raise NotADivisorPoly("f must be monic")
    if k_normality(ctx, beta, cross_check=False) != 0:
        raise NotNormal("seed element is not normal")
    alpha = module_action(ctx, f, beta)
    k = poly_degree(f)
    got = k_normality(ctx, alpha, cross_check=False)
    if got != k:
        raise RuntimeError(f"constructed element is {got}-normal, wanted {k}")
    return alpha


def find_normal_element(ctx: FieldCtx):
    """First normal element in generator-power order (deterministic)."""
    xn1 = fqpoly.xn_minus_one(ctx.fq, ctx.n)
    for a in ctx.elements_by_dlog():
        if a == ctx.zero:
            continue
        if is_g_free(ctx, a, xn1):
            return a
    raise RuntimeError("no normal element found; context is corrupt")


def profile(ctx: FieldCtx, a) -> ElementProfile:
    """Order, order defect r, F_q-order and normality defect of one element."""
    h = fqpoly.fq_order(ctx, a)
    k = ctx.n - poly_degree(h)
    if a == ctx.zero:
        return ElementProfile(None, None, h, k)
    o = mult_order(ctx, a)
    return ElementProfile(o, (ctx.order - 1) // o, h, k)
