"""Polynomials over F_q: the x^n - 1 lattice and the F_q[x]-module action.

Only x^n - 1 is ever factored, via q-cyclotomic cosets: write
n = n' * p^e with gcd(n', p) = 1, factor x^(n') - 1 as products of
(x - zeta^j) over the cosets in a splitting extension, verify the
coefficients land in F_q, and attach multiplicity p^e.  The polynomial
totient, Mobius function and square-free divisor count W all read off
the factored form.
"""

from __future__ import annotations

import math
import random
from functools import cached_property

from . import _poly, intnt
from .errors import BadDegree, NotADivisorPoly, ZeroPolynomial
from .ffcore import ExtArith, FieldCtx, FqArith, _random_irreducible

PolyFq = tuple  # coefficients ascending, no trailing zeros, () is zero


def poly_degree(f) -> int:
    return len(f) - 1


def poly_is_monic(f) -> bool:
    return bool(f) and f[-1] == 1


def one_poly() -> PolyFq:
    return (1,)


def x_minus_one(fq: FqArith) -> PolyFq:
    return (fq.neg(1), 1)


def xn_minus_one(fq: FqArith, n: int) -> PolyFq:
    return (fq.neg(1),) + (0,) * (n - 1) + (1,)


def poly_str(f, var: str = "x") -> str:
    """Human-readable form, highest degree first, coefficients as codes."""
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            xp = var if i == 1 else f"{var}^{i}"
            terms.append(xp if c == 1 else f"{c}*{xp}")
    return " + ".join(terms)


def module_action(ctx: FieldCtx, f: PolyFq, a):
    """Apply f = sum f_i x^i to a as sum f_i * a^(q^i)."""
    ext = ctx.ext
    acc = ext.zero
    power = a
    for i, c in enumerate(f):
        if i > 0:
            power = ctx.frobenius(power)
        if c:
            acc = ext.add(acc, ext.scalar_mul(c, power))
    return acc


def frobenius_orbit(ctx: FieldCtx, a):
    """(a, a^q, ..., a^(q^(n-1))) for repeated-action evaluation."""
    orbit = [a]
    for _ in range(ctx.n - 1):
        orbit.append(ctx.frobenius(orbit[-1]))
    return orbit


def module_action_orbit(ctx: FieldCtx, f: PolyFq, orbit):
    """module_action using a precomputed Frobenius orbit of the argument."""
    ext = ctx.ext
    acc = ext.zero
    for i, c in enumerate(f):
        if c:
            acc = ext.add(acc, ext.scalar_mul(c, orbit[i % ctx.n]))
    return acc


class XnFactorization:
    """Factorization of x^n - 1 over F_q into irreducibles with multiplicity."""

    def __init__(self, fq: FqArith, n: int, factors):
        self.fq = fq
        self.n = n
        self.factors = tuple(factors)

    @property
    def distinct_count(self) -> int:
        return len(self.factors)

    @property
    def w(self) -> int:
        """Number of square-free monic divisors of x^n - 1."""
        return 1 << len(self.factors)

    def poly(self) -> PolyFq:
        out = (1,)
        for f, e in self.factors:
            for _ in range(e):
                out = _poly.mul(self.fq, out, f)
        return out

    @cached_property
    def _divisor_list(self):
        fq = self.fq
        items = [((1,), (0,) * len(self.factors))]
        for idx, (f, e) in enumerate(self.factors):
            new = []
            for base, exps in items:
                cur = base
                for k in range(e + 1):
                    marked = exps[:idx] + (k,) + exps[idx + 1 :]
                    new.append((cur, marked))
                    if k < e:
                        cur = _poly.mul(fq, cur, f)
            items = new
        items.sort(key=lambda t: (poly_degree(t[0]), t[0]))
        return items

    def divisors_with_exponents(self):
        """All monic divisors with exponent vectors, nondecreasing degree."""
        return list(self._divisor_list)

    def exponents_of(self, f: PolyFq) -> tuple[int, ...]:
        """Exponent vector of a monic divisor f; NotADivisorPoly otherwise."""
        if not poly_is_monic(f):
            raise NotADivisorPoly(f"{f} is not monic")
        fq = self.fq
        exps = []
        rem = f
        for g, e in self.factors:
            k = 0
            while k < e:
                quot, r = _poly.divmod_(fq, rem, g)
                if r:
                    break
                rem = quot
                k += 1
            exps.append(k)
        if rem != (1,):
            raise NotADivisorPoly(f"{poly_str(f)} does not divide x^{self.n} - 1")
        return tuple(exps)

    def sub_factors(self, f: PolyFq):
        """Factored form [(irreducible, multiplicity)] of a divisor f."""
        exps = self.exponents_of(f)
        return [(g, k) for (g, _), k in zip(self.factors, exps) if k > 0]

    def quotient_exponents(self, exps) -> tuple[int, ...]:
        return tuple(e - k for (_, e), k in zip(self.factors, exps))

    def poly_from_exponents(self, exps) -> PolyFq:
        fq = self.fq
        out = (1,)
        for (g, _), k in zip(self.factors, exps):
            for _ in range(k):
                out = _poly.mul(fq, out, g)
        return out


def monic_divisors(xnf: XnFactorization):
    """Monic divisors of x^n - 1, nondecreasing degree, deterministic order."""
    for f, _ in xnf.divisors_with_exponents():
        yield f


def _element_of_order(E, group_size: int, target: int, rng: random.Random):
    """Element of exact multiplicative order `target` in a field of E."""
    fac = intnt.factorize(target)
    cof = group_size // target
    while True:
        code = rng.randrange(1, E.order)
        z = E.pow(E.decode(code), cof)
        if z == E.one:
            continue
        if all(E.pow(z, target // ell) != E.one for ell in fac.primes):
            return z


def factor_xn_minus_1(fq: FqArith, n: int) -> XnFactorization:
    """Factor x^n - 1 over F_q through q-cyclotomic cosets."""
    if n < 1:
        raise ValueError("n >= 1 required")
    p, q = fq.p, fq.q
    n_prime, mult = n, 1
    while n_prime % p == 0:
        n_prime //= p
        mult *= p

    if n_prime == 1:
        return XnFactorization(fq, n, [(x_minus_one(fq), mult)])

    # cosets of multiplication by q on Z/n'
    seen = [False] * n_prime
    cosets = []
    for j in range(n_prime):
        if seen[j]:
            continue
        orbit = []
        k = j
        while not seen[k]:
            seen[k] = True
            orbit.append(k)
            k = k * q % n_prime
        cosets.append(orbit)

    # degree of the splitting extension
    d = 1
    acc = q % n_prime
    while acc != 1:
        acc = acc * q % n_prime
        d += 1

    rng = random.Random(f"ffprog-xnf:{p}:{fq.s}:{n}")
    if d == 1:
        zeta_pows = _root_of_unity_powers_base(fq, n_prime, rng)
        factors = []
        for orbit in cosets:
            f = (1,)
            for j in orbit:
                f = _poly.mul(fq, f, (fq.neg(zeta_pows[j]), 1))
            factors.append(f)
    else:
        ext_mod = _random_irreducible(fq, d, q, rng, lambda r: r.randrange(q))
        E = ExtArith(fq, ext_mod, d)
        zeta = _element_of_order(E, E.order - 1, n_prime, rng)
        zeta_pows = [E.one]
        for _ in range(n_prime - 1):
            zeta_pows.append(E.mul(zeta_pows[-1], zeta))
        factors = []
        for orbit in cosets:
            f = (E.one,)
            for j in orbit:
                f = _poly.mul(E, f, (E.neg(zeta_pows[j]), E.one))
            coeffs = []
            for c in f:
                if any(x != 0 for x in c[1:]):
                    raise RuntimeError("coset factor has coefficients outside F_q")
                coeffs.append(c[0])
            factors.append(tuple(coeffs))

    factors.sort(key=lambda f: (poly_degree(f), f))
    xnf = XnFactorization(fq, n, [(f, mult) for f in factors])
    if xnf.poly() != xn_minus_one(fq, n):
        raise RuntimeError("x^n - 1 factorization failed to recompose")
    return xnf


def _root_of_unity_powers_base(fq: FqArith, n_prime: int, rng: random.Random):
    fac = intnt.factorize(n_prime)
    cof = (fq.q - 1) // n_prime
    while True:
        z = fq.pow(rng.randrange(1, fq.q), cof)
        if z == 1 and n_prime > 1:
            continue
        if all(fq.pow(z, n_prime // ell) != 1 for ell in fac.primes):
            pows = [1]
            for _ in range(n_prime - 1):
                pows.append(fq.mul(pows[-1], z))
            return pows


def ctx_xn_factorization(ctx: FieldCtx) -> XnFactorization:
    """x^n - 1 factorization for a tower context, cached on the context."""
    key = "xnf"
    if key not in ctx.cache:
        ctx.cache[key] = factor_xn_minus_1(ctx.fq, ctx.n)
    return ctx.cache[key]


def fq_order(ctx: FieldCtx, a) -> PolyFq:
    """Minimal monic divisor h of x^n - 1 with h acting to zero on a.

    fq_order(0) = 1 by the minimality convention, so the counting identity
    sum over h of Phi_q(h) = q^n covers the whole field.
    """
    xnf = ctx_xn_factorization(ctx)
    orbit = frobenius_orbit(ctx, a)
    for h, _ in xnf.divisors_with_exponents():
        if module_action_orbit(ctx, h, orbit) == ctx.zero:
            return h
    raise RuntimeError("x^n - 1 failed to annihilate the element")


def phi_q(fq: FqArith, factors) -> int:
    """Polynomial totient of a factored monic polynomial.

    factors is an iterable of (irreducible, multiplicity); the empty list
    denotes the constant 1 and gives Phi_q(1) = 1.
    """
    q = fq.q
    out = 1
    for g, e in factors:
        d = poly_degree(g)
        if d < 0:
            raise ZeroPolynomial("zero polynomial has no totient")
        out *= q ** (d * (e - 1)) * (q**d - 1)
    return out


def mobius_q(factors) -> int:
    """Polynomial Mobius function from a factored form."""
    fs = list(factors)
    if any(e >= 2 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def w_poly(factors) -> int:
    """Number of square-free monic divisors: 2^(#distinct irreducibles)."""
    return 1 << sum(1 for _, e in factors if e >= 1)


def phi_q_of_divisor(ctx: FieldCtx, f: PolyFq) -> int:
    xnf = ctx_xn_factorization(ctx)
    return phi_q(ctx.fq, xnf.sub_factors(f))


def w_of_divisor(ctx: FieldCtx, f: PolyFq) -> int:
    xnf = ctx_xn_factorization(ctx)
    return w_poly(xnf.sub_factors(f))


def factor_count_bound(q: int, n: int) -> int:
    """Upper bound on the irreducible factor count of (x^n - 1)/f, f quadratic.

    Takes the best of n - 2 and n/a + b - 1 over the admissible (a, b)
    pairs, evaluated with exact rationals and floored at the end.
    """
    from fractions import Fraction

    if n < 5:
        raise BadDegree("factor_count_bound requires n >= 5")
    candidates = [Fraction(n - 2)]
    pairs = (
        (2, Fraction(q - 1, 2)),
        (3, Fraction(q * q + 3 * q - 4, 6)),
        (4, Fraction(q**3 + 3 * q * q + 5 * q - 9, 12)),
    )
    for a, b in pairs:
        candidates.append(Fraction(n, a) + b - 1)
    return math.floor(min(candidates))
