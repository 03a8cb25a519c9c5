"""Numerical character machinery for desk-scale verification.

Multiplicative characters are indexed against a discrete-log table of the
generator; additive characters are indexed by their trace multiplier.
The characteristic-function sums (freeness indicators and the zero
indicator) are evaluated in double-precision complex arithmetic; their
exact counterparts live in `classify`, and nothing in the search or
certification paths depends on this module.

F_q-orders of additive characters are computed exactly (mod-p trace
checks on a basis), so grouping characters by order is never a floating
point decision.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import fqpoly, intnt
from .errors import CapExceeded, NotADivisor
from .ffcore import FieldCtx, trace_to_prime
from .fqpoly import PolyFq, ctx_xn_factorization, module_action, poly_degree

DEFAULT_CHAR_CAP = 3000


@dataclass(frozen=True)
class MultChar:
    """Multiplicative character g^t -> exp(2*pi*i * e * t / (q^n - 1))."""

    index: int

    def order(self, group_size: int) -> int:
        import math

        return group_size // math.gcd(self.index, group_size)


@dataclass(frozen=True)
class AddChar:
    """Additive character a -> exp(2*pi*i * Tr(c * a) / p)."""

    multiplier: tuple


class CharTable:
    """Per-context lookup tables for character evaluation."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        N = ctx.order
        self.N = N
        self.N1 = N - 1
        self.p = ctx.p
        self.exp_mult = [
            cmath.exp(2j * cmath.pi * u / self.N1) for u in range(self.N1)
        ]
        self.exp_add = [cmath.exp(2j * cmath.pi * v / ctx.p) for v in range(ctx.p)]
        self.trace_by_code = self._trace_table()
        self.order_by_code, self.codes_by_order = self._add_char_orders()

    # -- exact tables ---------------------------------------------------

    def _basis_elements(self):
        ctx = self.ctx
        basis = []
        for i in range(ctx.n):
            for d in range(ctx.s):
                coeffs = [0] * ctx.n
                coeffs[i] = ctx.p**d
                basis.append(tuple(coeffs))
        return basis

    def _trace_table(self):
        ctx = self.ctx
        p = ctx.p
        basis = self._basis_elements()
        basis_tr = [trace_to_prime(ctx, b) for b in basis]
        table = [0] * self.N
        for code in range(self.N):
            elem = ctx.decode(code)
            acc = 0
            pos = 0
            for c in elem:
                digits = ctx.fq.decode(c)
                for d in digits:
                    if d:
                        acc += d * basis_tr[pos]
                    pos += 1
            table[code] = acc % p
        return table

    def _add_char_orders(self):
        """Exact F_q-order of every additive character, by multiplier code."""
        ctx = self.ctx
        xnf = ctx_xn_factorization(ctx)
        basis = self._basis_elements()
        divisors = xnf.divisors_with_exponents()
        images = [
            [module_action(ctx, h, b) for b in basis] for h, _ in divisors
        ]
        order_by_code = [None] * self.N
        codes_by_order: dict[PolyFq, list[int]] = {}
        for code in range(self.N):
            c = ctx.decode(code)
            for (h, _), imgs in zip(divisors, images):
                if all(
                    self.trace_by_code[ctx.encode(ctx.mul(c, v))] == 0
                    for v in imgs
                ):
                    order_by_code[code] = h
                    codes_by_order.setdefault(h, []).append(code)
                    break
        return order_by_code, codes_by_order

    # -- evaluation -----------------------------------------------------

    def mult_eval(self, e: int, a) -> complex:
        t = self.ctx.dlog[self.ctx.encode(a)]
        if t < 0:
            raise ValueError("multiplicative character at zero")
        return self.exp_mult[e * t % self.N1]

    def add_eval_code(self, c_code: int, a) -> complex:
        ctx = self.ctx
        c = ctx.decode(c_code)
        return self.exp_add[self.trace_by_code[ctx.encode(ctx.mul(c, a))]]


def char_table(ctx: FieldCtx) -> CharTable:
    if "chars" not in ctx.cache:
        ctx.cache["chars"] = CharTable(ctx)
    return ctx.cache["chars"]


def add_char_fq_order(ctx: FieldCtx, psi: AddChar) -> PolyFq:
    """Minimal monic divisor h of x^n - 1 acting trivially on the character."""
    tab = char_table(ctx)
    return tab.order_by_code[ctx.encode(psi.multiplier)]


def i0(ctx: FieldCtx, a) -> complex:
    """Zero indicator: the mean of all additive characters at a."""
    tab = char_table(ctx)
    total = 0j
    for c_code in range(tab.N):
        total += tab.add_eval_code(c_code, a)
    return total / tab.N


def omega_g(ctx: FieldCtx, a, g: PolyFq) -> complex:
    """Freeness indicator for the additive module structure.

    Evaluates Theta(g) * sum over monic h | g of mu_q(h)/Phi_q(h) times the
    sum of all F_q-order-h additive characters at a; equals 1 when a is
    g-free and 0 otherwise, up to rounding.
    """
    tab = char_table(ctx)
    xnf = ctx_xn_factorization(ctx)
    g_exps = xnf.exponents_of(g)
    g_factors = xnf.sub_factors(g)
    theta = fqpoly.phi_q(ctx.fq, g_factors) / ctx.q ** poly_degree(g)
    total = 0j
    for h, exps in xnf.divisors_with_exponents():
        if any(k > gk for k, gk in zip(exps, g_exps)):
            continue
        if any(k >= 2 for k in exps):
            continue  # mu_q = 0
        h_factors = [(f, 1) for (f, _), k in zip(xnf.factors, exps) if k]
        mu = fqpoly.mobius_q(h_factors)
        phi = fqpoly.phi_q(ctx.fq, h_factors)
        s = 0j
        for c_code in tab.codes_by_order.get(h, []):
            s += tab.add_eval_code(c_code, a)
        total += mu / phi * s
    return theta * total


def indicator_Rr(ctx: FieldCtx, a, R: int, r: int) -> complex:
    """Freeness indicator for the multiplicative structure.

    theta(R)/r times the weighted sum over d | R*r of all order-d
    multiplicative characters at a; equals [a is (R, r)-free] up to
    rounding.
    """
    N1 = ctx.order - 1
    if r < 1 or N1 % r != 0:
        raise NotADivisor(f"r = {r} does not divide q^n - 1")
    if R < 1 or (N1 // r) % R != 0:
        raise NotADivisor(f"R = {R} does not divide (q^n - 1)/r")
    tab = char_table(ctx)
    t = ctx.dlog[ctx.encode(a)]
    if t < 0:
        raise NotADivisor("indicator is defined on the multiplicative group")
    theta = intnt.euler_phi(R) / R
    total = 0j
    for d in intnt.factorize(R * r).divisors():
        dr = intnt.reduce_by_gcd(d, r)
        mu = intnt.mobius(dr)
        if mu == 0:
            continue
        step = N1 // d
        s = 0j
        for j in range(d):
            import math

            if math.gcd(j, d) == 1:
                e = step * j
                s += tab.exp_mult[e * t % N1]
        total += mu / intnt.euler_phi(dr) * s
    return theta / r * total


@dataclass
class CharBoundReport:
    """Spot-check results for the classical character-sum estimates."""

    q: int
    n: int
    r: int
    case_a_max: float
    case_a_bound: float
    case_a_ok: bool
    case_b_ok: bool
    case_b_checked: int
    mixed_ok: bool
    mixed_checked: int

    @property
    def ok(self) -> bool:
        return self.case_a_ok and self.case_b_ok and self.mixed_ok


def check_weil_bounds(ctx: FieldCtx, r: int, cap: int = DEFAULT_CHAR_CAP,
                      tol: float = 1e-6) -> CharBoundReport:
    """Numerically audit the square-root cancellation bounds on one field.

    Case a: |sum over units of eta(a) psi(a^r)| <= r * q^(n/2) for every
    multiplicative eta and nontrivial additive psi (all pairs, via FFT).
    Case b: the q^n / 0 dichotomy of sum chi(b) psi(f o b)^(-1) and the
    q^k preimage count, against the exact character-equality predicate.
    Mixed sums: products of shifted linear characters at small m stay
    within (D_1 - 1) q^(n/2) and D_1 q^(n/2).
    """
    N = ctx.order
    if N > cap:
        raise CapExceeded(f"q^n = {N} exceeds character cap {cap}")
    N1 = N - 1
    if N1 % r != 0:
        raise NotADivisor(f"r = {r} does not divide q^n - 1")
    tab = char_table(ctx)

    # case a: S(e, u) = sum_t w^(e t) psi_{g^u}(g^(r t)) for all e, u
    tr_dlog = np.array(
        [tab.trace_by_code[ctx.encode(g)] for g in ctx.elem_of_dlog],
        dtype=np.int64,
    )
    omega_p = np.exp(2j * np.pi * np.arange(ctx.p) / ctx.p)
    idx = np.arange(N1, dtype=np.int64)
    bound_a = r * ctx.q ** (ctx.n / 2)
    max_a = 0.0
    for u in range(N1):
        v = omega_p[tr_dlog[(u + r * idx) % N1]]
        sums = np.fft.ifft(v) * N1
        m = float(np.max(np.abs(sums)))
        if m > max_a:
            max_a = m
    case_a_ok = max_a <= bound_a + tol

    # case b: dichotomy and preimage counts for every divisor f
    xnf = ctx_xn_factorization(ctx)
    basis = tab._basis_elements()
    case_b_ok = True
    checked_b = 0
    elements = [ctx.decode(code) for code in range(N)]
    for f, _ in xnf.divisors_with_exponents():
        f_img = [module_action(ctx, f, b) for b in elements]
        f_basis_img = [module_action(ctx, f, b) for b in basis]
        k = poly_degree(f)
        quot_exps = xnf.quotient_exponents(xnf.exponents_of(f))
        quot = xnf.poly_from_exponents(quot_exps)
        for chi_code in _sample_codes(N, 6):
            chi = ctx.decode(chi_code)
            preimages = 0
            for psi_code in range(N):
                psi = ctx.decode(psi_code)
                equal = all(
                    tab.trace_by_code[ctx.encode(ctx.mul(chi, b))]
                    == tab.trace_by_code[ctx.encode(ctx.mul(psi, fb))]
                    for b, fb in zip(basis, f_basis_img)
                )
                if equal:
                    preimages += 1
                if psi_code % max(1, N // 4) == 0 or equal:
                    total = 0j
                    for elem, fi in zip(elements, f_img):
                        total += tab.add_eval_code(chi_code, elem) * (
                            tab.add_eval_code(psi_code, fi).conjugate()
                        )
                    expect = N if equal else 0
                    if abs(total - expect) > tol * max(1, N):
                        case_b_ok = False
                    checked_b += 1
            chi_order = tab.order_by_code[chi_code]
            divides = _poly_divides(ctx.fq, chi_order, quot)
            expected = ctx.q**k if divides else 0
            if preimages != expected:
                case_b_ok = False

    # mixed sums at small m
    mixed_ok = True
    checked_m = 0
    import random as _random

    rng = _random.Random(f"weil:{ctx.p}:{ctx.s}:{ctx.n}:{r}")
    beta = ctx.one
    for m in (2, 3):
        if m > ctx.p:
            continue
        shifts = [_int_shift(ctx, beta, i) for i in range(m)]
        for _ in range(4):
            cbar = [rng.randrange(N1) for _ in range(m)]
            if all(c == 0 for c in cbar):
                cbar[0] = 1
            d1 = sum(1 for c in cbar if c != 0)
            total_a = 0j
            psi_code = rng.randrange(1, N)
            total_b = 0j
            for a in ctx.elements():
                tlog = 0
                ok = True
                for c_i, sh in zip(cbar, shifts):
                    if c_i == 0:
                        continue
                    t = ctx.dlog[ctx.encode(ctx.add(a, sh))]
                    if t < 0:
                        ok = False
                        break
                    tlog += c_i * t
                if not ok:
                    continue
                val = tab.exp_mult[tlog % N1]
                total_a += val
                total_b += val * tab.add_eval_code(psi_code, ctx.add(a, shifts[0]))
            half = ctx.q ** (ctx.n / 2)
            if abs(total_a) > (d1 - 1) * half + tol and d1 > 1:
                mixed_ok = False
            if abs(total_b) > d1 * half + tol:
                mixed_ok = False
            checked_m += 1

    return CharBoundReport(
        q=ctx.q, n=ctx.n, r=r,
        case_a_max=max_a, case_a_bound=bound_a, case_a_ok=case_a_ok,
        case_b_ok=case_b_ok, case_b_checked=checked_b,
        mixed_ok=mixed_ok, mixed_checked=checked_m,
    )


def _int_shift(ctx: FieldCtx, beta, i: int):
    """beta added to itself i times (the progression step (i)*beta)."""
    out = ctx.zero
    for _ in range(i):
        out = ctx.add(out, beta)
    return out


def _sample_codes(N: int, count: int):
    if N <= count:
        return list(range(N))
    step = max(1, N // count)
    return list(range(0, N, step))[:count]


def _poly_divides(fq, f: PolyFq, g: PolyFq) -> bool:
    from . import _poly

    if not f:
        return False
    return not _poly.mod(fq, g, f)
