"""Brute-force counting and witness search over whole fields.

Enumeration is over gamma in generator-power order (zero first), with
alpha recovered from the action of f on gamma, so counts match the
pair definitions exactly.  Inside the hot loops the multiplicative
tests run on discrete logs (g^t is (R, r)-free iff r | t and no prime
of R divides t/r); every witness that leaves this module can be
re-validated against the direct tests in `classify`, which share no
code with the log-based shortcuts.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import bounds, classify, fqpoly, intnt
from .errors import BadPosition, CapExceeded, NotADivisor, NotADivisorPoly
from .ffcore import FieldCtx, make_field
from .fqpoly import PolyFq, ctx_xn_factorization, poly_degree

DEFAULT_COUNT_CAP = 2 * 10**6
DEFAULT_WITNESS_CAP = 10**8
WITNESS_KEEP = 10

MODES = ("at_position", "any_position", "no_normality")


def count_cap() -> int:
    return int(os.environ.get("FFPROG_COUNT_CAP", DEFAULT_COUNT_CAP))


def witness_cap() -> int:
    return int(os.environ.get("FFPROG_WITNESS_CAP", DEFAULT_WITNESS_CAP))


@dataclass(frozen=True)
class Witness:
    alpha: tuple
    gamma: tuple | None = None
    v: int | None = None


@dataclass
class SearchReport:
    count: int
    witnesses: list[Witness] = field(default_factory=list)
    elapsed: float = 0.0
    exhaustive: bool = True


@dataclass(frozen=True)
class ProgressionSpec:
    """One search instance: field, progression shape and normality target."""

    ctx: FieldCtx
    m: int
    beta: tuple
    r: tuple[int, ...]
    k: int
    f: PolyFq
    mode: str = "any_position"
    v: int | None = None

    def __post_init__(self):
        ctx = self.ctx
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not (1 <= self.m <= ctx.p):
            raise ValueError("progression length must satisfy 1 <= m <= char")
        if self.beta == ctx.zero:
            raise ValueError("beta must be nonzero")
        if len(self.r) != self.m:
            raise ValueError("need one r_i per position")
        N1 = ctx.order - 1
        for ri in self.r:
            if ri < 1 or N1 % ri != 0:
                raise NotADivisor(f"r_i = {ri} does not divide q^n - 1")
        if self.mode != "no_normality":
            xnf = ctx_xn_factorization(ctx)
            xnf.exponents_of(self.f)
            if poly_degree(self.f) != self.k:
                raise NotADivisorPoly("deg f must equal k")
        if self.mode == "at_position":
            if self.v is None or not (1 <= self.v <= self.m):
                raise BadPosition(f"position {self.v} outside 1..{self.m}")


def auto_k_divisor(ctx: FieldCtx, k: int) -> PolyFq:
    """Least monic degree-k divisor of x^n - 1 in (degree, coeffs) order."""
    xnf = ctx_xn_factorization(ctx)
    for h, _ in xnf.divisors_with_exponents():
        if poly_degree(h) == k:
            return h
    raise NotADivisorPoly(f"x^{ctx.n} - 1 has no monic divisor of degree {k}")


def make_spec(ctx: FieldCtx, m: int, r, k: int = 0, f: PolyFq | None = None,
              beta=None, mode: str = "any_position",
              v: int | None = None) -> ProgressionSpec:
    """Convenience constructor with uniform r, beta = 1 and auto-chosen f."""
    if isinstance(r, int):
        r = (r,) * m
    if beta is None:
        beta = ctx.one
    if f is None and mode != "no_normality":
        f = auto_k_divisor(ctx, k)
    if f is None:
        f = (1,)
    return ProgressionSpec(ctx, m, beta, tuple(r), k, f, mode, v)


class _Engine:
    """Per-instance tables shared by the counting loops."""

    def __init__(self, spec: ProgressionSpec):
        ctx = spec.ctx
        self.spec = spec
        self.ctx = ctx
        self.N1 = ctx.order - 1
        # shifts (i) * beta for i = 0..m-1
        self.shifts = [ctx.zero]
        for _ in range(spec.m - 1):
            self.shifts.append(ctx.add(self.shifts[-1], spec.beta))

    def freeness_data(self, R):
        """Per-position (r_i, primes of R_i) for the log-based tests."""
        return [
            (ri, intnt.factorize(Ri).primes)
            for ri, Ri in zip(self.spec.r, R)
        ]


def _position_test(dlog_t: int, r: int, R_primes) -> bool:
    if dlog_t < 0 or dlog_t % r:
        return False
    t = dlog_t // r
    for ell in R_primes:
        if t % ell == 0:
            return False
    return True


def _validate_Rg(spec: ProgressionSpec, R, g):
    ctx = spec.ctx
    N1 = ctx.order - 1
    if len(R) != spec.m:
        raise NotADivisor("need one R_i per position")
    for ri, Ri in zip(spec.r, R):
        if Ri < 1 or (N1 // ri) % Ri != 0:
            raise NotADivisor(f"R_i = {Ri} does not divide (q^n - 1)/r_i")
    xnf = ctx_xn_factorization(ctx)
    xnf.exponents_of(g)


def _gfree_tester(ctx: FieldCtx, g: PolyFq):
    """Orbit-based g-freeness test closed over precomputed quotients."""
    xnf = ctx_xn_factorization(ctx)
    g_exps = xnf.exponents_of(g)
    full = tuple(e for _, e in xnf.factors)
    quots = [
        xnf.poly_from_exponents(
            tuple(e - 1 if i == idx else e for i, e in enumerate(full))
        )
        for idx, kk in enumerate(g_exps)
        if kk > 0
    ]

    def test(orbit) -> bool:
        for quot in quots:
            if fqpoly.module_action_orbit(ctx, quot, orbit) == ctx.zero:
                return False
        return True

    return test


def count_Nv(spec: ProgressionSpec, v: int, R, g: PolyFq) -> SearchReport:
    """Exact number of pairs (alpha, gamma) with the k-normal slot at v.

    alpha + (i-1) beta must be (R_i, r_i)-free at every position, and
    alpha + (v-1) beta must equal the action of f on a g-free gamma.
    """
    ctx = spec.ctx
    if ctx.order > count_cap():
        raise CapExceeded(f"q^n = {ctx.order} above counting cap")
    if not (1 <= v <= spec.m):
        raise BadPosition(f"position {v} outside 1..{spec.m}")
    _validate_Rg(spec, R, g)
    start = time.perf_counter()
    eng = _Engine(spec)
    tests = eng.freeness_data(R)
    gfree = _gfree_tester(ctx, g)
    dlog = ctx.dlog
    shifts = eng.shifts
    count = 0
    witnesses: list[Witness] = []
    for gamma in ctx.elements_by_dlog():
        orbit = fqpoly.frobenius_orbit(ctx, gamma)
        if not gfree(orbit):
            continue
        w = fqpoly.module_action_orbit(ctx, spec.f, orbit)
        alpha = ctx.sub(w, shifts[v - 1])
        ok = True
        elem = alpha
        for i, (ri, Rp) in enumerate(tests):
            elem = alpha if i == 0 else ctx.add(alpha, shifts[i])
            if not _position_test(dlog[ctx.encode(elem)], ri, Rp):
                ok = False
                break
        if ok:
            count += 1
            if len(witnesses) < WITNESS_KEEP:
                witnesses.append(Witness(alpha, gamma, v))
    return SearchReport(count, witnesses, time.perf_counter() - start, True)


def count_N(spec: ProgressionSpec, R, g: PolyFq) -> SearchReport:
    """Exact number of pairs with the k-normal slot at any position."""
    ctx = spec.ctx
    if ctx.order > count_cap():
        raise CapExceeded(f"q^n = {ctx.order} above counting cap")
    _validate_Rg(spec, R, g)
    start = time.perf_counter()
    eng = _Engine(spec)
    tests = eng.freeness_data(R)
    gfree = _gfree_tester(ctx, g)
    dlog = ctx.dlog
    shifts = eng.shifts
    count = 0
    witnesses: list[Witness] = []
    for gamma in ctx.elements_by_dlog():
        orbit = fqpoly.frobenius_orbit(ctx, gamma)
        if not gfree(orbit):
            continue
        w = fqpoly.module_action_orbit(ctx, spec.f, orbit)
        for v in range(1, spec.m + 1):
            alpha = ctx.sub(w, shifts[v - 1])
            ok = True
            for i, (ri, Rp) in enumerate(tests):
                elem = alpha if i == 0 else ctx.add(alpha, shifts[i])
                if not _position_test(dlog[ctx.encode(elem)], ri, Rp):
                    ok = False
                    break
            if ok:
                count += 1
                if len(witnesses) < WITNESS_KEEP:
                    witnesses.append(Witness(alpha, gamma, v))
    return SearchReport(count, witnesses, time.perf_counter() - start, True)


def find_progression(spec: ProgressionSpec) -> Witness | None:
    """First witness in generator-power order, or None if none exists.

    In the normality modes the freeness parameters are the full ones
    (R_i = (q^n - 1)/r_i and g = x^n - 1), so every position is exactly
    r_i-primitive and the flagged slot carries normality defect k.
    """
    ctx = spec.ctx
    if ctx.order > witness_cap():
        raise CapExceeded(f"q^n = {ctx.order} above witness cap")
    N1 = ctx.order - 1
    eng = _Engine(spec)
    shifts = eng.shifts
    dlog = ctx.dlog

    if spec.mode == "no_normality":
        for t in range(N1):
            alpha = ctx.elem_of_dlog[t]
            ok = True
            for i, ri in enumerate(spec.r):
                elem = alpha if i == 0 else ctx.add(alpha, shifts[i])
                tt = dlog[ctx.encode(elem)]
                if tt < 0 or math.gcd(tt, N1) != ri:
                    ok = False
                    break
            if ok:
                return Witness(alpha, None, None)
        return None

    positions = [spec.v] if spec.mode == "at_position" else list(
        range(1, spec.m + 1)
    )
    xn1 = fqpoly.xn_minus_one(ctx.fq, ctx.n)
    gfree = _gfree_tester(ctx, xn1)
    for gamma in ctx.elements_by_dlog():
        orbit = fqpoly.frobenius_orbit(ctx, gamma)
        if not gfree(orbit):
            continue
        w = fqpoly.module_action_orbit(ctx, spec.f, orbit)
        for v in positions:
            alpha = ctx.sub(w, shifts[v - 1])
            ok = True
            for i, ri in enumerate(spec.r):
                elem = alpha if i == 0 else ctx.add(alpha, shifts[i])
                tt = dlog[ctx.encode(elem)]
                if tt < 0 or math.gcd(tt, N1) != ri:
                    ok = False
                    break
            if ok:
                return Witness(alpha, gamma, v)
    return None


def revalidate_witness(spec: ProgressionSpec, w: Witness) -> bool:
    """Check a witness against the direct tests (no discrete logs)."""
    ctx = spec.ctx
    shift = ctx.zero
    for i, ri in enumerate(spec.r):
        elem = ctx.add(w.alpha, shift) if i else w.alpha
        if not classify.is_r_primitive(ctx, elem, ri):
            return False
        shift = ctx.add(shift, spec.beta)
    if spec.mode == "no_normality":
        return True
    if w.gamma is None or w.v is None:
        return False
    xn1 = fqpoly.xn_minus_one(ctx.fq, ctx.n)
    if not classify.is_g_free(ctx, w.gamma, xn1):
        return False
    shift = ctx.zero
    for _ in range(w.v - 1):
        shift = ctx.add(shift, spec.beta)
    target = ctx.add(w.alpha, shift)
    if fqpoly.module_action(ctx, spec.f, w.gamma) != target:
        return False
    return classify.k_normality(ctx, target) == spec.k


def check_admissible(q: int, n: int) -> bool:
    """q odd and gcd(q^3 - q, n) > 1: the necessary shape for the
    three-term, r = 2, k = 2 instances."""
    if q < 2 or n < 1:
        return False
    fac = intnt.factorize(q)
    if len(fac.factors) != 1:
        return False
    return q % 2 == 1 and math.gcd(q**3 - q, n) > 1


# ----------------------------------------------------------------------
# sweep driver


@dataclass(frozen=True)
class SweepTemplate:
    m: int = 2
    r: tuple[int, ...] | int = 1
    k: int = 0
    mode: str = "no_normality"
    f_coeffs: tuple | None = None  # None selects the least degree-k divisor
    evaluate_criteria: bool = False
    count_pairs: bool = False

    def r_vector(self) -> tuple[int, ...]:
        if isinstance(self.r, int):
            return (self.r,) * self.m
        return tuple(self.r)


def _is_sec4_shape(t: SweepTemplate) -> bool:
    return t.m == 3 and t.k == 2 and set(t.r_vector()) == {2}


def _sweep_instance(args) -> dict:
    (p, s, n, seed, template, beta_codes) = args
    t0 = time.perf_counter()
    q = p**s
    row = {
        "q": q, "n": n, "beta": beta_codes, "m": template.m,
        "r": list(template.r_vector()), "k": template.k,
        "admissible": check_admissible(q, n),
        "main_criterion": None, "special_sieve": None,
        "count": None, "witness_found": None, "witness": None,
        "status": "ok",
    }
    try:
        if _is_sec4_shape(template) and not row["admissible"]:
            row["status"] = "skipped"
            return row
        ctx = make_field(p, s, n, seed=seed)
        beta = tuple(beta_codes)
        spec = make_spec(
            ctx, template.m, template.r_vector(), template.k,
            f=template.f_coeffs, beta=beta, mode=template.mode,
        )
        if template.evaluate_criteria:
            xnf = ctx_xn_factorization(ctx)
            quot = xnf.quotient_exponents(xnf.exponents_of(spec.f)) if (
                template.mode != "no_normality"
            ) else tuple(e for _, e in xnf.factors)
            w_quot = sum(1 for e in quot if e > 0)
            rep = bounds.main_criterion(q, n, template.m, template.k,
                                        spec.r, 2**w_quot)
            row["main_criterion"] = rep.verdict
            if _is_sec4_shape(template):
                p0 = bounds.scan_special_sieve(q, n)
                row["special_sieve"] = p0 is not None
        w = find_progression(spec)
        row["witness_found"] = w is not None
        if w is not None:
            row["witness"] = {
                "alpha": list(w.alpha),
                "gamma": list(w.gamma) if w.gamma is not None else None,
                "v": w.v,
            }
        if template.count_pairs and template.mode != "no_normality":
            N1 = ctx.order - 1
            R = tuple(N1 // ri for ri in spec.r)
            row["count"] = count_N(spec, R, fqpoly.xn_minus_one(ctx.fq, n)).count
    except Exception as exc:  # per-row status, sweep keeps going
        row["status"] = f"error: {type(exc).__name__}: {exc}"
    row["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return row


def sweep(pairs, template: SweepTemplate, beta_policy: str = "one",
          seed: int = 0, workers: int = 1) -> list[dict]:
    """Evaluate the template over (q, n) pairs; one row per instance.

    pairs is an iterable of (q, n) with q a prime power.  beta_policy is
    "one" (beta = 1), "fixed:<codes>" (comma-separated F_q codes), or
    "all" (one row per nonzero beta).  Row order is deterministic and
    independent of the worker count.
    """
    tasks = []
    for q, n in pairs:
        fac = intnt.factorize(q)
        if len(fac.factors) != 1:
            raise NotADivisor(f"q = {q} is not a prime power")
        p = fac.primes[0]
        s = fac.factors[p]
        betas = _betas_for(p, s, n, seed, beta_policy)
        for b in betas:
            tasks.append((p, s, n, seed, template, b))
    if workers <= 1:
        return [_sweep_instance(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_instance, tasks, chunksize=1))


def _betas_for(p, s, n, seed, policy):
    one = (1,) + (0,) * (n - 1)
    if policy == "one":
        return [one]
    if policy.startswith("fixed:"):
        codes = tuple(int(x) for x in policy[len("fixed:"):].split(","))
        if len(codes) != n:
            raise ValueError("fixed beta needs one F_q code per coefficient")
        return [codes]
    if policy == "all":
        ctx = make_field(p, s, n, seed=seed)
        return [a for a in ctx.elements() if a != ctx.zero]
    raise ValueError(f"unknown beta policy {policy!r}")
