"""Tower construction F_p < F_q < F_{q^n} and element arithmetic.

Base-field elements are ints in [0, q) encoding base-p digit vectors;
extension elements are length-n tuples of such ints.  The q-power
Frobenius is a precomputed linear map, multiplicative orders are computed
by power tests against the factored group order, and all moduli and the
generator are found by deterministically seeded search so that a context
is reproducible from (p, s, n, seed) alone.
"""

from __future__ import annotations

import itertools
import random
from functools import cached_property

from . import _poly, intnt
from .errors import NotPrime, TooLarge, ZeroElement

DEFAULT_FIELD_CAP = 2**63

# table tiers for base-field arithmetic with s >= 2
_ADD_TABLE_CAP = 1024
_EXPLOG_CAP = 4096


class _GFpArith:
    """Prime-field coefficient arithmetic for digit-level polynomial work."""

    __slots__ = ("p", "zero", "one")

    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return pow(a, -1, self.p)


def _irreducible(K, f, q: int) -> bool:
    """Rabin test: monic f of degree d is irreducible over the field of size q."""
    d = _poly.degree(f)
    x = _poly.x_power(K, 1)
    t = x
    for _ in range(d):
        t = _poly.pow_mod(K, t, q, f)
    if t != _poly.mod(K, x, f):
        return False
    for ell in intnt.factorize(d).primes:
        t = x
        for _ in range(d // ell):
            t = _poly.pow_mod(K, t, q, f)
        if _poly.gcd(K, _poly.sub(K, t, x), f) != (K.one,):
            return False
    return True


def _random_irreducible(K, deg: int, q: int, rng: random.Random, rand_coeff):
    """Seeded search for a monic irreducible polynomial of the given degree."""
    if deg == 1:
        return (K.neg(K.one), K.one)
    while True:
        coeffs = [rand_coeff(rng) for _ in range(deg)] + [K.one]
        f = tuple(coeffs)
        if _irreducible(K, f, q):
            return f


class FqArith:
    """Arithmetic of the base field F_q, q = p^s, elements as ints in [0, q).

    The int encoding is the base-p digit expansion of the coefficient
    vector over F_p, so 0 and 1 always encode the additive and
    multiplicative identities.
    """

    def __init__(self, p: int, s: int, modulus: tuple[int, ...]):
        self.p = p
        self.s = s
        self.q = p**s
        self.modulus = modulus
        self.zero = 0
        self.one = 1
        self._gfp = _GFpArith(p)
        if s > 1:
            self._red_rows = self._reduction_rows()
        self._add_table = None
        self._exp = None
        self._log = None
        if s > 1 and self.q <= _ADD_TABLE_CAP:
            self._build_add_table()
        if s > 1 and self.q <= _EXPLOG_CAP:
            self._build_explog()

    # -- digit helpers -------------------------------------------------

    def decode(self, a: int) -> tuple[int, ...]:
        """Base-p digits of the code, length s."""
        p = self.p
        return tuple((a // p**i) % p for i in range(self.s))

    def encode(self, digits) -> int:
        p = self.p
        return sum(int(d) % p * p**i for i, d in enumerate(digits))

    def _reduction_rows(self):
        # x^(s+j) mod modulus over F_p, as digit vectors
        K = self._gfp
        rows = []
        m = self.modulus
        cur = tuple(K.neg(c) for c in m[:-1])  # x^s = -(lower part)
        rows.append(cur)
        for _ in range(self.s - 2):
            shifted = (0,) + cur
            head = shifted[: self.s]
            if shifted[self.s] != 0:
                head = tuple(
                    K.add(head[i], K.mul(shifted[self.s], rows[0][i]))
                    for i in range(self.s)
                )
            cur = head
            rows.append(cur)
        return rows

    def _raw_mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return a * b % self.p
        p = self.p
        da, db = self.decode(a), self.decode(b)
        prod = [0] * (2 * self.s - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        out = prod[: self.s]
        for j in range(self.s, 2 * self.s - 1):
            c = prod[j]
            if c:
                row = self._red_rows[j - self.s]
                for i in range(self.s):
                    out[i] = (out[i] + c * row[i]) % p
        return self.encode(out)

    def _raw_add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        p = self.p
        da, db = self.decode(a), self.decode(b)
        return self.encode((x + y) % p for x, y in zip(da, db))

    # -- table construction --------------------------------------------

    def _build_add_table(self):
        q = self.q
        tab = [0] * (q * q)
        for a in range(q):
            base = a * q
            for b in range(a, q):
                v = self._raw_add(a, b)
                tab[base + b] = v
                tab[b * q + a] = v
        self._add_table = tab

    def _build_explog(self):
        q = self.q
        fac = intnt.factorize(q - 1)
        g = None
        for cand in range(2, q):
            if all(
                self._raw_pow(cand, (q - 1) // ell) != 1 for ell in fac.primes
            ):
                g = cand
                break
        exp = [1] * (q - 1)
        for t in range(1, q - 1):
            exp[t] = self._raw_mul(exp[t - 1], g)
        log = [0] * q
        for t, v in enumerate(exp):
            log[v] = t
        self._exp = exp
        self._log = log

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    # -- public ops ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a * self.q + b]
        return self._raw_add(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.s == 1:
            return (-a) % self.p
        p = self.p
        return self.encode((-d) % p for d in self.decode(a))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return a * b % self.p
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.s == 1:
            return pow(a, -1, self.p)
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self._raw_pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def elements(self):
        return range(self.q)


class ExtArith:
    """Degree-n extension of F_q with elements as length-n tuples of codes."""

    def __init__(self, fq: FqArith, modulus: tuple[int, ...], n: int):
        self.fq = fq
        self.n = n
        self.modulus = modulus
        self.order = fq.q**n
        self.zero = (0,) * n
        self.one = ((1,) + (0,) * (n - 1)) if n > 1 else (1,)
        self._red_rows = self._reduction_rows() if n > 1 else []

    def _reduction_rows(self):
        fq, n = self.fq, self.n
        rows = []
        cur = tuple(fq.neg(c) for c in self.modulus[:-1])
        rows.append(cur)
        for _ in range(n - 2):
            shifted = (0,) + cur
            head = list(shifted[:n])
            if shifted[n] != 0:
                top = shifted[n]
                for i in range(n):
                    head[i] = fq.add(head[i], fq.mul(top, rows[0][i]))
            cur = tuple(head)
            rows.append(cur)
        return rows

    def embed(self, c: int) -> tuple:
        """Inclusion F_q -> F_{q^n}."""
        return (c,) + (0,) * (self.n - 1)

    def add(self, a, b):
        fq = self.fq
        return tuple(fq.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        fq = self.fq
        return tuple(fq.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        fq = self.fq
        return tuple(fq.neg(x) for x in a)

    def scalar_mul(self, c: int, a):
        fq = self.fq
        return tuple(fq.mul(c, x) for x in a)

    def mul(self, a, b):
        fq, n = self.fq, self.n
        if n == 1:
            return (fq.mul(a[0], b[0]),)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = fq.add(prod[i + j], fq.mul(x, y))
        out = prod[:n]
        for j in range(n, 2 * n - 1):
            c = prod[j]
            if c:
                row = self._red_rows[j - n]
                for i in range(n):
                    out[i] = fq.add(out[i], fq.mul(c, row[i]))
        return tuple(out)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def encode(self, a) -> int:
        q = self.fq.q
        return sum(c * q**i for i, c in enumerate(a))

    def decode(self, code: int) -> tuple:
        q = self.fq.q
        return tuple((code // q**i) % q for i in range(self.n))

    def elements(self):
        """All elements, ascending code order."""
        n, q = self.n, self.fq.q
        for digits in itertools.product(range(q), repeat=n):
            yield digits


class FieldCtx:
    """Immutable description of the tower F_p < F_q < F_{q^n}.

    Carries the two moduli, a verified generator of the multiplicative
    group, and the factored group order.  All arithmetic is exposed as
    methods; derived lookup tables are built lazily and cached.
    """

    def __init__(self, p, s, n, seed, cap, fq, ext, generator, group_order):
        self.p = p
        self.s = s
        self.n = n
        self.seed = seed
        self.cap = cap
        self.q = fq.q
        self.order = ext.order
        self.fq = fq
        self.ext = ext
        self.base_modulus = fq.modulus
        self.ext_modulus = ext.modulus
        self.generator = generator
        self.group_order = group_order
        self.cache: dict = {}

    def __repr__(self):
        return f"FieldCtx(p={self.p}, s={self.s}, n={self.n})"

    # element arithmetic delegates
    @property
    def zero(self):
        return self.ext.zero

    @property
    def one(self):
        return self.ext.one

    def add(self, a, b):
        return self.ext.add(a, b)

    def sub(self, a, b):
        return self.ext.sub(a, b)

    def neg(self, a):
        return self.ext.neg(a)

    def mul(self, a, b):
        return self.ext.mul(a, b)

    def inv(self, a):
        return self.ext.inv(a)

    def pow(self, a, e):
        return self.ext.pow(a, e)

    def scalar_mul(self, c, a):
        return self.ext.scalar_mul(c, a)

    def embed(self, c):
        return self.ext.embed(c)

    def encode(self, a):
        return self.ext.encode(a)

    def decode(self, code):
        return self.ext.decode(code)

    def elements(self):
        return self.ext.elements()

    @cached_property
    def _frob_basis(self):
        # images of 1, x, x^2, ... under the q-power map, as elements
        ext = self.ext
        K = self.fq
        m = ext.modulus
        xq = _poly.pow_mod(K, _poly.x_power(K, 1), self.q, m)
        images = []
        cur = (K.one,)
        for _ in range(self.n):
            padded = tuple(cur) + (0,) * (self.n - len(cur))
            images.append(padded)
            cur = _poly.mulmod(K, cur, xq, m)
        return images

    def frobenius(self, a):
        """The q-power map a -> a^q, evaluated as a linear combination."""
        ext = self.ext
        out = ext.zero
        for c, img in zip(a, self._frob_basis):
            if c:
                out = ext.add(out, ext.scalar_mul(c, img))
        return out

    @cached_property
    def dlog(self):
        """Map element code -> discrete log base the generator (-1 for zero)."""
        table = [-1] * self.order
        e = self.one
        for t in range(self.order - 1):
            table[self.encode(e)] = t
            e = self.mul(e, self.generator)
        if e != self.one:
            raise RuntimeError("generator power table failed to close")
        return table

    @cached_property
    def elem_of_dlog(self):
        """Element tuples indexed by discrete log."""
        out = []
        e = self.one
        for _ in range(self.order - 1):
            out.append(e)
            e = self.mul(e, self.generator)
        return out

    def elements_by_dlog(self):
        """Zero first, then generator powers g^0, g^1, ..."""
        yield self.zero
        yield from self.elem_of_dlog

    # pickling: rebuild deterministically from construction parameters
    def __getstate__(self):
        return (self.p, self.s, self.n, self.seed, self.cap)

    def __setstate__(self, state):
        p, s, n, seed, cap = state
        rebuilt = make_field(p, s, n, seed=seed, cap=cap)
        self.__dict__.update(rebuilt.__dict__)


def _ctx_rng(p, s, n, seed) -> random.Random:
    return random.Random(f"ffprog:{p}:{s}:{n}:{seed}")


def make_field(p: int, s: int = 1, n: int = 2, *, seed: int = 0,
               cap: int | None = DEFAULT_FIELD_CAP) -> FieldCtx:
    """Build the tower F_p < F_{p^s} < F_{(p^s)^n} with a verified generator.

    Raises NotPrime if p is composite and TooLarge when q^n exceeds the
    cap (pass cap=None for bound-only contexts that never enumerate).
    n = 1 is allowed: it degenerates to the base field itself, which the
    search subcommands use for single-field replication runs.
    """
    if not intnt.is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if s < 1 or n < 1:
        raise ValueError("require s >= 1 and n >= 1")
    q = p**s
    order = q**n
    if cap is not None and order > cap:
        raise TooLarge(f"q^n = {order} exceeds cap {cap}")

    rng = _ctx_rng(p, s, n, seed)
    gfp = _GFpArith(p)
    if s == 1:
        base_modulus = (0, 1)
    else:
        base_modulus = _random_irreducible(
            gfp, s, p, rng, lambda r: r.randrange(p)
        )
    fq = FqArith(p, s, base_modulus)

    if n == 1:
        ext_modulus = (fq.neg(1), 1)
    else:
        ext_modulus = _random_irreducible(
            fq, n, q, rng, lambda r: r.randrange(q)
        )
    ext = ExtArith(fq, ext_modulus, n)

    group_order = intnt.factorize(order - 1)
    generator = _find_generator(ext, group_order, rng)
    return FieldCtx(p, s, n, seed, cap, fq, ext, generator, group_order)


def _find_generator(ext: ExtArith, group_order: intnt.FactoredInt,
                    rng: random.Random):
    N = ext.order
    if N == 2:
        return ext.one
    while True:
        code = rng.randrange(1, N)
        a = ext.decode(code)
        if all(
            ext.pow(a, (N - 1) // ell) != ext.one for ell in group_order.primes
        ):
            return a


def frobenius_q(ctx: FieldCtx, a):
    """a^q, the Frobenius of the intermediate field."""
    return ctx.frobenius(a)


def mult_order(ctx: FieldCtx, a) -> int:
    """Exact multiplicative order via dividing out primes of q^n - 1."""
    if a == ctx.zero:
        raise ZeroElement("zero has no multiplicative order")
    o = ctx.order - 1
    for ell in ctx.group_order.primes:
        while o % ell == 0 and ctx.pow(a, o // ell) == ctx.one:
            o //= ell
    return o


def trace_to_prime(ctx: FieldCtx, a) -> int:
    """Absolute trace down to F_p, returned as a residue mod p."""
    t = a
    acc = a
    for _ in range(ctx.s * ctx.n - 1):
        t = ctx.pow(t, ctx.p)
        acc = ctx.add(acc, t)
    if any(c != 0 for c in acc[1:]):
        raise RuntimeError("trace did not land in the prime field")
    digits = ctx.fq.decode(acc[0])
    if any(d != 0 for d in digits[1:]):
        raise RuntimeError("trace did not land in the prime field")
    return digits[0]
