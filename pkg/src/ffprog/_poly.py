"""Dense polynomial arithmetic over a pluggable coefficient field.

Polynomials are tuples of coefficients, ascending degree, with no trailing
zeros; () is the zero polynomial.  The coefficient field is any object with
zero/one attributes and add/sub/neg/mul/inv methods operating on plain
hashable values.  The same routines serve F_q (int coefficients) and
extension fields (tuple coefficients).
"""

from __future__ import annotations

Poly = tuple


def trim(coeffs, zero) -> tuple:
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == zero:
        i -= 1
    return tuple(coeffs[:i])


def degree(f) -> int:
    """Degree of f; -1 for the zero polynomial."""
    return len(f) - 1


def constant(K, c) -> tuple:
    return () if c == K.zero else (c,)


def x_power(K, n: int) -> tuple:
    return (K.zero,) * n + (K.one,)


def add(K, f, g) -> tuple:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = K.add(out[i], c)
    return trim(out, K.zero)


def sub(K, f, g) -> tuple:
    out = list(f) + [K.zero] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = K.sub(out[i], c)
    return trim(out, K.zero)


def scale(K, c, f) -> tuple:
    if c == K.zero:
        return ()
    return trim([K.mul(c, a) for a in f], K.zero)


def mul(K, f, g) -> tuple:
    if not f or not g:
        return ()
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == K.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return trim(out, K.zero)


def divmod_(K, f, g):
    """Quotient and remainder of f by nonzero g."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return (), f
    inv_lead = K.inv(g[-1])
    rem = list(f)
    quot = [K.zero] * (len(f) - len(g) + 1)
    for i in range(len(f) - len(g), -1, -1):
        c = rem[i + len(g) - 1]
        if c == K.zero:
            continue
        q = K.mul(c, inv_lead)
        quot[i] = q
        for j, b in enumerate(g):
            rem[i + j] = K.sub(rem[i + j], K.mul(q, b))
    return trim(quot, K.zero), trim(rem, K.zero)


def mod(K, f, g) -> tuple:
    return divmod_(K, f, g)[1]


def monic(K, f) -> tuple:
    """Scale f to have leading coefficient one."""
    if not f:
        return ()
    if f[-1] == K.one:
        return f
    return scale(K, K.inv(f[-1]), f)


def gcd(K, f, g) -> tuple:
    """Monic greatest common divisor (monic-normalized Euclid)."""
    while g:
        f, g = g, mod(K, f, g)
    return monic(K, f)


def mulmod(K, f, g, m) -> tuple:
    return mod(K, mul(K, f, g), m)


def pow_mod(K, f, e: int, m) -> tuple:
    """f**e modulo m by square-and-multiply."""
    result = (K.one,)
    base = mod(K, f, m)
    while e:
        if e & 1:
            result = mulmod(K, result, base, m)
        base = mulmod(K, base, base, m)
        e >>= 1
    return result


def eq_poly(f, g) -> bool:
    return tuple(f) == tuple(g)
