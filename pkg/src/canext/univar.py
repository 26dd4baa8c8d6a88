"""Univariate polynomial utilities over F_p.

Polynomials are Python lists of coefficients in ascending degree order,
entries reduced into [0, p).  Root extraction follows the classical
x^p - x split followed by Cantor-Zassenhaus equal-degree splitting, driven
by a caller-supplied deterministic RNG.
"""

from __future__ import annotations

from .rng import SplitMix64


def trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def degree(c) -> int:
    c = trim(c)
    return len(c) - 1


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def scale(a, s, p):
    s %= p
    return trim([ai * s % p for ai in a])


def divmod_poly(a, b, p):
    a, b = list(trim(a)), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        f = a[-1] * inv % p
        q[k] = f
        for i in range(db + 1):
            a[k + i] = (a[k + i] - f * b[i]) % p
        a = trim(a)
    return trim(q), trim(a)


def gcd_poly(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b, p)[1]
    if a:
        a = scale(a, pow(a[-1], p - 2, p), p)
    return a


def powmod(a, e, mod, p):
    """a^e modulo the polynomial ``mod`` over F_p."""
    _, r = divmod_poly(a, mod, p)
    out = [1]
    while e > 0:
        if e & 1:
            out = divmod_poly(mul(out, r, p), mod, p)[1]
        r = divmod_poly(mul(r, r, p), mod, p)[1]
        e >>= 1
    return out


def eval_poly(c, x, p):
    acc = 0
    for ci in reversed(trim(c)):
        acc = (acc * x + ci) % p
    return acc


def deriv(c, p):
    return trim([c[i] * i % p for i in range(1, len(c))])


def roots(c, p, rng: SplitMix64):
    """Distinct roots of ``c`` in F_p, sorted ascending.

    Deterministic given the RNG state.  Multiplicities are ignored.
    """
    c = trim(c)
    if degree(c) < 1:
        return []
    xp = powmod([0, 1], p, c, p)
    g = gcd_poly(sub(xp, [0, 1], p), c, p)
    out = []
    _split_linear(g, p, rng, out)
    out.sort()
    return out


def _split_linear(g, p, rng, out):
    d = degree(g)
    if d < 1:
        return
    if d == 1:
        out.append((-g[0]) * pow(g[1], p - 2, p) % p)
        return
    for _ in range(200):
        delta = rng.randbelow(p)
        h = powmod([delta, 1], (p - 1) // 2, g, p)
        h = gcd_poly(sub(h, [1], p), g, p)
        if 0 < degree(h) < d:
            _split_linear(h, p, rng, out)
            _split_linear(divmod_poly(g, h, p)[0], p, rng, out)
            return
    raise RuntimeError("equal-degree splitting failed to converge")


def root_multiplicity(c, r, p):
    """Multiplicity of the root ``r`` in ``c`` (0 if not a root)."""
    m = 0
    c = trim(c)
    while c and eval_poly(c, r, p) == 0:
        c, rem = divmod_poly(c, [(-r) % p, 1], p)
        if rem:
            break
        m += 1
    return m


def is_squarefree(c, p) -> bool:
    c = trim(c)
    if degree(c) < 1:
        return True
    return degree(gcd_poly(c, deriv(c, p), p)) == 0


def resultant(a, b, p):
    """Resultant of two univariate polynomials via the Euclidean scheme."""
    a, b = trim(a), trim(b)
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, p) % p
        _, r = divmod_poly(a, b, p)
        dr = len(r) - 1
        if not r:
            return 0
        res = res * pow(b[-1], da - dr, p) % p
        if (da * db) % 2 == 1:
            res = (-res) % p
        a, b = b, r


def interpolate(xs, ys, p):
    """Lagrange interpolation; returns ascending coefficients."""
    n = len(xs)
    out = []
    for i in range(n):
        num = [1]
        den = 1
        for j in range(n):
            if j == i:
                continue
            num = mul(num, [(-xs[j]) % p, 1], p)
            den = den * (xs[i] - xs[j]) % p
        out = add(out, scale(num, ys[i] * pow(den, p - 2, p), p), p)
    return out
