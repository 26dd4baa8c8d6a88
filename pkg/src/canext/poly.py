"""Multivariate polynomial arithmetic with graded monomial bases.

``Poly`` is a sparse exponent-tuple -> coefficient map, adequate for the
small 3-variable geometry (curve equations, cubics, adjoints).  The large
ambient rings in g variables are handled through dense coefficient vectors
over the graded monomial bases below; ``monomials``/``mult_index`` fix a
deterministic ordering once and for all.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


class Poly:
    """Sparse multivariate polynomial over F_p.

    Coefficients are ints in [0, p); zero coefficients are never stored.
    Arithmetic takes the modulus explicitly so values stay plain data.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = terms or {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars, {})

    @staticmethod
    def monomial(nvars: int, exps, coeff: int, p: int) -> "Poly":
        c = coeff % p
        e = tuple(exps)
        if len(e) != nvars:
            raise ValueError("exponent tuple length mismatch")
        return Poly(nvars, {e: c} if c else {})

    @staticmethod
    def from_terms(nvars: int, items, p: int) -> "Poly":
        terms: dict = {}
        for e, c in items:
            e = tuple(e)
            c = (terms.get(e, 0) + c) % p
            if c:
                terms[e] = c
            else:
                terms.pop(e, None)
        return Poly(nvars, terms)

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coeff(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = [f"{c}*x^{e}" for e, c in sorted(self.terms.items(), reverse=True)]
        return "Poly(" + " + ".join(bits) + ")"

    # -- arithmetic ----------------------------------------------------

    def add(self, other: "Poly", p: int) -> "Poly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            c = (terms.get(e, 0) + c) % p
            if c:
                terms[e] = c
            else:
                terms.pop(e, None)
        return Poly(self.nvars, terms)

    def sub(self, other: "Poly", p: int) -> "Poly":
        return self.add(other.scale(p - 1, p), p)

    def scale(self, s: int, p: int) -> "Poly":
        s %= p
        if s == 0:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {e: c * s % p for e, c in self.terms.items()})

    def mul(self, other: "Poly", p: int) -> "Poly":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = (out.get(e, 0) + c1 * c2) % p
                if c:
                    out[e] = c
                else:
                    out.pop(e, None)
        return Poly(self.nvars, out)

    def partial(self, i: int, p: int) -> "Poly":
        """Formal partial derivative; in characteristic p the usual
        exponent factor applies, so x^p differentiates to zero."""
        if not 0 <= i < self.nvars:
            raise ValueError("variable index out of range")
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            c2 = c * e[i] % p
            if c2:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = (out.get(e2, 0) + c2) % p
                if not out[e2]:
                    del out[e2]
        return Poly(self.nvars, out)

    def eval(self, point, p: int) -> int:
        point = tuple(x % p for x in point)
        if len(point) != self.nvars:
            raise ValueError("point length mismatch")
        acc = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * pow(x, k, p) % p
            acc = (acc + t) % p
        return acc

    def subst_var(self, i: int, value: int, p: int) -> "Poly":
        """Substitute a constant for variable i (keeps nvars)."""
        out: dict = {}
        for e, c in self.terms.items():
            c2 = c * pow(value % p, e[i], p) % p if e[i] else c
            if not c2:
                continue
            e2 = e[:i] + (0,) + e[i + 1:]
            out[e2] = (out.get(e2, 0) + c2) % p
            if not out[e2]:
                del out[e2]
        return Poly(self.nvars, out)


def translate2(f: Poly, x0: int, y0: int, p: int) -> Poly:
    """Shift a 2-variable polynomial: f(x + x0, y + y0), exactly."""
    if f.nvars != 2:
        raise ValueError("translate2 expects 2 variables")
    out = Poly.zero(2)
    for (i, j), c in f.terms.items():
        # expand (x+x0)^i (y+y0)^j with integer binomials reduced mod p
        xs = _binexp(i, x0, p)
        ys = _binexp(j, y0, p)
        items = []
        for a, ca in enumerate(xs):
            if not ca:
                continue
            for b, cb in enumerate(ys):
                if cb:
                    items.append(((a, b), c * ca % p * cb % p))
        out = out.add(Poly.from_terms(2, items, p), p)
    return out


def _binexp(n: int, t: int, p: int):
    """Coefficients of (x + t)^n: entry a is C(n,a) t^(n-a) mod p."""
    from math import comb

    t %= p
    return [comb(n, a) % p * pow(t, n - a, p) % p for a in range(n + 1)]


# ---------------------------------------------------------------------------
# graded monomial bases


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int):
    """All exponent tuples of the given total degree, descending lex.

    The ordering is part of every serialized artifact; do not change it.
    """
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for k in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - k):
            out.append((k,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int):
    return {e: i for i, e in enumerate(monomials(nvars, degree))}


@lru_cache(maxsize=None)
def mult_index(nvars: int, d1: int, d2: int):
    """Index table: entry [i, j] is the basis position of mono_i * mono_j."""
    m1 = monomials(nvars, d1)
    m2 = monomials(nvars, d2)
    idx = monomial_index(nvars, d1 + d2)
    out = np.empty((len(m1), len(m2)), np.int64)
    for i, e1 in enumerate(m1):
        for j, e2 in enumerate(m2):
            out[i, j] = idx[tuple(a + b for a, b in zip(e1, e2))]
    return out


def nmono(nvars: int, degree: int) -> int:
    return len(monomials(nvars, degree))


def vector_of(f: Poly, degree: int, p: int) -> np.ndarray:
    """Dense coefficient vector of a homogeneous polynomial."""
    idx = monomial_index(f.nvars, degree)
    v = np.zeros(len(idx), np.int64)
    for e, c in f.terms.items():
        if sum(e) != degree:
            raise ValueError("polynomial is not homogeneous of the stated degree")
        v[idx[e]] = c % p
    return v


def poly_of_vector(nvars: int, degree: int, v, p: int) -> Poly:
    mons = monomials(nvars, degree)
    return Poly.from_terms(nvars, ((mons[i], int(c)) for i, c in enumerate(v) if c % p), p)
