"""Plane-curve models with ordinary singularities.

A curve is a homogeneous form F(x, y, z) over F_p together with its list of
ordinary singular points, all placed in the affine chart z = 1.  The chart
and the local coordinate are fixed once: sections of powers of the
canonical bundle are written as (rational value) * dx^k at smooth points
with F_y != 0, so every evaluation below is a single exact field element.

The canonical series is cut out by adjoints: degree d-3 forms vanishing to
order m_i - 1 at each m_i-fold point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import univar
from .errors import DimensionMismatch, Exhausted, InvalidCurve
from .modp import PrimeField, mat_kernel
from .poly import Poly, monomials, translate2
from .rng import SplitMix64, seed_from


@dataclass(frozen=True)
class SingularPoint:
    x: int
    y: int
    mult: int


@dataclass(frozen=True, eq=False)
class PlaneCurve:
    field: PrimeField
    degree: int
    poly: Poly  # homogeneous of degree `degree` in (x, y, z)
    sing: tuple[SingularPoint, ...] = ()
    gonality: str = "unknown"  # hyperelliptic | trigonal | tetragonal | plane:d | unknown
    name: str = ""

    @property
    def p(self) -> int:
        return self.field.p


# Clifford-index floor implied by a declared gonality label.  Recorded from
# the declaration only; the tool cannot certify it.
def clifford_floor(label: str):
    if label == "hyperelliptic":
        return 0
    if label == "trigonal":
        return 1
    if label == "tetragonal":
        return 2
    if label.startswith("plane:"):
        d = int(label.split(":", 1)[1])
        return d - 4
    return None


def declared_cliff_gt2(curve: PlaneCurve) -> bool:
    c = clifford_floor(curve.gonality)
    return c is not None and c > 2


def make_curve(field, degree, poly, sing=(), gonality="unknown", name="") -> PlaneCurve:
    """Validate and build a PlaneCurve.

    Checks: homogeneity and degree of F; each listed point is singular of
    exactly the stated multiplicity with squarefree tangent cone (ordinary);
    a few seeded slices of F are squarefree (reducedness heuristic).
    """
    p = field.p
    if poly.nvars != 3 or poly.is_zero() or not poly.is_homogeneous():
        raise InvalidCurve("F must be a nonzero homogeneous 3-variable form")
    if poly.total_degree() != degree:
        raise InvalidCurve("degree mismatch")
    if degree >= p:
        raise InvalidCurve("modulus must exceed the degree")
    sing = tuple(SingularPoint(s.x % p, s.y % p, s.mult) for s in sing)
    seen = set()
    fa = _dehomogenize(poly)
    for s in sing:
        if (s.x, s.y) in seen:
            raise InvalidCurve("repeated singular point")
        seen.add((s.x, s.y))
        if s.mult < 2:
            raise InvalidCurve("singular multiplicity must be >= 2")
        sh = translate2(fa, s.x, s.y, p)
        order = min((sum(e) for e in sh.terms), default=-1)
        if order != s.mult:
            raise InvalidCurve(
                f"point ({s.x},{s.y}) has vanishing order {order}, declared {s.mult}"
            )
        if not _tangent_cone_squarefree(sh, s.mult, p):
            raise InvalidCurve(f"non-ordinary singular point ({s.x},{s.y})")
    _check_reduced_slices(fa, sing, p)
    return PlaneCurve(field, degree, poly, sing, gonality, name)


def _dehomogenize(F: Poly) -> Poly:
    return Poly(2, {(e[0], e[1]): c for e, c in F.terms.items()})


def _tangent_cone_squarefree(shifted: Poly, m: int, p: int) -> bool:
    """Squarefree test for the degree-m initial binary form."""
    cone = [0] * (m + 1)  # coefficient of u^(m-i) v^i
    for e, c in shifted.terms.items():
        if e[0] + e[1] == m:
            cone[e[1]] = c
    # random invertible substitution u -> u, v -> v + t*u makes the top
    # coefficient nonzero so the affine squarefree test sees every root
    rng = SplitMix64(seed_from("cone", p, tuple(cone)))
    for _ in range(32):
        t = rng.randbelow(p)
        subs = [0] * (m + 1)
        for i, c in enumerate(cone):
            if not c:
                continue
            # v^i u^(m-i) with v -> v + t u contributes binom(i,k) t^(i-k)
            from math import comb

            for k in range(i + 1):
                subs[k] = (subs[k] + c * comb(i, k) * pow(t, i - k, p)) % p
        if subs[m] % p:
            # subs[k] is the coefficient of v^k, already ascending order
            return univar.is_squarefree(subs, p)
    return False


def _check_reduced_slices(fa: Poly, sing, p: int, tries: int = 6):
    """Reject F with a repeated factor: generic x-slices must be squarefree."""
    rng = SplitMix64(seed_from("reduced", p, tuple(sorted(fa.terms.items()))))
    sing_x = {s.x for s in sing}
    bad = 0
    for _ in range(tries):
        x0 = rng.randbelow(p)
        if x0 in sing_x:
            continue
        sl = _slice_at(fa, x0, p)
        if univar.degree(sl) < 1 or not univar.is_squarefree(sl, p):
            bad += 1
    if bad > tries // 2:
        raise InvalidCurve("F appears non-reduced (repeated slice roots)")


def _slice_at(fa: Poly, x0: int, p: int):
    """Univariate y-slice f(x0, y)."""
    out = {}
    for (i, j), c in fa.terms.items():
        out[j] = (out.get(j, 0) + c * pow(x0, i, p)) % p
    deg = max(out, default=0)
    return univar.trim([out.get(j, 0) for j in range(deg + 1)])


def genus(curve: PlaneCurve) -> int:
    """Geometric genus by adjunction for ordinary singularities."""
    d = curve.degree
    g = (d - 1) * (d - 2) // 2
    for s in curve.sing:
        g -= s.mult * (s.mult - 1) // 2
    return g


@dataclass(frozen=True)
class CurvePoint:
    """Smooth affine point with cached partial values; F_y != 0 guarantees
    x is a local coordinate at the point."""

    x: int
    y: int
    fx: int
    fy: int


@lru_cache(maxsize=64)
def _affine_data(curve: PlaneCurve):
    p = curve.p
    fa = _dehomogenize(curve.poly)
    fx = fa.partial(0, p)
    fy = fa.partial(1, p)
    return fa, fx, fy, fx.partial(1, p), fy.partial(1, p)


def sample_points(curve: PlaneCurve, count: int, seed: int = 0) -> list[CurvePoint]:
    """Deterministic sample of distinct smooth points with F_y != 0.

    Scans x-values in a seeded pseudorandom order and extracts the rational
    roots of each slice F(x, y, 1).  Raises ``Exhausted`` when the field has
    too few admissible points.
    """
    p = curve.p
    fa, fxp, fyp, _, _ = _affine_data(curve)
    singset = {(s.x, s.y) for s in curve.sing}
    rng = SplitMix64(seed_from("points", p, seed, curve.poly.total_degree(),
                               tuple(sorted(curve.poly.terms.items()))))
    rootrng = rng.child("roots")
    out: list[CurvePoint] = []
    tried: set[int] = set()
    budget = min(p, 64 + 8 * max(count, 1))
    while len(out) < count:
        if len(tried) >= min(p, budget):
            if len(tried) >= p:
                raise Exhausted(f"only {len(out)} admissible points over F_{p}")
            budget = min(p, budget * 2)
        x0 = rng.randbelow(p)
        if x0 in tried:
            continue
        tried.add(x0)
        for y0 in univar.roots(_slice_at(fa, x0, p), p, rootrng):
            if (x0, y0) in singset:
                continue
            fy = fyp.eval((x0, y0), p)
            if fy == 0:
                continue
            out.append(CurvePoint(x0, y0, fxp.eval((x0, y0), p), fy))
            if len(out) == count:
                break
    return out


@dataclass(frozen=True)
class SectionBasis:
    """Representatives for sections of a power of the canonical bundle.

    The stored representatives are the degree d-3 adjoints (k=1); higher
    powers are realized downstream as k-fold products with the twist rule
    value = (A_1 ... A_k) / F_y^k.
    """

    role: str
    k: int
    polys: tuple[Poly, ...]

    def __len__(self):
        return len(self.polys)


def adjoint_basis(curve: PlaneCurve) -> SectionBasis:
    """Basis of degree d-3 adjoints; dimension must equal the genus."""
    g = genus(curve)
    if g < 2:
        raise DimensionMismatch("genus below 2")
    p = curve.p
    d = curve.degree
    mons = monomials(3, d - 3)
    cond_rows = []
    for s in curve.sing:
        # vanishing to order >= m-1: all shifted coefficients of total
        # degree < m-1 vanish; conditions are linear in the coefficients
        for a, b in _orders_below(s.mult - 1):
            row = np.zeros(len(mons), np.int64)
            for idx, e in enumerate(mons):
                mono = Poly(2, {(e[0], e[1]): 1})
                sh = translate2(mono, s.x, s.y, p)
                row[idx] = sh.terms.get((a, b), 0)
            cond_rows.append(row)
    if cond_rows:
        K = mat_kernel(np.array(cond_rows, dtype=np.int64), p)
    else:
        K = np.eye(len(mons), dtype=np.int64)
    if K.shape[0] != g:
        raise DimensionMismatch(f"adjoint space has dimension {K.shape[0]}, genus is {g}")
    polys = []
    for v in K:
        terms = [(mons[i], int(c)) for i, c in enumerate(v) if c]
        polys.append(Poly.from_terms(3, terms, p))
    return SectionBasis("canonical", 1, tuple(polys))


def _orders_below(m):
    return [(a, b) for t in range(m) for a in range(t + 1) for b in [t - a]]


def omega_eval(curve: PlaneCurve, A: Poly, q: CurvePoint):
    """Value and x-derivative of the canonical section A dx / F_y at q.

    The derivative follows the chain rule along the curve with
    dy/dx = -F_x/F_y; both outputs are exact field elements.
    """
    p = curve.p
    fa, fxp, fyp, fxy, fyy = _affine_data(curve)
    a2 = _dehomogenize(A) if A.nvars == 3 else A
    pt = (q.x, q.y)
    a = a2.eval(pt, p)
    ax = a2.partial(0, p).eval(pt, p)
    ay = a2.partial(1, p).eval(pt, p)
    fy = q.fy
    fyinv = pow(fy, p - 2, p)
    yp = (-q.fx) * fyinv % p
    val = a * fyinv % p
    dfy = (fxy.eval(pt, p) + fyy.eval(pt, p) * yp) % p
    deriv = ((ax + ay * yp) * fyinv - a * dfy * fyinv % p * fyinv) % p
    return val, deriv


@dataclass(frozen=True, eq=False)
class EvalTable:
    """Adjoint section data at sampled points.

    ``vals``/``derivs`` are the g x M tables of values and x-derivatives of
    the canonical sections A_i dx / F_y; ``reps`` the raw adjoint values
    A_i(q), which serve as canonical coordinates.
    """

    curve: PlaneCurve
    seed: int
    points: tuple[CurvePoint, ...]
    basis: SectionBasis
    vals: np.ndarray
    derivs: np.ndarray
    reps: np.ndarray


_table_cache: dict = {}


def eval_table(curve: PlaneCurve, M: int, seed: int = 0) -> EvalTable:
    """Sampled evaluation table, cached per (curve, M, seed)."""
    # curves hash by identity; keying on the object keeps it alive, so the
    # cache can never serve a stale entry for a recycled id
    key = (curve, M, seed)
    hit = _table_cache.get(key)
    if hit is not None:
        return hit
    p = curve.p
    basis = adjoint_basis(curve)
    pts = sample_points(curve, M, seed)
    g = len(basis)
    vals = np.zeros((g, M), np.int64)
    derivs = np.zeros((g, M), np.int64)
    reps = np.zeros((g, M), np.int64)
    for i, A in enumerate(basis.polys):
        a2 = _dehomogenize(A)
        for j, q in enumerate(pts):
            v, dv = omega_eval(curve, a2, q)
            vals[i, j] = v
            derivs[i, j] = dv
            reps[i, j] = a2.eval((q.x, q.y), p)
    tab = EvalTable(curve, seed, tuple(pts), basis, vals, derivs, reps)
    _table_cache[key] = tab
    return tab
