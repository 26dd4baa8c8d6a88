"""Geometric extensions from plane models: cubics through the singular
points and the degree-d linear system cutting them out.

For a plane model F of degree d with ordinary singular points p_i and a
cubic T through them, the forms of degree d vanishing on the base scheme
(the intersection of T and the curve, with multiplicity m_i at p_i) are
exactly span{F} + T * (adjoint forms).  The linear conditions are imposed
scheme-theoretically (membership in (F, T) plus multiplicities), which
never needs the intersection points to be rational; rational simple base
points are extracted when they exist, for reporting.

The induced map to P^g contracts T to a single point (an elliptic
singularity of the image surface) and restricts on the curve to the
canonical series in a hyperplane; both facts are verified on samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import univar
from .curves import PlaneCurve, adjoint_basis, eval_table, genus, sample_points
from .errors import (
    ContractionFail,
    DimensionMismatch,
    HypothesisViolation,
    IrrationalBasepoints,
    SectionFail,
)
from .modp import PrimeField, mat_kernel, mat_rank, modmul
from .poly import Poly, monomials, translate2, vector_of
from .rng import SplitMix64, seed_from


def cubics_through(points, field: PrimeField) -> np.ndarray:
    """Coefficient basis of cubics vanishing at the given affine points.

    Dimension must be 10 - a (projective dimension 9 - a); special
    configurations raise DimensionMismatch.
    """
    p = field.p
    pts = [(x % p, y % p) for x, y in points]
    if len(set(pts)) != len(pts):
        raise DimensionMismatch("repeated points")
    if len(pts) > 9:
        raise DimensionMismatch("at most 9 points")
    mons = monomials(3, 3)
    if pts:
        rows = np.array(
            [[_eval_mono(e, x, y, p) for e in mons] for x, y in pts], dtype=np.int64
        )
        K = mat_kernel(rows, p)
    else:
        K = np.eye(len(mons), dtype=np.int64)
    if K.shape[0] != 10 - len(pts):
        raise DimensionMismatch(
            f"cubic system through {len(pts)} points has dimension {K.shape[0]}"
        )
    return K


def _eval_mono(e, x, y, p):
    return pow(x, e[0], p) * pow(y, e[1], p) % p


@dataclass(frozen=True, eq=False)
class PlaneExtensionSystem:
    """The degree-d system with base scheme T . C, and its basis."""

    curve: PlaneCurve
    cubic: Poly
    basis: np.ndarray  # (g+1, n_d) coefficient rows
    simple_base_points: tuple  # rational transverse intersections found
    n_base_simple: int  # total simple base points (with conjugates)
    attempts: int  # resampling attempts consumed by the caller


def sample_cubic(curve: PlaneCurve, seed: int = 0, max_attempts: int = 60):
    """Pseudorandom cubic through the singular points, transverse to the
    curve: intersection multiplicity m_i at each singular point and
    reduced elsewhere, certified by the resultant multiplicity pattern."""
    p = curve.p
    field = curve.field
    K = cubics_through([(s.x, s.y) for s in curve.sing], field)
    rng = SplitMix64(seed_from("cubic", p, seed, curve.name or id(curve)))
    mons = monomials(3, 3)
    for attempt in range(1, max_attempts + 1):
        coeffs = np.array([rng.randbelow(p) for _ in range(K.shape[0])], dtype=np.int64)
        vec = modmul(coeffs[None, :], K, p).reshape(-1)
        T = Poly.from_terms(3, ((mons[i], int(c)) for i, c in enumerate(vec) if c), p)
        if T.is_zero():
            continue
        if _admissible(curve, T):
            return T, attempt
    raise HypothesisViolation(f"no admissible cubic found in {max_attempts} attempts")


def _admissible(curve: PlaneCurve, T: Poly) -> bool:
    p = curve.p
    # no intersection at infinity: the z=0 binary forms must be coprime
    fz = _binary_z0(curve.poly, p)
    tz = _binary_z0(T, p)
    if univar.resultant(fz, tz, p) == 0:
        return False
    for s in curve.sing:
        sh = translate2(_aff(T, p), s.x, s.y, p)
        if sh.terms.get((0, 0), 0):
            return False  # must vanish at the singular point
        grad = (sh.terms.get((1, 0), 0), sh.terms.get((0, 1), 0))
        if grad == (0, 0):
            return False  # T singular at the base point
        # tangent direction of T not in the tangent cone of the curve
        fsh = translate2(_aff(curve.poly, p), s.x, s.y, p)
        cone = [0] * (s.mult + 1)
        for e, c in fsh.terms.items():
            if e[0] + e[1] == s.mult:
                cone[e[1]] = c
        # direction (u, v) with grad . (u, v) = 0
        u, v = (-grad[1]) % p, grad[0]
        val = 0
        for i, cc in enumerate(cone):
            val = (val + cc * pow(u, s.mult - i, p) * pow(v, i, p)) % p
        if val == 0:
            return False
    res = _resultant_x(curve.poly, T, p)
    if univar.degree(res) != 3 * curve.degree:
        return False
    for s in curve.sing:
        if univar.root_multiplicity(res, s.x, p) != s.mult:
            return False
        res, _ = _divide_out(res, s.x, s.mult, p)
    if not univar.is_squarefree(res, p):
        return False
    return all(univar.eval_poly(res, s.x, p) != 0 for s in curve.sing)


def _aff(F: Poly, p: int) -> Poly:
    return Poly(2, {(e[0], e[1]): c for e, c in F.terms.items()})


def _binary_z0(F: Poly, p: int):
    """F(x, 1, 0) as a univariate in x (coprimality test at infinity)."""
    out: dict = {}
    for e, c in F.terms.items():
        if e[2] == 0:
            out[e[0]] = (out.get(e[0], 0) + c) % p
    deg = max(out, default=0)
    return univar.trim([out.get(i, 0) for i in range(deg + 1)])


def _divide_out(c, root, mult, p):
    for _ in range(mult):
        c, rem = univar.divmod_poly(c, [(-root) % p, 1], p)
        if rem:
            raise ArithmeticError("inexact division while stripping a root")
    return c, mult


def _resultant_x(F: Poly, T: Poly, p: int):
    """Res_y of the affine slices, by evaluation and interpolation.

    Sample x-values where neither leading y-coefficient drops; the
    interpolant is verified at extra points.
    """
    fa, ta = _aff(F, p), _aff(T, p)
    dy_f = max(e[1] for e in fa.terms)
    dy_t = max(e[1] for e in ta.terms)
    lc_f = {e[0]: c for e, c in fa.terms.items() if e[1] == dy_f}
    lc_t = {e[0]: c for e, c in ta.terms.items() if e[1] == dy_t}
    bound = 3 * F.total_degree() + 1
    xs, ys = [], []
    x = 0
    while len(xs) < bound + 4 and x < p:
        lf = sum(c * pow(x, i, p) for i, c in lc_f.items()) % p
        lt = sum(c * pow(x, i, p) for i, c in lc_t.items()) % p
        if lf and lt:
            xs.append(x)
            ys.append(univar.resultant(_y_slice(fa, x, p), _y_slice(ta, x, p), p))
        x += 1
    if len(xs) < bound + 4:
        raise HypothesisViolation("field too small for resultant interpolation")
    res = univar.interpolate(xs[:bound], ys[:bound], p)
    for x0, y0 in zip(xs[bound:], ys[bound:]):
        if univar.eval_poly(res, x0, p) != y0:
            raise ArithmeticError("resultant interpolation failed verification")
    return res


def _y_slice(fa: Poly, x0: int, p: int):
    out: dict = {}
    for (i, j), c in fa.terms.items():
        out[j] = (out.get(j, 0) + c * pow(x0, i, p)) % p
    deg = max(out, default=0)
    return univar.trim([out.get(j, 0) for j in range(deg + 1)])


def extension_system(curve: PlaneCurve, T: Poly, attempts: int = 1,
                     want_rational_basepoints: bool = False) -> PlaneExtensionSystem:
    """Forms of degree d through the base scheme of (curve, T).

    Conditions: membership in the degree-d part of (F, T), plus
    multiplicity m_i at each singular point.  Dimension must be g+1; the
    basis then provably contains F and every T * adjoint, which is
    asserted.  With ``want_rational_basepoints`` the simple base points
    must all be rational (raises IrrationalBasepoints otherwise); by
    default the rational ones are reported and conjugate points are
    counted.
    """
    p = curve.p
    d = curve.degree
    g = genus(curve)
    mons = monomials(3, d)
    n = len(mons)
    idx = {e: i for i, e in enumerate(mons)}
    # span of (F, T)_d: F itself and T * S_{d-3}
    span = np.zeros((1 + len(monomials(3, d - 3)), n), np.int64)
    span[0] = vector_of(curve.poly, d, p)
    for r, e in enumerate(monomials(3, d - 3)):
        prod = T.mul(Poly(3, {e: 1}), p)
        span[1 + r] = vector_of(prod, d, p)
    if mat_rank(span, p) != span.shape[0]:
        raise DimensionMismatch("T divides F or the span is degenerate")
    cond = [mat_kernel(span, p)]  # membership conditions: annihilator rows
    for s in curve.sing:
        rows = np.zeros((s.mult * (s.mult + 1) // 2, n), np.int64)
        r = 0
        for t in range(s.mult):
            for a in range(t + 1):
                b = t - a
                for col, e in enumerate(mons):
                    sh = translate2(Poly(2, {(e[0], e[1]): 1}), s.x, s.y, p)
                    rows[r, col] = sh.terms.get((a, b), 0)
                r += 1
        cond.append(rows)
    basis = mat_kernel(np.vstack(cond), p)
    if basis.shape[0] != g + 1:
        raise DimensionMismatch(
            f"extension system has dimension {basis.shape[0]}, expected {g + 1}"
        )
    # membership assertions: F and T * adjoints reduce to zero
    from .modp import SpanReducer

    red = SpanReducer(basis, p)
    if not red.contains(span[0][None, :]):
        raise SectionFail("curve equation missing from the system")
    adj = adjoint_basis(curve)
    tadj = np.zeros((len(adj), n), np.int64)
    for r, A in enumerate(adj.polys):
        tadj[r] = vector_of(T.mul(A, p), d, p)
    if not red.contains(tadj):
        raise SectionFail("T * adjoint family missing from the system")
    simple, n_simple = _rational_simple_basepoints(curve, T)
    if want_rational_basepoints and len(simple) < n_simple:
        raise IrrationalBasepoints(
            f"only {len(simple)} of {n_simple} simple base points are rational"
        )
    return PlaneExtensionSystem(curve, T, basis, tuple(simple), n_simple, attempts)


def _rational_simple_basepoints(curve, T):
    p = curve.p
    res = _resultant_x(curve.poly, T, p)
    for s in curve.sing:
        res, _ = _divide_out(res, s.x, s.mult, p)
    n_simple = univar.degree(res)
    rng = SplitMix64(seed_from("basepoints", p, curve.name or ""))
    pts = []
    fa, ta = _aff(curve.poly, p), _aff(T, p)
    for x0 in univar.roots(res, p, rng):
        gy = univar.gcd_poly(_y_slice(fa, x0, p), _y_slice(ta, x0, p), p)
        if univar.degree(gy) == 1:
            y0 = (-gy[0]) * pow(gy[1], p - 2, p) % p
            pts.append((x0, y0))
    return pts, n_simple


@dataclass(frozen=True, eq=False)
class SurfaceImageSample:
    """Evaluations of the system at plane points, with location flags."""

    system: PlaneExtensionSystem
    generic: list  # (point, image vector)
    on_curve: list
    on_cubic: list
    contraction_ok: bool
    hyperplane_ok: bool
    span_dim: int
    matches_canonical: bool


def surface_sample(sys: PlaneExtensionSystem, M: int, seed: int = 0) -> SurfaceImageSample:
    """Evaluate the map to P^g at generic, on-curve and on-cubic points.

    Verifies: all cubic points map to one projective point (the contracted
    elliptic singularity); curve points land in the hyperplane dual to the
    F-member and span it; and in that hyperplane they reproduce the
    canonical coordinates up to the invertible change encoded by the joint
    rank test.
    """
    curve = sys.curve
    p = curve.p
    g = genus(curve)
    d = curve.degree
    mons = monomials(3, d)
    rng = SplitMix64(seed_from("surface-sample", p, seed))

    def image(x, y):
        vec = np.array([_eval_mono(e, x, y, p) for e in mons], dtype=np.int64)
        return modmul(sys.basis, vec[:, None], p).reshape(-1)

    taff = _aff(sys.cubic, p)
    faff = _aff(curve.poly, p)
    generic = []
    while len(generic) < M:
        x, y = rng.randbelow(p), rng.randbelow(p)
        if faff.eval((x, y), p) and taff.eval((x, y), p):
            generic.append(((x, y), image(x, y)))

    pts_c = sample_points(curve, max(M, 2 * g + 2), seed)
    on_curve = [((q.x, q.y), image(q.x, q.y)) for q in pts_c]

    on_cubic = []
    rootrng = rng.child("cubic-roots")
    tried = 0
    while len(on_cubic) < M and tried < 40 * M:
        x0 = rng.randbelow(p)
        tried += 1
        for y0 in univar.roots(_y_slice(taff, x0, p), p, rootrng):
            if faff.eval((x0, y0), p) == 0:
                continue  # base point, not a contraction witness
            on_cubic.append(((x0, y0), image(x0, y0)))
            if len(on_cubic) == M:
                break
    if len(on_cubic) < 2:
        raise HypothesisViolation("could not sample enough points on the cubic")

    V = np.array([v for _, v in on_cubic], dtype=np.int64)
    contraction_ok = all(row.any() for row in V) and mat_rank(V, p) == 1
    if not contraction_ok:
        raise ContractionFail("cubic points map to more than one point")

    # hyperplane of the F-member: express F in the basis, kill the images
    from .modp import solve_many

    fvec = vector_of(curve.poly, d, p)
    beta = solve_many(sys.basis.T, fvec[:, None], p).reshape(-1)
    C = np.array([v for _, v in on_curve], dtype=np.int64)
    hyperplane_ok = not np.any(modmul(C, beta[:, None], p))
    if not hyperplane_ok:
        raise SectionFail("curve images leave the F-hyperplane")
    span_dim = mat_rank(C, p)
    if span_dim != g:
        raise SectionFail(f"curve images span dimension {span_dim}, expected {g}")

    # joint rank test against canonical coordinates scaled by T
    tab = eval_table(curve, len(pts_c), seed)
    tvals = np.array([taff.eval((q.x, q.y), p) for q in tab.points], dtype=np.int64)
    scaled = tab.reps * tvals[None, :] % p
    joint = np.vstack([C.T, scaled])
    matches = mat_rank(joint, p) == g
    if not matches:
        raise SectionFail("hyperplane coordinates do not match the canonical series")
    return SurfaceImageSample(sys, generic, on_curve, on_cubic, True, True, span_dim, True)


def cubics_cut_distinct(curve: PlaneCurve, T1: Poly, T2: Poly, seed: int = 0) -> bool:
    """Do two cubics cut different divisors on the curve?

    Evaluation vectors on 3d+2 sampled points are proportional exactly
    when the cubics agree up to scale, so non-proportionality certifies
    distinct divisors.
    """
    p = curve.p
    M = 3 * curve.degree + 2
    pts = sample_points(curve, M, seed)
    a = np.array([_aff(T1, p).eval((q.x, q.y), p) for q in pts], dtype=np.int64)
    b = np.array([_aff(T2, p).eval((q.x, q.y), p) for q in pts], dtype=np.int64)
    return mat_rank(np.vstack([a, b]), p) == 2


def samples_text(sample: SurfaceImageSample) -> str:
    out = [
        "surface-sample",
        f"prime {sample.system.curve.p}",
        f"system-dim {sample.system.basis.shape[0]}",
    ]
    for tag, rows in (("generic", sample.generic), ("curve", sample.on_curve),
                      ("cubic", sample.on_cubic)):
        for (x, y), v in rows:
            out.append(f"point {tag} {x} {y} : {' '.join(map(str, v))}")
    out.append(f"contraction {int(sample.contraction_ok)}")
    out.append(f"hyperplane {int(sample.hyperplane_ok)}")
    out.append(f"span-dim {sample.span_dim}")
    out.append(f"matches-canonical {int(sample.matches_canonical)}")
    return "\n".join(out) + "\n"
