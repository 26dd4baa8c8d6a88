"""Surface and universal extensions of a canonical curve from ribbon data.

Given the quadric presentation (f, r), a ribbon direction is a tuple f_v of
linear forms satisfying the degree -1 Hom conditions.  The lifting
procedure solves two exact linear systems:

    f_v . r + f . r_v = 0      (first-order lift of the relations)
    f_v . r_v + h_v . r = 0    (flatness to second order)

and the surface extension in P^g is cut out by f + t f_v + t^2 h_v.  Both
solves must be uniquely solvable; non-uniqueness of the second system is
exactly a nonzero space of constant tuples (twist -2 sections), which the
Clifford gate excludes.  The whole family over the ribbon space is
assembled by polarization, since h_v depends quadratically on v.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canonical import CanonicalPresentation, normal_sections, trivial_normal_fields
from .curves import declared_cliff_gt2
from .errors import CliffGate, Infeasible, NonUnique
from .modp import echelon, modmul, solve_many
from .poly import monomial_index, monomials, mult_index, nmono


@dataclass(frozen=True)
class RibbonVector:
    """Length-m tuple of linear forms satisfying the Hom conditions,
    reduced modulo the trivial-field subspace when ``normalized``."""

    fv: np.ndarray  # (m, g)
    normalized: bool = False


@dataclass(frozen=True)
class ExtensionData:
    fv: np.ndarray  # (m, g)
    rv: np.ndarray  # (m, m1) constants
    hv: np.ndarray  # (m,) constants


@dataclass(frozen=True, eq=False)
class SurfaceExtension:
    """m quadrics in g+1 variables (x_0..x_{g-1}, t): f + t f_v + t^2 h_v."""

    pres: CanonicalPresentation
    data: ExtensionData
    residual3: np.ndarray  # h_v . r_v per syzygy column; reported, not zero

    @property
    def nvars(self) -> int:
        return self.pres.g + 1


@dataclass(frozen=True, eq=False)
class UniversalExtension:
    """m quadrics in g + r + 1 variables cutting the universal extension:
    f + sum_j t_j f_vj + sum_{j<=k} t_j t_k B_jk, with B_jj = h_vj."""

    pres: CanonicalPresentation
    basis: tuple[RibbonVector, ...]
    B: np.ndarray  # (r1, r1, m), symmetric in the first two indices

    @property
    def nvars(self) -> int:
        return self.pres.g + len(self.basis)


def _cliff_gate(pres: CanonicalPresentation):
    curve = pres.curve
    if not declared_cliff_gt2(curve):
        raise CliffGate(
            f"declared gonality {curve.gonality!r} does not certify Clifford index > 2"
        )
    if pres.m4 != 0:
        raise CliffGate("essential degree-4 syzygies present")
    if not pres.quad_gen_deg3:
        raise CliffGate("ideal is not quadratically generated in degree 3")


def ribbon_basis(pres: CanonicalPresentation) -> list[RibbonVector]:
    """Deterministic basis of a complement of the trivial normal fields
    inside the twist -1 section space; its size is the Wahl corank."""
    _cliff_gate(pres)
    p = pres.prime
    triv = trivial_normal_fields(pres)  # (g, m, g)
    space = normal_sections(pres, 1)
    g, m = pres.g, pres.m
    T = triv.reshape(g, m * g)
    # reduce the solution basis against the trivial fields: rows that add a
    # new pivot after the trivial block span the complement
    E, rank_t, piv = echelon(T, p, reduced=True)
    out = []
    for v in space.basis.reshape(space.dim, m * g):
        w = v.copy()
        for i in range(rank_t):
            c = w[piv[i]]
            if c:
                w = (w - c * E[i]) % p
        out.append(w)
    W = np.array(out, dtype=np.int64)
    E2, rank2, piv2 = echelon(W, p, reduced=True)
    vecs = [RibbonVector(E2[i].reshape(m, g), normalized=True) for i in range(rank2)]
    assert rank2 == space.dim - g
    return vecs


def lift_relations(pres: CanonicalPresentation, fv: np.ndarray) -> np.ndarray:
    """The unique constant matrix r_v with f_v . r + f . r_v = 0.

    Column by column this asks for the quadric f_v . r_c in the span of f;
    minimality of the generators makes the solution unique.
    """
    p = pres.prime
    m, m1 = pres.m, pres.m1
    if m1 == 0:
        return np.zeros((m, 0), np.int64)
    rhs = (-_fv_dot_r(pres, fv)) % p  # (m1, n2)
    try:
        X = solve_many(pres.quadrics.T, rhs.T, p)
    except Infeasible as exc:
        raise Infeasible("relation lift failed: tuple violates the Hom conditions") from exc
    except NonUnique as exc:
        raise NonUnique("quadric generators are not minimal") from exc
    return X  # (m, m1)


def _fv_dot_r(pres, fv):
    """S_2 coefficient vectors of sum_j f_vj r_jc, one row per column."""
    g, m, p = pres.g, pres.m, pres.prime
    n2 = nmono(g, 2)
    T11 = mult_index(g, 1, 1)
    B = np.zeros((m, g, n2), np.int64)
    for a in range(g):
        B[:, a, T11[a]] = fv
    return modmul(pres.syz3.reshape(pres.m1, m * g), B.reshape(m * g, n2), p)


def _second_order_matrix(pres):
    """Constraint matrix A[(c,l), s] = coeff of x_l in r_sc, cached."""
    if "A2nd" not in pres._cache:
        m = pres.m
        A = np.ascontiguousarray(pres.syz3.transpose(0, 2, 1)).reshape(-1, m)
        pres._cache["A2nd"] = A
    return pres._cache["A2nd"]


def second_order(pres: CanonicalPresentation, fv: np.ndarray, rv: np.ndarray) -> np.ndarray:
    """The unique constant tuple h_v with f_v . r_v + h_v . r = 0.

    Infeasibility contradicts the vanishing of the obstruction space and
    non-uniqueness a nonzero twist -2 section space; both are surfaced,
    never repaired.
    """
    p = pres.prime
    m, m1, g = pres.m, pres.m1, pres.g
    if m1 == 0:
        raise NonUnique("no linear syzygies: second-order lift is unconstrained")
    L = modmul(rv.T, fv, p)  # (m1, g): coefficients of f_v . r_v per column
    rhs = (-L) % p
    A = _second_order_matrix(pres)
    try:
        h = solve_many(A, rhs.reshape(-1)[:, None], p)
    except Infeasible as exc:
        raise Infeasible("no flat second-order lift exists") from exc
    except NonUnique as exc:
        raise NonUnique("twist -2 sections present: lift not unique") from exc
    return h.reshape(m)


def extension_data(pres: CanonicalPresentation, fv: np.ndarray) -> ExtensionData:
    rv = lift_relations(pres, fv)
    hv = second_order(pres, fv, rv)
    return ExtensionData(fv % pres.prime, rv, hv)


def verify_extension(pres: CanonicalPresentation, data: ExtensionData):
    """Re-check both certificate identities exactly; raise on failure."""
    p = pres.prime
    first = (_fv_dot_r(pres, data.fv) + modmul(data.rv.T, pres.quadrics, p)) % p
    if np.any(first):
        raise Infeasible("first-order identity f_v r + f r_v != 0")
    second = (modmul(data.rv.T, data.fv, p) + modmul(pres.syz3.reshape(pres.m1, -1),
              _embed_constants(pres, data.hv), p)) % p
    if np.any(second):
        raise Infeasible("second-order identity f_v r_v + h_v r != 0")


def _embed_constants(pres, hv):
    """(m*g, g) matrix so that syz3_flat @ out = coefficients of h . r."""
    m, g = pres.m, pres.g
    out = np.zeros((m * g, g), np.int64)
    for l in range(g):
        out[l::g, l] = hv
    return out


def surface_equations(pres: CanonicalPresentation, data: ExtensionData) -> SurfaceExtension:
    """Quadrics of the surface extension; the t=0 slice recovers f and the
    product expansion leaves only the t^3 residue h_v . r_v."""
    verify_extension(pres, data)
    p = pres.prime
    residual3 = modmul(data.hv[None, :], data.rv, p).reshape(-1)
    return SurfaceExtension(pres, data, residual3)


def universal_equations(pres: CanonicalPresentation, basis: list[RibbonVector]) -> UniversalExtension:
    """Assemble the family over all ribbon directions by polarization.

    B_jk solves the second-order system for the symmetrized pair; the
    diagonal reproduces h_vj and every axis specialization reproduces the
    corresponding surface extension.
    """
    p = pres.prime
    m, m1 = pres.m, pres.m1
    r1 = len(basis)
    lifts = [lift_relations(pres, rb.fv) for rb in basis]
    A = _second_order_matrix(pres)
    inv2 = pow(2, p - 2, p)
    rhs = np.empty((m1 * pres.g, r1 * (r1 + 1) // 2), np.int64)
    pairs = []
    col = 0
    for j in range(r1):
        for k in range(j, r1):
            mixed = (modmul(lifts[k].T, basis[j].fv, p) + modmul(lifts[j].T, basis[k].fv, p)) % p
            rhs[:, col] = (-(mixed * inv2 % p)).reshape(-1) % p
            pairs.append((j, k))
            col += 1
    try:
        H = solve_many(A, rhs, p)
    except (Infeasible, NonUnique) as exc:
        raise type(exc)(f"polarization solve failed: {exc}") from exc
    B = np.zeros((r1, r1, m), np.int64)
    for idx, (j, k) in enumerate(pairs):
        B[j, k] = H[:, idx]
        B[k, j] = H[:, idx]
    return UniversalExtension(pres, tuple(basis), B)


def specialize(ext: UniversalExtension, t: np.ndarray):
    """Restrict the universal equations to a line t = lambda * direction.

    Returns (fv_eff, hv_eff): the induced surface-extension coefficients
    f + s fv_eff + s^2 hv_eff along that line.  The quadratic part is the
    symmetric bilinear double sum sum_{j,k} t_j t_k B_jk, so off-diagonal
    monomials carry the factor 2 automatically.
    """
    p = ext.pres.prime
    t = np.asarray(t, dtype=np.int64) % p
    fv = np.zeros_like(ext.basis[0].fv)
    for j, rb in enumerate(ext.basis):
        fv = (fv + t[j] * rb.fv) % p
    hv = np.zeros(ext.pres.m, np.int64)
    r1 = len(ext.basis)
    for j in range(r1):
        for k in range(r1):
            hv = (hv + t[j] * t[k] % p * ext.B[j, k]) % p
    return fv, hv


# ---------------------------------------------------------------------------
# export


def _surface_monomials(g):
    return monomials(g + 1, 2)


def extension_text(obj) -> str:
    """Quadric coefficient rows in the degree-2 monomial basis of
    (x_0..x_{g-1}, t_1..t_r); stable ordering for external verification."""
    pres = obj.pres
    g, m, p = pres.g, pres.m, pres.prime
    if isinstance(obj, SurfaceExtension):
        nt = 1
        fvs = [obj.data.fv]
        quad_tt = {(0, 0): obj.data.hv}
    else:
        nt = len(obj.basis)
        fvs = [rb.fv for rb in obj.basis]
        quad_tt = {(j, k): obj.B[j, k] for j in range(nt) for k in range(j, nt)}
    nv = g + nt
    names = [f"x{i}" for i in range(g)] + [f"t{j+1}" for j in range(nt)]
    idx = monomial_index(nv, 2)
    rows = np.zeros((m, len(idx)), np.int64)
    mons_g = monomials(g, 2)
    for q, e in enumerate(mons_g):
        rows[:, idx[e + (0,) * nt]] = pres.quadrics[:, q]
    for j, fv in enumerate(fvs):
        for i in range(g):
            e = [0] * nv
            e[i] = 1
            e[g + j] = 1
            rows[:, idx[tuple(e)]] = fv[:, i]
    for (j, k), hv in quad_tt.items():
        e = [0] * nv
        e[g + j] += 1
        e[g + k] += 1
        # off-diagonal monomial t_j t_k collects both ordered terms of the
        # symmetric double sum
        rows[:, idx[tuple(e)]] = hv if j == k else 2 * hv % p
    out = [
        "extension-equations",
        f"prime {p}",
        f"seed {pres.seed}",
        f"variables {' '.join(names)}",
        f"m {m}",
        "monomial-order deg2 descending-lex",
    ]
    for jq in range(m):
        out.append("quadric %d : %s" % (jq, " ".join(map(str, rows[jq]))))
    return "\n".join(out) + "\n"
