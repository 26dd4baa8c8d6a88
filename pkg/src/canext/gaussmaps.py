"""Multiplication and Gaussian maps on powers of the canonical bundle.

Ranks are computed by exact evaluation at sampled points.  With M at least
deg + 1 points, a nonzero section of a line bundle of degree deg cannot
vanish at all of them, so evaluation is injective on the relevant section
space and the computed rank over F_p is the true rank of the specialized
map, not a bound.  Specialization from characteristic zero can only drop
the rank, so a computed corank can only overshoot the true one; agreement
across two independent primes is the exactness hedge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import PlaneCurve, eval_table, genus
from .errors import DimensionMismatch
from .modp import mat_kernel, mat_rank, modmul


@dataclass(frozen=True)
class MultReport:
    """Rank data for H0(w^k) (x) H0(w) -> H0(w^(k+1))."""

    k: int
    dim_left: int
    dim_right: int
    dim_target: int
    rank: int
    corank: int
    prime: int
    seed: int
    points: int
    kernel: np.ndarray  # rows span R(w^k, w) in the (left x right) basis
    left_pairs: tuple  # indices defining the w^k product basis


@dataclass(frozen=True)
class GaussReport:
    k: int
    dim_source: int
    dim_target: int
    rank: int
    corank: int
    prime: int
    seed: int
    points: int


def _power_basis(tab, k: int):
    """Value/derivative rows for a product basis of H0(w^k).

    k=1 uses the adjoint sections themselves; k=2 selects a deterministic
    spanning subset of the pairwise products by pivoted elimination.
    Returns (pairs, values, derivs).
    """
    g, M = tab.vals.shape
    p = tab.curve.p
    if k == 1:
        pairs = tuple((i,) for i in range(g))
        return pairs, tab.vals.copy(), tab.derivs.copy()
    if k != 2:
        raise ValueError("only k in {1, 2} is supported")
    idx = [(a, b) for a in range(g) for b in range(a, g)]
    V = np.empty((len(idx), M), np.int64)
    D = np.empty((len(idx), M), np.int64)
    for r, (a, b) in enumerate(idx):
        V[r] = tab.vals[a] * tab.vals[b] % p
        D[r] = (tab.vals[a] * tab.derivs[b] + tab.vals[b] * tab.derivs[a]) % p
    # deterministic spanning subset: pivot columns of the value matrix
    _, _, piv = _pivot_rows(V, p)
    pairs = tuple(idx[i] for i in piv)
    return pairs, V[piv], D[piv]


def _pivot_rows(V, p):
    from .modp import echelon

    E, rank, piv = echelon(V.T, p)
    return E, rank, piv


def default_points(g: int, k: int) -> int:
    """Evaluation count making rank computation exact: one more point than
    the degree of the target bundle w^(k+1)."""
    return (2 * k + 2) * (g - 1) + 1


def mult_rank(curve: PlaneCurve, k: int = 1, seed: int = 0, M: int | None = None) -> MultReport:
    """Rank and corank of the multiplication map on H0(w^k) (x) H0(w).

    Sections of w^k are realized as k-fold products of adjoint
    representatives (twist rule (A_1...A_k)/F_y^k).  The target dimension
    is h0(w^(k+1)) = (2k+1)(g-1) for k >= 1 (3g-3 when k=1).
    """
    g = genus(curve)
    if g < 2:
        raise DimensionMismatch("multiplication map needs genus >= 2")
    p = curve.p
    if M is None:
        M = default_points(g, k)
    if M < default_points(g, k):
        raise ValueError("too few points for an exact rank")
    tab = eval_table(curve, M, seed)
    pairs, V, _ = _power_basis(tab, k)
    nl = V.shape[0]
    rows = np.empty((nl * g, M), np.int64)
    for a in range(nl):
        rows[a * g:(a + 1) * g] = V[a] * tab.vals % p
    rank = mat_rank(rows, p)
    target = (2 * k + 1) * (g - 1)
    # R(w^k, w): left null space of the evaluation rows
    kernel = mat_kernel(rows.T, p)
    return MultReport(k, nl, g, target, rank, target - rank, p, seed, M, kernel, pairs)


def wahl_matrix(curve: PlaneCurve, M: int | None = None, seed: int = 0) -> np.ndarray:
    """Evaluation matrix of the Wahl map on the wedge basis i < j.

    Row (i, j), column q holds S_i S_j' - S_j S_i' at the q-th point; with
    M >= 6g-5 points the row space has the exact rank of the map.
    """
    g = genus(curve)
    if M is None:
        M = 6 * g - 5
    if M < 6 * g - 5:
        raise ValueError("need at least 6g-5 points")
    tab = eval_table(curve, M, seed)
    V, D = tab.vals, tab.derivs
    p = curve.p
    out = np.empty((g * (g - 1) // 2, M), np.int64)
    r = 0
    for i in range(g):
        for j in range(i + 1, g):
            out[r] = (V[i] * D[j] - V[j] * D[i]) % p
            r += 1
    return out


def wahl_corank(curve: PlaneCurve, seed: int = 0, M: int | None = None) -> GaussReport:
    """Corank of the Wahl map against the full target h0(w^3) = 5g-5."""
    g = genus(curve)
    W = wahl_matrix(curve, M, seed)
    p = curve.p
    rank = mat_rank(W, p)
    target = 5 * g - 5
    return GaussReport(1, W.shape[0], target, rank, target - rank, p, seed, W.shape[1])


def gauss_corank(curve: PlaneCurve, k: int = 1, seed: int = 0, M: int | None = None) -> GaussReport:
    """Corank of the Gaussian map on R(w^k, w).

    The Gaussian kills the symmetric part of the kernel, so for k=1 this
    reproduces the Wahl corank.  The image is evaluated at enough points
    to identify H0(w^(k+2)) exactly; target dim (2k+3)(g-1).
    """
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    g = genus(curve)
    p = curve.p
    M2 = max((2 * k + 4) * (g - 1) + 1, M or 0)
    rep = mult_rank(curve, k, seed=seed, M=M2)
    tab = eval_table(curve, M2, seed)
    pairs, V, D = _power_basis(tab, k)
    nl = V.shape[0]
    G = np.empty((nl * g, M2), np.int64)
    for a in range(nl):
        G[a * g:(a + 1) * g] = (V[a] * tab.derivs - tab.vals * D[a]) % p
    img = modmul(rep.kernel, G, p)
    rank = mat_rank(img, p)
    target = (2 * k + 3) * (g - 1)
    return GaussReport(k, rep.kernel.shape[0], target, rank, target - rank, p, seed, M2)
