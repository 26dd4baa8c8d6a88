"""Dense exact linear algebra over a word-size prime field.

Matrices are numpy ``int64`` arrays with entries reduced into ``[0, p)``;
the modulus must satisfy ``3 < p < 2**31`` so that a single product of two
entries fits in an ``int64``.  Elimination is deterministic (first nonzero
entry in column order is the pivot), so every result is bit-reproducible
given the same inputs.

The hot loops are numba-compiled; ``modmul`` routes exact modular matrix
products through four float64 BLAS products on 16-bit limb splits, which is
exact because every partial sum stays below 2**53.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import Infeasible
from .rng import SplitMix64

DEFAULT_PRIME_LO = 1 << 28
DEFAULT_PRIME_HI = 1 << 31

# Deterministic Miller-Rabin bases, valid for all n < 3_215_031_751 > 2**31.
_MR_BASES = (2, 3, 5, 7)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sample_prime(seed: int, lo: int = DEFAULT_PRIME_LO, hi: int = DEFAULT_PRIME_HI) -> int:
    """Deterministic pseudorandom prime in [lo, hi)."""
    rng = SplitMix64(seed)
    while True:
        c = rng.randrange(lo, hi) | 1
        if c < hi and is_prime(c):
            return c


@dataclass(frozen=True)
class PrimeField:
    """Prime modulus for all exact computations; must exceed every total
    degree in play so that formal derivatives never degenerate."""

    p: int

    def __post_init__(self):
        if self.p <= 3:
            raise ValueError("modulus must exceed 3")
        if self.p >= (1 << 31):
            raise ValueError("modulus must be below 2**31")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def neg(self, a: int) -> int:
        return -a % self.p


# ---------------------------------------------------------------------------
# numba kernels


@njit(cache=True)
def _echelon(M, p, reduced):
    """In-place row echelon form with unit pivots.

    Returns (rank, pivot_columns).  With ``reduced`` the pivot columns are
    also cleared above the pivots (RREF).  Reduction uses a float64
    reciprocal with a two-sided fixup, exact for p < 2**31.
    """
    rows, cols = M.shape
    piv = np.empty(cols if cols < rows else rows, np.int64)
    u = 1.0 / p
    r = 0
    for c in range(cols):
        pr = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(c, cols):
                tmp = M[r, j]
                M[r, j] = M[pr, j]
                M[pr, j] = tmp
        a = M[r, c]
        inv = 1
        b = a
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * b) % p
            b = (b * b) % p
            e >>= 1
        for j in range(c, cols):
            x = M[r, j] * inv
            q = np.int64(np.float64(x) * u)
            x -= q * p
            if x < 0:
                x += p
            elif x >= p:
                x -= p
            M[r, j] = x
        lo = 0 if reduced else r + 1
        for i in range(lo, rows):
            if i == r:
                continue
            f = M[i, c]
            if f != 0:
                f = p - f
                for j in range(c, cols):
                    x = M[i, j] + f * M[r, j]
                    q = np.int64(np.float64(x) * u)
                    x -= q * p
                    if x < 0:
                        x += p
                    elif x >= p:
                        x -= p
                    M[i, j] = x
        piv[r] = c
        r += 1
        if r == rows:
            break
    return r, piv[:r]


@njit(cache=True)
def _kernel_backsolve(E, piv, rank, free, p):
    """Kernel basis from a forward echelon form with unit pivots.

    For each free column ``fc`` the basis vector has 1 at ``fc`` and the
    pivot coordinates are obtained by back substitution.  Rows of the
    result are kernel vectors.
    """
    cols = E.shape[1]
    nf = free.shape[0]
    K = np.zeros((nf, cols), np.int64)
    for t in range(nf):
        K[t, free[t]] = 1
    u = 1.0 / p
    for i in range(rank - 1, -1, -1):
        pc = piv[i]
        for t in range(nf):
            acc = 0
            for j in range(pc + 1, cols):
                v = K[t, j]
                if v != 0:
                    x = acc + E[i, j] * v
                    q = np.int64(np.float64(x) * u)
                    x -= q * p
                    if x < 0:
                        x += p
                    elif x >= p:
                        x -= p
                    acc = x
            if acc != 0:
                K[t, pc] = p - acc
    return K


# ---------------------------------------------------------------------------
# public operations


def _as_mat(M, p):
    A = np.ascontiguousarray(np.asarray(M, dtype=np.int64) % p)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return A


def echelon(M, p, reduced=False):
    """Row echelon form (a copy), rank and pivot columns."""
    A = _as_mat(M, p)
    if A.size == 0:
        return A, 0, np.empty(0, np.int64)
    rank, piv = _echelon(A, p, reduced)
    return A, int(rank), piv


def mat_rank(M, p) -> int:
    """Rank over F_p by deterministic Gaussian elimination."""
    return echelon(M, p)[1]


def mat_kernel(M, p):
    """Basis of the right null space of ``M`` over F_p.

    Returns an array of shape ``(dim, cols)`` whose rows v satisfy
    ``M @ v == 0`` exactly; ``dim == cols - rank``.  The basis is in the
    canonical reduced form determined by the pivot columns.
    """
    A = _as_mat(M, p)
    rows, cols = A.shape
    if cols == 0:
        return np.zeros((0, 0), np.int64)
    if rows == 0 or A.size == 0:
        return np.eye(cols, dtype=np.int64)
    rank, piv = _echelon(A, p, False)
    mask = np.ones(cols, dtype=bool)
    mask[piv] = False
    free = np.flatnonzero(mask).astype(np.int64)
    if free.size == 0:
        return np.zeros((0, cols), np.int64)
    return _kernel_backsolve(A, piv, rank, free, p)


def solve_affine(A, b, p):
    """Particular solution and kernel basis of ``A x = b`` over F_p.

    Raises ``Infeasible`` when the system has no solution.  The particular
    solution sets all free variables to zero; consistency ``A @ x0 == b``
    is re-verified exactly before returning.
    """
    A = _as_mat(A, p)
    bv = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if bv.shape[0] != A.shape[0]:
        raise ValueError("rhs length mismatch")
    rows, cols = A.shape
    aug = np.concatenate([A, bv[:, None]], axis=1)
    E, rank, piv = echelon(aug, p, reduced=True)
    if rank and piv[-1] == cols:
        raise Infeasible("inconsistent linear system")
    x0 = np.zeros(cols, np.int64)
    for i in range(rank):
        x0[piv[i]] = E[i, cols]
    ker = mat_kernel(A, p)
    if rows and not np.array_equal(modmul(A, x0[:, None], p).reshape(-1), bv):
        raise Infeasible("solution verification failed")
    return x0, ker


def solve_many(A, B, p):
    """Unique solutions X of ``A X = B`` for many right-hand sides.

    Raises ``NonUnique`` if the kernel of ``A`` is nontrivial and
    ``Infeasible`` if any column is inconsistent.
    """
    from .errors import NonUnique

    A = _as_mat(A, p)
    B = _as_mat(B, p)
    rows, cols = A.shape
    k = B.shape[1]
    aug = np.concatenate([A, B], axis=1)
    E, rank, piv = echelon(aug, p, reduced=True)
    apiv = piv[piv < cols]
    if apiv.shape[0] < rank:
        raise Infeasible("inconsistent linear system")
    if apiv.shape[0] < cols:
        raise NonUnique("solution space is positive dimensional")
    X = np.zeros((cols, k), np.int64)
    X[apiv] = E[:rank, cols:]
    return X


def row_space(M, p):
    """Basis of the row space in reduced echelon form."""
    E, rank, _ = echelon(M, p, reduced=True)
    return E[:rank]


class SpanReducer:
    """Reduce vectors modulo a fixed row space, exactly.

    Precomputes the RREF of the span; ``residue`` subtracts the unique
    combination matching the pivot coordinates, so the result is zero
    exactly when the vector lies in the span.
    """

    def __init__(self, V, p):
        self.p = p
        E, rank, piv = echelon(V, p, reduced=True)
        self.basis = E[:rank]
        self.piv = piv

    @property
    def dim(self):
        return self.basis.shape[0]

    def residue(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.int64) % self.p)
        if self.dim == 0:
            return X
        coef = X[:, self.piv]
        return (X - modmul(coef, self.basis, self.p)) % self.p

    def contains(self, X) -> bool:
        return not np.any(self.residue(X))


_CHUNK = 1 << 24  # operand elements per slab in modmul


def modmul(A, B, p):
    """Exact ``(A @ B) % p`` via 16-bit limb splitting on float64 BLAS.

    Exact for ``p < 2**31`` and inner dimension up to 2**21: partial sums
    are bounded by k * 2**32 <= 2**53.
    """
    A = _as_mat(A, p)
    B = _as_mat(B, p)
    n, k = A.shape
    k2, m = B.shape
    if k != k2:
        raise ValueError("shape mismatch")
    if k > (1 << 21):
        raise ValueError("inner dimension too large for exact split product")
    if n == 0 or m == 0 or k == 0:
        return np.zeros((n, m), np.int64)
    rows_per = max(1, _CHUNK // max(k, 1))
    out = np.empty((n, m), np.int64)
    bh = (B >> 16).astype(np.float64)
    bl = (B & 0xFFFF).astype(np.float64)
    two32 = (1 << 32) % p
    two16 = (1 << 16) % p
    for r0 in range(0, n, rows_per):
        r1 = min(n, r0 + rows_per)
        ah = (A[r0:r1] >> 16).astype(np.float64)
        al = (A[r0:r1] & 0xFFFF).astype(np.float64)
        hh = (ah @ bh).astype(np.int64) % p
        mid = ((ah @ bl) + (al @ bh)).astype(np.int64) % p
        ll = (al @ bl).astype(np.int64) % p
        acc = (hh * two32) % p
        acc = (acc + mid * two16) % p
        out[r0:r1] = (acc + ll) % p
    return out


def kernel_intersection(nvars, blocks, p):
    """Common kernel of a sequence of constraint blocks.

    ``blocks`` yields matrices with ``nvars`` columns; the intersection of
    their kernels is computed incrementally, shrinking the working basis as
    constraints accumulate.  Returns rows-as-vectors, shape (dim, nvars).
    Exact: every step is an exact kernel over F_p.
    """
    basis = None
    for C in blocks:
        C = _as_mat(C, p)
        if C.shape[0] == 0:
            continue
        if basis is None:
            basis = mat_kernel(C, p)
        else:
            if basis.shape[0] == 0:
                break
            K = mat_kernel(modmul(C, basis.T, p), p)
            basis = modmul(K, basis, p)
    if basis is None:
        basis = np.eye(nvars, dtype=np.int64)
    return basis
