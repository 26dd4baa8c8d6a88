import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from canext.errors import Infeasible, NonUnique
from canext.modp import (
    PrimeField,
    SpanReducer,
    is_prime,
    kernel_intersection,
    mat_kernel,
    mat_rank,
    modmul,
    sample_prime,
    solve_affine,
    solve_many,
)
from canext.poly import Poly, mult_index, monomials, nmono, poly_of_vector, vector_of
from canext import univar
from canext.rng import SplitMix64

P = sample_prime(20260810)

primes = st.sampled_from([5, 7, 97, 65537, P])


def rand_mat(rng, rows, cols, p):
    M = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            M[i, j] = rng.randbelow(p)
    return M


# ---------------------------------------------------------------------------
# matrix ranks and kernels


def test_rank_identity():
    assert mat_rank(np.eye(3, dtype=np.int64), 7) == 3


def test_rank_zero_matrix():
    assert mat_rank(np.zeros((4, 2), dtype=np.int64), 7) == 0
    assert mat_rank(np.zeros((0, 5), dtype=np.int64), 7) == 0


def test_rank_proportional_rows_mod7():
    assert mat_rank(np.array([[1, 2], [2, 4]]), 7) == 1


def test_kernel_identity_empty():
    assert mat_kernel(np.eye(3, dtype=np.int64), 7).shape == (0, 3)


def test_kernel_zero_matrix_full():
    K = mat_kernel(np.zeros((2, 3), dtype=np.int64), 7)
    assert K.shape == (3, 3) and mat_rank(K, 7) == 3


def test_kernel_single_row_f5():
    M = np.array([[1, 1, 0]])
    K = mat_kernel(M, 5)
    assert K.shape == (2, 3)
    assert not np.any(modmul(M, K.T, 5))


def test_solve_identity():
    x0, ker = solve_affine(np.eye(3, dtype=np.int64), [4, 5, 6], 7)
    assert list(x0) == [4, 5, 6] and ker.shape[0] == 0


def test_solve_underdetermined():
    x0, ker = solve_affine(np.array([[1, 1]]), [3], 7)
    assert (x0[0] + x0[1]) % 7 == 3
    assert ker.shape == (1, 2)


def test_solve_infeasible():
    with pytest.raises(Infeasible):
        solve_affine(np.array([[1], [1]]), [1, 2], 7)


def test_solve_many_unique_and_nonunique():
    A = np.array([[1, 0], [0, 1], [1, 1]])
    B = np.array([[1, 2], [3, 4], [4, 6]])
    X = solve_many(A, B, 7)
    assert np.array_equal(modmul(A, X, 7), B % 7)
    with pytest.raises(NonUnique):
        solve_many(np.array([[1, 1]]), np.array([[0]]), 7)
    with pytest.raises(Infeasible):
        solve_many(np.array([[1], [1]]), np.array([[1], [2]]), 7)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 6),
    st.integers(0, 6),
    primes,
    st.integers(0, 2**32 - 1),
)
def test_rank_nullity(rows, cols, p, seed):
    rng = SplitMix64(seed)
    M = rand_mat(rng, rows, cols, p)
    assert mat_rank(M, p) + mat_kernel(M, p).shape[0] == cols
    K = mat_kernel(M, p)
    if rows and cols and K.shape[0]:
        assert not np.any(modmul(M, K.T, p))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), primes, st.integers(0, 2**32 - 1))
def test_solve_consistency(rows, cols, p, seed):
    rng = SplitMix64(seed)
    A = rand_mat(rng, rows, cols, p)
    x = np.array([rng.randbelow(p) for _ in range(cols)], dtype=np.int64)
    b = modmul(A, x[:, None], p).reshape(-1)
    x0, ker = solve_affine(A, b, p)
    assert np.array_equal(modmul(A, x0[:, None], p).reshape(-1), b)
    assert ker.shape[0] == cols - mat_rank(A, p)


def test_modmul_matches_object_arithmetic():
    rng = SplitMix64(7)
    A = rand_mat(rng, 13, 17, P)
    B = rand_mat(rng, 17, 11, P)
    ref = (A.astype(object) @ B.astype(object)) % P
    assert np.array_equal(modmul(A, B, P).astype(object), ref)


def test_span_reducer_membership():
    rng = SplitMix64(3)
    V = rand_mat(rng, 4, 9, P)
    red = SpanReducer(V, P)
    combo = modmul(rand_mat(rng, 2, 4, P), V, P)
    assert red.contains(combo)
    out = rand_mat(rng, 1, 9, P)
    # a random vector is almost surely outside a 4-dim span of F_p^9
    assert not red.contains(out)


def test_kernel_intersection_agrees_with_stacked():
    rng = SplitMix64(11)
    blocks = [rand_mat(rng, 3, 8, P), rand_mat(rng, 2, 8, P), rand_mat(rng, 4, 8, P)]
    inc = kernel_intersection(8, iter(blocks), P)
    stacked = mat_kernel(np.vstack(blocks), P)
    assert inc.shape[0] == stacked.shape[0]
    for C in blocks:
        if inc.shape[0]:
            assert not np.any(modmul(C, inc.T, P))


def test_prime_sampler():
    p = sample_prime(0)
    assert (1 << 28) <= p < (1 << 31) and is_prime(p)
    assert sample_prime(0) == p
    assert sample_prime(1) != p
    with pytest.raises(ValueError):
        PrimeField(2)
    with pytest.raises(ValueError):
        PrimeField(15)


# ---------------------------------------------------------------------------
# polynomials


def test_partial_basic():
    f = Poly.from_terms(2, [((2, 1), 1)], 7)  # x^2 y
    df = f.partial(0, 7)
    assert df == Poly.from_terms(2, [((1, 1), 2)], 7)


def test_partial_constant():
    f = Poly.from_terms(2, [((0, 0), 3)], 7)
    assert f.partial(0, 7).is_zero()


def test_partial_characteristic_kills_exponent():
    f = Poly.from_terms(1, [((7,), 1)], 7)  # x^7 over F_7
    assert f.partial(0, 7).is_zero()


def test_eval_basic():
    f = Poly.from_terms(2, [((2, 0), 1), ((0, 2), 1)], 7)
    assert f.eval((2, 2), 7) == 1


def test_eval_zero_tuple_gives_constant_term():
    f = Poly.from_terms(2, [((0, 0), 5), ((1, 1), 3)], 11)
    assert f.eval((0, 0), 11) == 5


@settings(max_examples=40, deadline=None)
@given(primes, st.integers(0, 2**32 - 1))
def test_eval_homogeneity(p, seed):
    rng = SplitMix64(seed)
    deg = 1 + rng.randbelow(3)
    f = Poly.from_terms(
        3,
        [(e, rng.randbelow(p)) for e in monomials(3, deg)],
        p,
    )
    pt = tuple(rng.randbelow(p) for _ in range(3))
    lam = 1 + rng.randbelow(p - 1)
    scaled = tuple(x * lam % p for x in pt)
    assert f.eval(scaled, p) == pow(lam, deg, p) * f.eval(pt, p) % p


def rand_poly(rng, nvars, maxdeg, p, nterms=6):
    items = []
    for _ in range(nterms):
        e = tuple(rng.randbelow(maxdeg + 1) for _ in range(nvars))
        items.append((e, rng.randbelow(p)))
    return Poly.from_terms(nvars, items, p)


@settings(max_examples=40, deadline=None)
@given(primes, st.integers(0, 2**32 - 1))
def test_leibniz_rule(p, seed):
    rng = SplitMix64(seed)
    f = rand_poly(rng, 2, 3, p)
    g = rand_poly(rng, 2, 3, p)
    i = rng.randbelow(2)
    lhs = f.mul(g, p).partial(i, p)
    rhs = f.mul(g.partial(i, p), p).add(g.mul(f.partial(i, p), p), p)
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_euler_identity(deg, seed):
    # sum_i x_i df/dx_i = deg * f for homogeneous f, valid since deg < P
    rng = SplitMix64(seed)
    f = Poly.from_terms(3, [(e, rng.randbelow(P)) for e in monomials(3, deg)], P)
    acc = Poly.zero(3)
    for i in range(3):
        xi = Poly.monomial(3, tuple(1 if j == i else 0 for j in range(3)), 1, P)
        acc = acc.add(xi.mul(f.partial(i, P), P), P)
    assert acc == f.scale(deg, P)


def test_vector_roundtrip_and_mult_index():
    f = Poly.from_terms(3, [((2, 0, 0), 4), ((1, 1, 0), 5)], P)
    v = vector_of(f, 2, P)
    assert poly_of_vector(3, 2, v, P) == f
    tbl = mult_index(3, 1, 1)
    assert tbl.shape == (3, 3)
    mons1 = monomials(3, 1)
    mons2 = monomials(3, 2)
    for i in range(3):
        for j in range(3):
            prod = tuple(a + b for a, b in zip(mons1[i], mons1[j]))
            assert mons2[tbl[i, j]] == prod
    assert nmono(15, 2) == 120


# ---------------------------------------------------------------------------
# univariate helpers


def test_univar_roots_and_multiplicity():
    p = 10007
    rng = SplitMix64(5)
    # (x - 3)^2 (x - 5) (x^2 + 1); 10007 = 3 mod 4 so x^2+1 is irreducible
    c = [1]
    for r in (3, 3, 5):
        c = univar.mul(c, [(-r) % p, 1], p)
    c = univar.mul(c, [1, 0, 1], p)
    assert univar.roots(c, p, rng) == [3, 5]
    assert univar.root_multiplicity(c, 3, p) == 2
    assert univar.root_multiplicity(c, 5, p) == 1
    assert not univar.is_squarefree(c, p)


def test_univar_resultant_shared_root():
    p = 101
    a = univar.mul([(-4) % p, 1], [(-7) % p, 1], p)
    b = [(-4) % p, 1]
    assert univar.resultant(a, b, p) == 0
    c = [(-5) % p, 1]
    # res((x-4)(x-7), x-5) = (5-4)(5-7) = -2
    assert univar.resultant(a, c, p) == (-2) % p


def test_univar_interpolate():
    p = 97
    xs = [1, 2, 3, 4]
    target = [5, 0, 3, 1]  # 5 + 3x^2 + x^3
    ys = [univar.eval_poly(target, x, p) for x in xs]
    assert univar.interpolate(xs, ys, p) == target
