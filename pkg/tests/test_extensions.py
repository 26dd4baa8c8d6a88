import numpy as np
import pytest

from conftest import P, curve, presentation

from canext.canonical import trivial_normal_fields
from canext.errors import CliffGate, NonUnique
from canext.extensions import (
    ExtensionData,
    extension_data,
    extension_text,
    lift_relations,
    ribbon_basis,
    second_order,
    specialize,
    surface_equations,
    universal_equations,
    verify_extension,
)
from canext.modp import mat_rank, modmul
from canext.poly import Poly, monomial_index, poly_of_vector
from canext.rng import SplitMix64


@pytest.fixture(scope="module")
def septic(septic_pres):
    pres = septic_pres
    basis = ribbon_basis(pres)
    return pres, basis


def test_cliff_gate_refuses_low_gonality():
    for name in ("trigonal-6-3", "tetragonal-6-node", "ci-6-5"):
        with pytest.raises(CliffGate):
            ribbon_basis(presentation(name))


def test_ribbon_basis_size_and_independence(septic):
    pres, basis = septic
    assert len(basis) == 10
    triv = trivial_normal_fields(pres)
    stack = np.vstack([triv.reshape(15, -1)] + [rb.fv.reshape(1, -1) for rb in basis])
    assert mat_rank(stack, P) == 25
    assert all(rb.normalized for rb in basis)


def test_lift_of_zero_is_zero(septic):
    pres, _ = septic
    rv = lift_relations(pres, np.zeros((pres.m, pres.g), np.int64))
    assert rv.shape == (78, 560) and not rv.any()


def test_lift_of_trivial_field_is_column_derivative(septic):
    # differentiate f . r = 0: the unique lift of df/dx_i is dr/dx_i
    pres, _ = septic
    triv = trivial_normal_fields(pres)
    for i in (0, 9):
        rv = lift_relations(pres, triv[i])
        assert np.array_equal(rv, pres.syz3[:, :, i].T % P)


def test_lift_is_linear(septic):
    pres, basis = septic
    rng = SplitMix64(11)
    a, b = rng.randbelow(P), rng.randbelow(P)
    u, v = basis[2].fv, basis[6].fv
    ru, rvv = lift_relations(pres, u), lift_relations(pres, v)
    comb = lift_relations(pres, (a * u + b * v) % P)
    assert np.array_equal(comb, (a * ru + b * rvv) % P)


def test_second_order_nonunique_on_complete_intersection(ci_pres):
    with pytest.raises(NonUnique):
        second_order(ci_pres, np.zeros((3, 5), np.int64), np.zeros((3, 0), np.int64))


def test_certificates_and_t0_slice(septic):
    pres, basis = septic
    rng = SplitMix64(23)
    triv = trivial_normal_fields(pres)
    fv = (basis[1].fv + 5 * basis[4].fv + 3 * triv[2]) % P
    data = extension_data(pres, fv)
    verify_extension(pres, data)
    surf = surface_equations(pres, data)
    text = extension_text(surf)
    lines = text.splitlines()
    assert lines[0] == "extension-equations"
    assert f"variables {' '.join(f'x{i}' for i in range(15))} t1" in text
    # the t = 0 slice recovers the quadrics of the curve: the pure-x part
    idx = monomial_index(16, 2)
    rows = [l for l in lines if l.startswith("quadric ")]
    assert len(rows) == 78
    first = np.array(rows[0].split(" : ")[1].split(), dtype=np.int64)
    from canext.poly import monomials

    for q, e in enumerate(monomials(15, 2)):
        assert first[idx[e + (0,)]] == pres.quadrics[0, q]
    # t-linear part equals f_v
    for i in range(15):
        e = [0] * 16
        e[i] = 1
        e[15] = 1
        assert first[idx[tuple(e)]] == data.fv[0, i]


def test_expansion_certificate_by_polynomial_arithmetic(septic):
    # (f + t f_v + t^2 h_v) . (r + t r_v) = t^3 h_v r_v, expanded with
    # sparse polynomials in the 16-variable ring for a few columns
    pres, basis = septic
    g, m = pres.g, pres.m
    triv = trivial_normal_fields(pres)
    fv = (2 * basis[0].fv + triv[1]) % P
    data = extension_data(pres, fv)
    t_exp = tuple([0] * g + [1])

    def lift_poly(vec, deg):
        q = poly_of_vector(g, deg, vec, P)
        return Poly(g + 1, {e + (0,): c for e, c in q.terms.items()})

    tpoly = Poly(g + 1, {t_exp: 1})
    for c in (3, 77, 401):
        acc = Poly.zero(g + 1)
        for j in range(m):
            fj = lift_poly(pres.quadrics[j], 2)
            fj = fj.add(tpoly.mul(lift_poly(data.fv[j], 1), P), P)
            fj = fj.add(tpoly.mul(tpoly, P).scale(int(data.hv[j]), P), P)
            rj = lift_poly(pres.syz3[c, j], 1)
            rj = rj.add(tpoly.scale(int(data.rv[j, c]), P), P)
            acc = acc.add(fj.mul(rj, P), P)
        residual = int(modmul(data.hv[None, :], data.rv[:, c:c + 1], P)[0, 0])
        expect = tpoly.mul(tpoly, P).mul(tpoly, P).scale(residual, P)
        assert acc == expect


def test_scaling_law(septic):
    pres, basis = septic
    triv = trivial_normal_fields(pres)
    fv = (basis[5].fv + triv[0]) % P
    data = extension_data(pres, fv)
    assert data.hv.any()
    for lam in (3, 1 << 20):
        d2 = extension_data(pres, lam * fv % P)
        assert np.array_equal(d2.hv, lam * lam % P * data.hv % P)


def test_universal_extension_diagonal_and_axes(septic):
    pres, basis = septic
    uni = universal_equations(pres, basis)
    assert uni.nvars == 25
    eye = np.eye(10, dtype=np.int64)
    for j in (0, 4, 9):
        fv, hv = specialize(uni, eye[j])
        d = extension_data(pres, basis[j].fv)
        assert np.array_equal(fv, d.fv) and np.array_equal(hv, d.hv)
        assert np.array_equal(uni.B[j, j], d.hv)


def test_universal_extension_shifted_complement(septic):
    # a complement with lifts shifted by trivial fields has nonzero
    # polarization table; specializations still match exactly
    pres, basis = septic
    triv = trivial_normal_fields(pres)
    rng = SplitMix64(7)
    from canext.extensions import RibbonVector

    shifted = []
    for rb in basis:
        mix = rb.fv.copy()
        for tv in triv:
            mix = (mix + rng.randbelow(P) * tv) % P
        shifted.append(RibbonVector(mix, normalized=False))
    uni = universal_equations(pres, shifted)
    assert np.count_nonzero(uni.B) > 0
    eye = np.eye(10, dtype=np.int64)
    fv, hv = specialize(uni, (eye[2] + eye[7]))
    d = extension_data(pres, (shifted[2].fv + shifted[7].fv) % P)
    assert np.array_equal(fv, d.fv) and np.array_equal(hv, d.hv)
    text = extension_text(uni)
    assert "t10" in text.splitlines()[3]


def test_surface_from_zero_ribbon_is_cone(septic):
    pres, _ = septic
    data = extension_data(pres, np.zeros((pres.m, pres.g), np.int64))
    surf = surface_equations(pres, data)
    assert not data.rv.any() and not data.hv.any() and not surf.residual3.any()
