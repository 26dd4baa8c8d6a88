import numpy as np
import pytest

from conftest import P, P2, curve, presentation

from canext.canonical import (
    canonical_coords,
    first_syzygies,
    normal_sections,
    presentation_text,
    quadric_generators,
    trivial_normal_fields,
)
from canext.curves import declared_cliff_gt2, make_curve
from canext.errors import HyperellipticInput
from canext.gaussmaps import wahl_corank
from canext.modp import PrimeField, mat_rank, modmul
from canext.poly import Poly, monomials, nmono, poly_of_vector
from canext.rng import SplitMix64


def quartic():
    F = Poly.from_terms(3, [((4, 0, 0), 1), ((0, 4, 0), 1), ((0, 0, 4), 1)], P)
    return make_curve(PrimeField(P), 4, F, name="fermat-4")


def genus4_curve():
    # quintic with two nodes: g = 6 - 2 = 4
    from canext.corpus import Family, _draw
    from canext.rng import seed_from

    fam = Family("genus4-5-2", 5, (2, 2), "unknown", "")
    return _draw(fam, PrimeField(P), SplitMix64(seed_from("g4", P)))


def test_canonical_coords_quartic_is_plane_model():
    c = quartic()
    coords = canonical_coords(c, M=9)
    assert coords.shape == (3, 9)
    assert mat_rank(coords, P) == 3
    # adjoints of a quartic are the linear forms: coordinates are the
    # affine point coordinates and 1, up to the fixed basis order
    from canext.curves import sample_points

    pts = sample_points(c, 9, seed=0)
    rows = {tuple(r) for r in coords.tolist()}
    assert tuple(q.x for q in pts) in rows
    assert tuple(q.y for q in pts) in rows
    assert tuple(1 for _ in pts) in rows


def test_canonical_coords_rejects_hyperelliptic():
    with pytest.raises(HyperellipticInput):
        canonical_coords(curve("hyperell-5-3"))


def test_quadric_counts_small():
    assert quadric_generators(quartic()).m == 0  # 6 = 6
    assert quadric_generators(genus4_curve()).m == 1  # 10 - 9
    assert presentation("ci-6-5").m == 3  # 15 - 12


def test_quadric_count_septic(septic_pres):
    assert septic_pres.m == 78  # 120 - 42
    assert septic_pres.m1 == 560  # 15*78 - (680 - 70)
    assert septic_pres.m4 == 0 and septic_pres.syz4_status == "assumed-empty"
    assert septic_pres.quad_gen_deg3


def test_genus4_single_quadric_no_syzygies():
    pres = first_syzygies(quadric_generators(genus4_curve()))
    assert pres.m == 1 and pres.m1 == 0


def test_ci_presentation_is_koszul_only(ci_pres):
    # three quadrics cutting the genus-5 canonical curve: a complete
    # intersection, so no linear syzygies and no essential degree-4 ones
    assert ci_pres.m == 3 and ci_pres.m1 == 0 and ci_pres.m4 == 0
    assert ci_pres.syz4_status == "computed"
    assert ci_pres.quad_gen_deg3


def test_scroll_bound_presentations():
    # trigonal: the quadrics cut the Eagon-Northcott scroll, with its 20
    # linear syzygies and a linear resolution; the curve needs cubics
    pres = presentation("trigonal-6-3")
    assert pres.m == 10 and pres.m1 == 20 and pres.m4 == 0
    assert not pres.quad_gen_deg3
    # tetragonal g=9: quadrics generate in degree 3, syzygies all linear
    pres = presentation("tetragonal-6-node")
    assert pres.m == 21 and pres.m1 == 64 and pres.m4 == 0
    assert pres.quad_gen_deg3


def test_exact_syzygy_identity_by_polynomial_arithmetic():
    # independent re-check of f . r = 0 with sparse Poly multiplication
    pres = presentation("trigonal-6-3")
    g = pres.g
    for c in (0, 7, 19):
        acc = Poly.zero(g)
        for j in range(pres.m):
            fj = poly_of_vector(g, 2, pres.quadrics[j], P)
            rj = poly_of_vector(g, 1, pres.syz3[c, j], P)
            acc = acc.add(fj.mul(rj, P), P)
        assert acc.is_zero()


def test_quadrics_vanish_on_canonical_image(septic_pres):
    coords = septic_pres.coords
    n2 = nmono(15, 2)
    mons = monomials(15, 2)
    vals = np.empty((coords.shape[1], n2), np.int64)
    for idx, e in enumerate(mons):
        col = np.ones(coords.shape[1], np.int64)
        for i, t in enumerate(e):
            for _ in range(t):
                col = col * coords[i] % P
        vals[:, idx] = col
    assert not np.any(modmul(vals, septic_pres.quadrics.T, P))


def test_normal_sections_ci(ci_pres):
    # complete intersection: N = O(2)^3, so h0(N(-1)) = 3*h0(O(1)) = 15
    # and h0(N(-2)) = 3*h0(O) = 3
    assert normal_sections(ci_pres, 1).dim == 15
    assert normal_sections(ci_pres, 2).dim == 3


def test_corank_identity_ci(ci_pres):
    dim = normal_sections(ci_pres, 1).dim
    cork = wahl_corank(curve("ci-6-5")).corank
    assert dim - 5 == cork == 10


def test_corank_identity_septic(septic_pres):
    dim = normal_sections(septic_pres, 1).dim
    assert dim == 25 == 15 + wahl_corank(curve("smooth-plane-7")).corank


def test_twist2_vanishing_tracks_clifford():
    # with the ideal quadratically generated, the twist -2 space vanishes
    # exactly for declared Clifford index > 2
    for name, expect in (("tetragonal-6-node", 1), ("ci-6-5", 3), ("smooth-plane-7", 0)):
        pres = presentation(name)
        assert pres.quad_gen_deg3
        dim = normal_sections(pres, 2).dim
        assert dim == expect
        assert (dim == 0) == declared_cliff_gt2(pres.curve)


def test_koszul_constraints_are_free(ci_pres):
    # contraction of a Koszul column f_i e_j - f_j e_i with any tuple lies
    # in the degree-3 part of the ideal identically, so appending Koszul
    # columns to the constraint set cannot change the solution spaces
    from canext.modp import SpanReducer, row_space
    from canext.poly import vector_of

    rng = SplitMix64(5)
    g, m = ci_pres.g, ci_pres.m
    ideal3 = SpanReducer(row_space(ci_pres.deg3_matrix().T, P), P)
    quads = [poly_of_vector(g, 2, ci_pres.quadrics[i], P) for i in range(m)]
    for _ in range(4):
        U = np.array([[rng.randbelow(P) for _ in range(g)] for _ in range(m)], dtype=np.int64)
        phis = [poly_of_vector(g, 1, U[j], P) for j in range(m)]
        for i in range(m):
            for j in range(m):
                if i == j:
                    continue
                contr = quads[i].mul(phis[j], P).sub(quads[j].mul(phis[i], P), P)
                assert ideal3.contains(vector_of(contr, 3, P)[None, :])


def test_trivial_normal_fields(ci_pres, septic_pres):
    for pres in (ci_pres, septic_pres):
        T = trivial_normal_fields(pres)
        g, m = pres.g, pres.m
        assert T.shape == (g, m, g)
        assert mat_rank(T.reshape(g, -1), P) == g
        space = normal_sections(pres, 1)
        stacked = np.vstack([space.basis.reshape(space.dim, -1), T.reshape(g, -1)])
        assert mat_rank(stacked, P) == space.dim
        # quotient by the trivial fields computes the corank again
        assert space.dim - g == wahl_corank(pres.curve).corank


def test_presentation_export_roundtrip(ci_pres):
    text = presentation_text(ci_pres)
    assert text.splitlines()[0] == "canonical-presentation"
    fields = dict(line.split(" ", 1) for line in text.splitlines()[1:8])
    assert fields["genus"] == "5" and fields["m"] == "3" and fields["m1"] == "0"
    assert text == presentation_text(ci_pres)


def test_presentation_deterministic():
    a = first_syzygies(quadric_generators(curve("trigonal-6-3")))
    b = first_syzygies(quadric_generators(curve("trigonal-6-3")))
    assert np.array_equal(a.quadrics, b.quadrics)
    assert np.array_equal(a.syz3, b.syz3)


def test_prime_stability_of_dimensions():
    for p in (P, P2):
        pres = presentation("ci-6-5", p)
        assert (pres.m, pres.m1, pres.m4) == (3, 0, 0)
        assert normal_sections(pres, 1).dim == 15
