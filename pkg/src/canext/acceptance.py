"""Acceptance suite: one function per criterion, exact integer checks.

Every corank claim is recomputed for two independent pseudorandom primes
and two seeds; dimensions and certificates are exact over each prime.
Criteria report one pass/fail line each and never repair a failure: a
mismatch is reported with the computed values.

Shared heavy objects (curves, presentations, corank reports) are cached in
the run context, so later criteria reuse the exact artifacts earlier ones
measured; each criterion's elapsed time covers the work it triggered.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import corpus
from .canonical import first_syzygies, normal_sections, quadric_generators
from .curves import genus
from .errors import CanextError
from .extensions import (
    extension_data,
    ribbon_basis,
    specialize,
    surface_equations,
    universal_equations,
    verify_extension,
)
from .gaussmaps import mult_rank, wahl_corank
from .modp import sample_prime
from .planeext import cubics_through, extension_system, sample_cubic, surface_sample
from .rng import SplitMix64, seed_from

DEFAULT_MASTER_SEED = 20260810


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    budget: float
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} {status} {self.name} ({self.elapsed:.1f}s / {self.budget:.0f}s)"


class Context:
    """Caches per (name, prime, seed) so criteria share exact artifacts."""

    def __init__(self, master_seed: int = DEFAULT_MASTER_SEED):
        self.master_seed = master_seed
        self.configs = [
            (sample_prime(master_seed), 0),
            (sample_prime(master_seed + 1), 1),
        ]
        self._curves: dict = {}
        self._pres: dict = {}
        self._corank: dict = {}

    def curve(self, name, p, seed):
        key = (name, p, seed)
        if key not in self._curves:
            self._curves[key] = corpus.make(name, p, seed)
        return self._curves[key]

    def presentation(self, name, p, seed):
        key = (name, p, seed)
        if key not in self._pres:
            self._pres[key] = first_syzygies(
                quadric_generators(self.curve(name, p, seed), seed=seed)
            )
        return self._pres[key]

    def corank(self, name, p, seed) -> int:
        key = (name, p, seed)
        if key not in self._corank:
            self._corank[key] = wahl_corank(self.curve(name, p, seed), seed=seed).corank
        return self._corank[key]


def _corank_criterion(ctx, number, name, budget, checks):
    """Shared driver: each (curve, predicate, label) must hold for both
    prime/seed configurations; the budget bounds each single run."""
    details, ok = [], True
    worst = 0.0
    for cname, pred, label in checks:
        for p, seed in ctx.configs:
            t0 = time.perf_counter()
            c = ctx.corank(cname, p, seed)
            dt = time.perf_counter() - t0
            worst = max(worst, dt)
            good = pred(c)
            ok = ok and good
            details.append(
                f"{cname} p={p} seed={seed}: corank {c} ({label}) "
                f"{'ok' if good else 'MISMATCH'} [{dt:.1f}s]"
            )
    ok = ok and worst <= budget
    return CriterionResult(number, name, ok, worst, budget, details)


def criterion_01(ctx) -> CriterionResult:
    return _corank_criterion(
        ctx, 1, "hyperelliptic corank 3g-2", 5.0,
        [
            ("hyperell-5-3", lambda c: c == 7, "expect 7"),
            ("hyperell-6-4", lambda c: c == 10, "expect 10"),
        ],
    )


def criterion_02(ctx) -> CriterionResult:
    return _corank_criterion(
        ctx, 2, "trigonal corank g+5", 10.0,
        [("trigonal-6-3", lambda c: c == 12, "expect 12")],
    )


def criterion_03(ctx) -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    for p, seed in ctx.configs:
        values = []
        for attempt in range(6):
            values.append(ctx.corank("tetragonal-6-node", p, seed + 17 * attempt))
        hit = 9 in values
        ok = ok and hit
        details.append(
            f"p={p} base-seed={seed}: coranks over 6 coefficient draws {values} "
            f"{'ok' if hit else 'NO DRAW REACHED 9'}"
        )
    if not ok:
        details.append(
            "genericity caveat: the one-node sextic family appears to sit at "
            "corank 10; no resample reached the general tetragonal value 9"
        )
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed <= 30.0
    return CriterionResult(3, "tetragonal corank 9 (with resampling)", ok, elapsed, 30.0, details)


def criterion_04(ctx) -> CriterionResult:
    return _corank_criterion(
        ctx, 4, "smooth plane septic corank 10", 60.0,
        [("smooth-plane-7", lambda c: c == 10, "expect 10")],
    )


def criterion_05(ctx) -> CriterionResult:
    return _corank_criterion(
        ctx, 5, "nodal octics corank >= 10-a", 120.0,
        [
            ("nodal-8-1", lambda c: c >= 9, "expect >= 9"),
            ("nodal-8-2", lambda c: c >= 8, "expect >= 8"),
        ],
    )


def criterion_06(ctx) -> CriterionResult:
    t0 = time.perf_counter()
    p, seed = ctx.configs[0]
    details, ok = [], True
    for name, gexp in (("smooth-plane-7", 15), ("nodal-8-1", 20)):
        pres = ctx.presentation(name, p, seed)
        dim = normal_sections(pres, 1).dim
        cork = ctx.corank(name, p, seed)
        want = gexp + cork
        good = dim == want
        if name == "smooth-plane-7":
            good = good and dim == 25
        ok = ok and good
        details.append(
            f"{name} p={p}: dim h0(N(-1)) model = {dim}, g + corank = {gexp}+{cork} = {want} "
            f"{'ok' if good else 'MISMATCH'}"
        )
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed <= 180.0
    return CriterionResult(6, "corank identity via normal sections", ok, elapsed, 180.0, details)


def criterion_07(ctx) -> CriterionResult:
    t0 = time.perf_counter()
    p, seed = ctx.configs[0]
    details, ok = [], True
    for name in ("smooth-plane-7", "nodal-8-1"):
        pres = ctx.presentation(name, p, seed)
        dim = normal_sections(pres, 2).dim
        good = dim == 0
        ok = ok and good
        details.append(f"{name} p={p}: dim twist-2 sections = {dim} {'ok' if good else 'MISMATCH'}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed <= 60.0
    return CriterionResult(7, "twist -2 sections vanish (Cliff > 2)", ok, elapsed, 60.0, details)


def criterion_08(ctx) -> CriterionResult:
    t0 = time.perf_counter()
    p, seed = ctx.configs[0]
    details, ok = [], True
    for name in corpus.corpus_names():
        c = ctx.curve(name, p, seed)
        if genus(c) < 2:
            continue
        rep = mult_rank(c, 1, seed=seed)
        good = rep.corank == 0
        ok = ok and good
        details.append(
            f"{name} p={p}: mu corank {rep.corank} (rank {rep.rank}/{rep.dim_target}) "
            f"{'ok' if good else 'NOT SURJECTIVE'}"
        )
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed <= 30.0
    return CriterionResult(8, "multiplication map surjective on the corpus", ok, elapsed, 30.0, details)


def _random_ribbon_lift(pres, triv, basis, rng):
    """A pseudorandom tuple in the twist -1 space, generically outside the
    trivial subspace and with a generic lift (nonzero trivial component)."""
    p = pres.prime
    fv = np.zeros_like(basis[0].fv)
    for rb in basis:
        fv = (fv + rng.randbelow(p) * rb.fv) % p
    for tv in triv:
        fv = (fv + rng.randbelow(p) * tv) % p
    return fv


def criterion_09(ctx) -> CriterionResult:
    t0 = time.perf_counter()
    p, seed = ctx.configs[0]
    details, ok = [], True
    try:
        pres = ctx.presentation("smooth-plane-7", p, seed)
        from .canonical import trivial_normal_fields

        triv = trivial_normal_fields(pres)
        basis = ribbon_basis(pres)
        rng = SplitMix64(seed_from("acceptance-ribbons", p, seed))
        for idx in range(3):
            fv = _random_ribbon_lift(pres, triv, basis, rng)
            data = extension_data(pres, fv)  # raises on non-unique solves
            verify_extension(pres, data)
            surf = surface_equations(pres, data)
            for _ in range(3):
                lam = 1 + rng.randbelow(p - 1)
                d2 = extension_data(pres, lam * fv % p)
                if not (
                    np.array_equal(d2.rv, lam * data.rv % p)
                    and np.array_equal(d2.hv, lam * lam % p * data.hv % p)
                ):
                    ok = False
                    details.append(f"ribbon {idx}: scaling law failed at lambda={lam}")
            details.append(
                f"ribbon {idx}: identities exact, lifts unique, h scaling quadratic "
                f"(h_v nonzero: {bool(data.hv.any())}, t^3 residual nonzero: "
                f"{bool(surf.residual3.any())})"
            )
        # polarization: D(u, v) = h(u+v) - h(u) - h(v) is symmetric bilinear
        for idx in range(3):
            u = _random_ribbon_lift(pres, triv, basis, rng)
            v = _random_ribbon_lift(pres, triv, basis, rng)
            w = _random_ribbon_lift(pres, triv, basis, rng)
            h = lambda x: extension_data(pres, x % p).hv

            def D(a, b):
                return (h((a + b) % p) - h(a) - h(b)) % p

            lam = 1 + rng.randbelow(p - 1)
            bilin = np.array_equal(D(u, (v + w) % p), (D(u, v) + D(u, w)) % p)
            homog = np.array_equal(D(lam * u % p, v), lam * D(u, v) % p)
            sym = np.array_equal(D(u, v), D(v, u))
            good = bilin and homog and sym
            ok = ok and good
            details.append(
                f"pair {idx}: polar form symmetric {sym}, additive {bilin}, "
                f"homogeneous {homog} (nonzero: {bool(D(u, v).any())})"
            )
    except CanextError as exc:
        ok = False
        details.append(f"unexpected failure: {exc.code} {exc}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed <= 300.0
    return CriterionResult(9, "extension certificates and quadratic law", ok, elapsed, 300.0, details)


def criterion_10(ctx) -> CriterionResult:
    t0 = time.perf_counter()
    p, seed = ctx.configs[0]
    details, ok = [], True
    try:
        pres = ctx.presentation("smooth-plane-7", p, seed)
        basis = ribbon_basis(pres)
        uni = universal_equations(pres, basis)
        r1 = len(basis)
        good_vars = uni.nvars == pres.g + r1 == 25
        ok = ok and good_vars
        details.append(
            f"variables {uni.nvars} = g + corank = {pres.g}+{r1} "
            f"(homogeneous coordinates of P^{pres.g + r1 - 1}) {'ok' if good_vars else 'MISMATCH'}"
        )
        eye = np.eye(r1, dtype=np.int64)
        for j in range(r1):
            fv, hv = specialize(uni, eye[j])
            d = extension_data(pres, basis[j].fv)
            if not (np.array_equal(fv, d.fv) and np.array_equal(hv, d.hv)):
                ok = False
                details.append(f"axis {j}: specialization mismatch")
        fv, hv = specialize(uni, eye[0] + eye[1])
        d = extension_data(pres, (basis[0].fv + basis[1].fv) % p)
        diag_ok = np.array_equal(fv, d.fv) and np.array_equal(hv, d.hv)
        ok = ok and diag_ok
        details.append(
            f"10 axis specializations + e1+e2 coefficient-exact: {'ok' if diag_ok else 'MISMATCH'}"
        )
    except CanextError as exc:
        ok = False
        details.append(f"unexpected failure: {exc.code} {exc}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed <= 600.0
    return CriterionResult(10, "universal extension specializes exactly", ok, elapsed, 600.0, details)


def criterion_11(ctx) -> CriterionResult:
    t0 = time.perf_counter()
    p, seed = ctx.configs[0]
    details, ok = [], True
    try:
        c = ctx.curve("smooth-plane-7", p, seed)
        for k in range(3):
            T, attempts = sample_cubic(c, seed=seed + 31 * k)
            sysb = extension_system(c, T, attempts)
            smp = surface_sample(sysb, 10, seed=seed + k)
            good = sysb.basis.shape[0] == 16 and smp.contraction_ok and smp.span_dim == 15
            ok = ok and good
            details.append(
                f"cubic {k}: system dim {sysb.basis.shape[0]} (expect 16), "
                f"attempts {attempts}, contraction {smp.contraction_ok}, "
                f"curve-image span {smp.span_dim} {'ok' if good else 'MISMATCH'}"
            )
        rng = SplitMix64(seed_from("acceptance-cubics", p))
        for a, want in ((0, 10), (1, 9), (9, 1)):
            pts = [(rng.randbelow(p), rng.randbelow(p)) for _ in range(a)]
            dim = cubics_through(pts, c.field).shape[0]
            good = dim == want
            ok = ok and good
            details.append(f"cubics through {a} points: dim {dim} (expect {want})")
    except CanextError as exc:
        ok = False
        details.append(f"unexpected failure: {exc.code} {exc}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed <= 120.0
    return CriterionResult(11, "plane extension system and contraction", ok, elapsed, 120.0, details)


def criterion_12(ctx) -> CriterionResult:
    t0 = time.perf_counter()
    p, seed = ctx.configs[0]
    details, ok = [], True
    cases = [("smooth-plane-7", 0), ("nodal-8-1", 1), ("nodal-8-2", 2), ("nodal-8-3", 3)]
    for name, a in cases:
        c = ctx.curve(name, p, seed)
        g = genus(c)
        cork = ctx.corank(name, p, seed)
        good = g >= 11 and cork >= 10 - a
        ok = ok and good
        details.append(
            f"{name} (a={a}, g={g}) p={p}: corank {cork} >= {10 - a} {'ok' if good else 'MISMATCH'}"
        )
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed <= 300.0
    return CriterionResult(12, "anticanonical bound corank >= 10-a", ok, elapsed, 300.0, details)


ALL = [
    criterion_01,
    criterion_02,
    criterion_03,
    criterion_04,
    criterion_05,
    criterion_06,
    criterion_07,
    criterion_08,
    criterion_09,
    criterion_10,
    criterion_11,
    criterion_12,
]


def run(numbers=None, master_seed: int = DEFAULT_MASTER_SEED, stream=None, verbose=True):
    """Run the selected criteria; print one pass/fail line per criterion."""
    import sys

    if stream is None:
        stream = sys.stdout
    ctx = Context(master_seed)
    wanted = set(numbers) if numbers else set(range(1, len(ALL) + 1))
    results = []
    for i, fn in enumerate(ALL, 1):
        if i not in wanted:
            continue
        res = fn(ctx)
        results.append(res)
        print(res.line(), file=stream)
        if verbose:
            for d in res.details:
                print(f"    {d}", file=stream)
    npass = sum(r.passed for r in results)
    print(f"acceptance {npass}/{len(results)} criteria passed", file=stream)
    return results
