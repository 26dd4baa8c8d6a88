"""Built-in curve families.

Every member is generated from (name, prime, seed): singular points are
placed pseudorandomly, then a pseudorandom member of the linear system of
degree-d forms with the prescribed multiplicities is drawn and validated.
General position over F_p is a genericity assumption; the constructor's
exact multiplicity and ordinariness checks reject bad draws and the
generator retries with a fresh draw.

Families:
    hyperell-5-3       quintic, one triple point      g=3,  hyperelliptic
    hyperell-6-4       sextic, one 4-fold point       g=4,  hyperelliptic
    trigonal-6-3       sextic, one triple point       g=7,  trigonal
    tetragonal-6-node  sextic, one node               g=9,  tetragonal
    smooth-plane-7     smooth septic                  g=15, Cliff 3
    nodal-8-1          octic, one node                g=20
    nodal-8-2          octic, two nodes               g=19
    nodal-8-3          octic, three nodes             g=18
    ci-6-5             sextic, five nodes             g=5,  canonical model
                       is a complete intersection of three quadrics
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import PlaneCurve, SingularPoint, make_curve
from .errors import CanextError, InvalidCurve
from .modp import PrimeField, mat_kernel, sample_prime
from .poly import Poly, monomials, translate2
from .rng import SplitMix64, seed_from


@dataclass(frozen=True)
class Family:
    name: str
    degree: int
    mults: tuple[int, ...]
    gonality: str
    note: str


FAMILIES = {
    f.name: f
    for f in [
        Family("hyperell-5-3", 5, (3,), "hyperelliptic", "g=3, degree-2 pencil from the triple point"),
        Family("hyperell-6-4", 6, (4,), "hyperelliptic", "g=4, degree-2 pencil from the 4-fold point"),
        Family("trigonal-6-3", 6, (3,), "trigonal", "g=7, degree-3 pencil from the triple point"),
        Family("tetragonal-6-node", 6, (2,), "tetragonal", "g=9, degree-4 pencil from the node"),
        Family("smooth-plane-7", 7, (), "plane:7", "g=15, Clifford index 3"),
        Family("nodal-8-1", 8, (2,), "plane:8", "g=20, one node"),
        Family("nodal-8-2", 8, (2, 2), "plane:8", "g=19, two nodes"),
        Family("nodal-8-3", 8, (2, 2, 2), "plane:8", "g=18, three nodes"),
        Family("ci-6-5", 6, (2, 2, 2, 2, 2), "tetragonal", "g=5, complete-intersection canonical model"),
    ]
}


def corpus_names() -> list[str]:
    return list(FAMILIES)


_cache: dict = {}


def make(name: str, p: int | None = None, seed: int = 0) -> PlaneCurve:
    """Build (and cache) the named corpus curve over F_p."""
    if name not in FAMILIES:
        raise CanextError(f"unknown corpus curve {name!r}")
    if p is None:
        p = sample_prime(seed)
    key = (name, p, seed)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    fam = FAMILIES[name]
    field = PrimeField(p)
    rng = SplitMix64(seed_from("corpus", name, p, seed))
    last = None
    for _ in range(64):
        try:
            curve = _draw(fam, field, rng)
        except InvalidCurve as exc:
            last = exc
            continue
        _cache[key] = curve
        return curve
    raise InvalidCurve(f"could not realize {name} over F_{p}: {last}")


def _draw(fam: Family, field: PrimeField, rng: SplitMix64) -> PlaneCurve:
    p = field.p
    d = fam.degree
    pts: list[SingularPoint] = []
    used_x: set[int] = set()
    for m in fam.mults:
        # distinct x-coordinates keep downstream slice bookkeeping simple
        while True:
            x0 = rng.randbelow(p)
            if x0 not in used_x:
                used_x.add(x0)
                break
        pts.append(SingularPoint(x0, rng.randbelow(p), m))
    mons = monomials(3, d)
    rows = []
    for s in pts:
        for t in range(s.mult):
            for a in range(t + 1):
                b = t - a
                row = np.zeros(len(mons), np.int64)
                for idx, e in enumerate(mons):
                    sh = translate2(Poly(2, {(e[0], e[1]): 1}), s.x, s.y, p)
                    row[idx] = sh.terms.get((a, b), 0)
                rows.append(row)
    if rows:
        K = mat_kernel(np.array(rows, dtype=np.int64), p)
    else:
        K = np.eye(len(mons), dtype=np.int64)
    coeffs = np.array([rng.randbelow(p) for _ in range(K.shape[0])], dtype=np.int64)
    vec = (coeffs[None, :] @ K.astype(object)).astype(object).reshape(-1) % p
    F = Poly.from_terms(3, ((mons[i], int(c)) for i, c in enumerate(vec) if c), p)
    return make_curve(field, d, F, pts, fam.gonality, fam.name)
