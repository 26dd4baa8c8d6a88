"""Command-line interface.

Subcommands: genus, corank, gauss, normal, extend, universal, plane-extend,
verify, corpus.  Reports are line-delimited ``key value`` pairs with stable
key names; every numeric claim is accompanied by the prime and seed that
produced it.  Exit codes: 0 success, 1 violated theorem hypothesis, 2
certificate failure, 64 usage error, 65 curve-file parse error.

Curve file grammar (one directive per line, '#' comments):

    name <string>
    prime <int>                  # optional; sampled from the seed if absent
    degree <int>
    gonality <label>             # hyperelliptic|trigonal|tetragonal|plane:<d>|unknown
    term <i> <j> <k> <coeff>     # monomial x^i y^j z^k, decimal coefficient
    sing <x> <y> <m>             # ordinary singular point (affine, z=1)
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import corpus
from .canonical import (
    first_syzygies,
    normal_sections,
    presentation_text,
    quadric_generators,
)
from .curves import PlaneCurve, SingularPoint, clifford_floor, genus, make_curve
from .errors import CanextError, CertificateFailure, CurveFileError, HypothesisViolation
from .extensions import (
    extension_data,
    extension_text,
    ribbon_basis,
    specialize,
    surface_equations,
    universal_equations,
)
from .gaussmaps import gauss_corank, wahl_corank
from .modp import PrimeField, sample_prime
from .planeext import extension_system, sample_cubic, samples_text, surface_sample
from .poly import Poly
from .rng import SplitMix64, seed_from

EXIT_OK = 0
EXIT_HYPOTHESIS = 1
EXIT_CERTIFICATE = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


class Report:
    """Ordered key/value lines; reproducible given (curve, prime, seed)."""

    def __init__(self, command: str):
        self.rows: list[tuple[str, object]] = [("command", command)]

    def add(self, key: str, value) -> "Report":
        self.rows.append((key, value))
        return self

    def curve(self, c: PlaneCurve, seed: int) -> "Report":
        self.add("curve", c.name or "<file>")
        self.add("prime", c.p)
        self.add("seed", seed)
        self.add("degree", c.degree)
        self.add("genus", genus(c))
        self.add("gonality", c.gonality)
        cf = clifford_floor(c.gonality)
        self.add("clifford-assumed", "unknown" if cf is None else f">={cf}")
        return self

    def emit(self, out=None):
        out = out if out is not None else sys.stdout
        for k, v in self.rows:
            print(f"{k} {v}", file=out)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def parse_curve_file(text: str, default_seed: int = 0) -> PlaneCurve:
    name = ""
    prime = None
    degree = None
    gonality = "unknown"
    terms: list[tuple[tuple[int, int, int], int]] = []
    sing: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            key = parts[0]
            if key == "name":
                name = " ".join(parts[1:])
            elif key == "prime":
                prime = int(parts[1])
            elif key == "degree":
                degree = int(parts[1])
            elif key == "gonality":
                gonality = parts[1]
            elif key == "term":
                i, j, k, c = (int(v) for v in parts[1:5])
                terms.append(((i, j, k), c))
            elif key == "sing":
                x, y, m = (int(v) for v in parts[1:4])
                sing.append((x, y, m))
            else:
                raise ValueError(f"unknown directive {key!r}")
        except (IndexError, ValueError) as exc:
            raise CurveFileError(f"line {lineno}: {exc}") from exc
    if degree is None or not terms:
        raise CurveFileError("curve file needs a degree and at least one term")
    if gonality not in ("hyperelliptic", "trigonal", "tetragonal", "unknown") and not (
        gonality.startswith("plane:") and gonality.split(":", 1)[1].isdigit()
    ):
        raise CurveFileError(f"bad gonality label {gonality!r}")
    if prime is None:
        prime = sample_prime(default_seed)
    field = PrimeField(prime)
    F = Poly.from_terms(3, terms, prime)
    pts = [SingularPoint(x, y, m) for x, y, m in sing]
    try:
        return make_curve(field, degree, F, pts, gonality, name)
    except CanextError:
        raise
    except Exception as exc:  # arithmetic errors from malformed data
        raise CurveFileError(str(exc)) from exc


def load_curve(spec: str, prime: int | None, seed: int) -> PlaneCurve:
    if spec.startswith("corpus:"):
        return corpus.make(spec.split(":", 1)[1], prime, seed)
    try:
        with open(spec) as fh:
            text = fh.read()
    except OSError as exc:
        raise CurveFileError(f"cannot read {spec}: {exc}") from exc
    curve = parse_curve_file(text, seed)
    if prime is not None and curve.p != prime:
        raise CurveFileError("--prime conflicts with the prime in the curve file")
    return curve


def _add_common(sp):
    sp.add_argument("--curve", required=True, help="corpus:<name> or a curve file path")
    sp.add_argument("--prime", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--points", type=int, default=None, help="evaluation point count")


def build_parser() -> _Parser:
    ap = _Parser(prog="canext", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True)

    _add_common(sub.add_parser("genus", help="genus of a plane model"))
    _add_common(sub.add_parser("corank", help="corank of the Wahl map"))
    g = sub.add_parser("gauss", help="corank of a Gaussian map on R(w^k, w)")
    _add_common(g)
    g.add_argument("--k", type=int, choices=(1, 2), default=1)
    n = sub.add_parser("normal", help="twisted normal-bundle section space")
    _add_common(n)
    n.add_argument("--k", type=int, choices=(1, 2), default=1)
    n.add_argument("--dump-presentation", action="store_true")
    e = sub.add_parser("extend", help="surface extension from a ribbon")
    _add_common(e)
    grp = e.add_mutually_exclusive_group()
    grp.add_argument("--ribbon-index", type=int, default=None)
    grp.add_argument("--random-ribbon", action="store_true")
    e.add_argument("--dump-extension", action="store_true")
    u = sub.add_parser("universal", help="universal extension equations")
    _add_common(u)
    u.add_argument("--dump-extension", action="store_true")
    pe = sub.add_parser("plane-extend", help="plane model extension via a cubic")
    _add_common(pe)
    pe.add_argument("--cubic", default="auto", help="'auto' or a cubic file (term rows)")
    pe.add_argument("--dump-samples", action="store_true")
    v = sub.add_parser("verify", help="run the full acceptance suite")
    v.add_argument("--criteria", default=None, help="comma-separated criterion numbers")
    v.add_argument("--seed", type=int, default=None, help="override the master seed")
    sub.add_parser("corpus", help="list built-in curves")
    return ap


def _cmd_genus(args) -> int:
    c = load_curve(args.curve, args.prime, args.seed)
    rep = Report("genus").curve(c, args.seed)
    rep.add("sing-count", len(c.sing))
    rep.emit()
    return EXIT_OK


def _cmd_corank(args) -> int:
    c = load_curve(args.curve, args.prime, args.seed)
    t0 = time.perf_counter()
    r = wahl_corank(c, seed=args.seed, M=args.points)
    rep = Report("corank").curve(c, args.seed)
    rep.add("points", r.points)
    rep.add("dim-source", r.dim_source)
    rep.add("dim-target", r.dim_target)
    rep.add("rank", r.rank)
    rep.add("corank", r.corank)
    rep.add("elapsed-s", f"{time.perf_counter() - t0:.3f}")
    rep.emit()
    return EXIT_OK


def _cmd_gauss(args) -> int:
    c = load_curve(args.curve, args.prime, args.seed)
    t0 = time.perf_counter()
    r = gauss_corank(c, k=args.k, seed=args.seed, M=args.points)
    rep = Report("gauss").curve(c, args.seed)
    rep.add("k", r.k)
    rep.add("points", r.points)
    rep.add("dim-source", r.dim_source)
    rep.add("dim-target", r.dim_target)
    rep.add("rank", r.rank)
    rep.add("corank", r.corank)
    rep.add("elapsed-s", f"{time.perf_counter() - t0:.3f}")
    rep.emit()
    return EXIT_OK


def _presentation(c, seed, M=None):
    return first_syzygies(quadric_generators(c, seed=seed, M=M))


def _cmd_normal(args) -> int:
    c = load_curve(args.curve, args.prime, args.seed)
    t0 = time.perf_counter()
    pres = _presentation(c, args.seed, args.points)
    space = normal_sections(pres, args.k)
    rep = Report("normal").curve(c, args.seed)
    rep.add("k", args.k)
    rep.add("m", pres.m)
    rep.add("m1", pres.m1)
    rep.add("m4", pres.m4)
    rep.add("syz4-status", pres.syz4_status)
    rep.add("dim", space.dim)
    rep.add("elapsed-s", f"{time.perf_counter() - t0:.3f}")
    rep.emit()
    if args.dump_presentation:
        sys.stdout.write(presentation_text(pres))
    return EXIT_OK


def _cmd_extend(args) -> int:
    c = load_curve(args.curve, args.prime, args.seed)
    t0 = time.perf_counter()
    pres = _presentation(c, args.seed)
    basis = ribbon_basis(pres)
    if args.random_ribbon:
        rng = SplitMix64(seed_from("cli-ribbon", c.p, args.seed))
        fv = np.zeros_like(basis[0].fv)
        for rb in basis:
            fv = (fv + rng.randbelow(c.p) * rb.fv) % c.p
        label = "random"
    else:
        idx = args.ribbon_index or 0
        if not 0 <= idx < len(basis):
            raise HypothesisViolation(f"ribbon index {idx} out of range 0..{len(basis)-1}")
        fv = basis[idx].fv
        label = str(idx)
    data = extension_data(pres, fv)
    surf = surface_equations(pres, data)
    rep = Report("extend").curve(c, args.seed)
    rep.add("corank", len(basis))
    rep.add("ribbon", label)
    rep.add("lift-unique", 1)
    rep.add("second-order-unique", 1)
    rep.add("t3-residual-nonzero", int(bool(surf.residual3.any())))
    rep.add("variables", surf.nvars)
    rep.add("elapsed-s", f"{time.perf_counter() - t0:.3f}")
    rep.emit()
    if args.dump_extension:
        sys.stdout.write(extension_text(surf))
    return EXIT_OK


def _cmd_universal(args) -> int:
    c = load_curve(args.curve, args.prime, args.seed)
    t0 = time.perf_counter()
    pres = _presentation(c, args.seed)
    basis = ribbon_basis(pres)
    uni = universal_equations(pres, basis)
    # axis specializations must reproduce the surface equations exactly
    ok = True
    for j, rb in enumerate(basis):
        fv, hv = specialize(uni, np.eye(len(basis), dtype=np.int64)[j])
        d = extension_data(pres, rb.fv)
        ok = ok and np.array_equal(fv, d.fv) and np.array_equal(hv, d.hv)
    if not ok:
        raise CertificateFailure("axis specialization mismatch")
    rep = Report("universal").curve(c, args.seed)
    rep.add("corank", len(basis))
    rep.add("variables", uni.nvars)
    rep.add("axis-specializations-ok", 1)
    rep.add("elapsed-s", f"{time.perf_counter() - t0:.3f}")
    rep.emit()
    if args.dump_extension:
        sys.stdout.write(extension_text(uni))
    return EXIT_OK


def _cmd_plane_extend(args) -> int:
    c = load_curve(args.curve, args.prime, args.seed)
    t0 = time.perf_counter()
    if args.cubic == "auto":
        T, attempts = sample_cubic(c, seed=args.seed)
    else:
        with open(args.cubic) as fh:
            terms = []
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                i, j, k, coeff = (int(v) for v in line.split()[-4:])
                terms.append(((i, j, k), coeff))
        T = Poly.from_terms(3, terms, c.p)
        attempts = 0
    sysb = extension_system(c, T, attempts)
    smp = surface_sample(sysb, args.points or 12, seed=args.seed)
    rep = Report("plane-extend").curve(c, args.seed)
    rep.add("cubic-attempts", attempts)
    rep.add("system-dim", sysb.basis.shape[0])
    rep.add("base-simple-total", sysb.n_base_simple)
    rep.add("base-simple-rational", len(sysb.simple_base_points))
    rep.add("contraction-ok", int(smp.contraction_ok))
    rep.add("hyperplane-ok", int(smp.hyperplane_ok))
    rep.add("span-dim", smp.span_dim)
    rep.add("matches-canonical", int(smp.matches_canonical))
    rep.add("elapsed-s", f"{time.perf_counter() - t0:.3f}")
    rep.emit()
    if args.dump_samples:
        sys.stdout.write(samples_text(smp))
    return EXIT_OK


def _cmd_verify(args) -> int:
    from . import acceptance

    numbers = None
    if args.criteria:
        numbers = [int(v) for v in args.criteria.split(",")]
    kwargs = {} if args.seed is None else {"master_seed": args.seed}
    results = acceptance.run(numbers=numbers, **kwargs)
    return EXIT_OK if all(r.passed for r in results) else EXIT_HYPOTHESIS


def _cmd_corpus(_args) -> int:
    rep = Report("corpus")
    rep.add("count", len(corpus.corpus_names()))
    rep.emit()
    for name, fam in corpus.FAMILIES.items():
        mults = ",".join(map(str, fam.mults)) or "-"
        print(f"curve {name} degree {fam.degree} sing {mults} gonality {fam.gonality} # {fam.note}")
    return EXIT_OK


_DISPATCH = {
    "genus": _cmd_genus,
    "corank": _cmd_corank,
    "gauss": _cmd_gauss,
    "normal": _cmd_normal,
    "extend": _cmd_extend,
    "universal": _cmd_universal,
    "plane-extend": _cmd_plane_extend,
    "verify": _cmd_verify,
    "corpus": _cmd_corpus,
}


def run(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.cmd](args)
    except CurveFileError as exc:
        print(f"parse-error {exc}", file=sys.stderr)
        return EXIT_PARSE
    except HypothesisViolation as exc:
        print(f"hypothesis-violation {exc.code} {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except CertificateFailure as exc:
        print(f"certificate-failure {exc.code} {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except CanextError as exc:
        print(f"error {exc.code} {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
