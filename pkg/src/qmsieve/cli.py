"""Command-line front end.

Inline field specs:
  Q                      the rationals
  realquad:m             Q(sqrt m), m > 1 squarefree
  quad:m                 Q(sqrt m), any squarefree m
  poly:c0,c1,...,1       totally real field of the monic polynomial sum c_i x^i
  multiquad:m1,m2,...    Q(sqrt m1, sqrt m2, ...)
  relquad:<base>:d0,d1   base(sqrt delta), delta given in the integral basis of base
  json:{...}             a JSON field spec
  @path                  read any spec from a file
A "k:" prefix is accepted and ignored.

Quaternion algebras: ram:p1,p2 (every prime of F above each p) or
ram:@p.i,q.j naming primes of F by index.  Primes of F: p or p.i.

Exit codes: 0 computed (whatever the verdict), 2 invalid input,
3 a resource bound was exceeded (including certificates with a resource outcome).
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .cache import Cache
from .classgroup.hilbert import DEFAULT_HCF_BOUND
from .classgroup.relations import class_group
from .criteria.certificate import has_resource_outcome, to_json
from .criteria.scan import DEFAULT_SCAN_CAP
from .criteria.sets import DEFAULT_ELL_CAP
from .criteria.sset import build_s_set
from .criteria.theorems import Caps, check_m1_empty, check_thm13, check_thm14, parse_prime
from .criteria.weil import fr_set, n_lcm, prime_labels, torsion_bound, v_set, w_set
from .errors import InvalidInputError, NotGaloisError, ResourceBoundError
from .numberfield.build import build_field
from .numberfield.enumeration import DEFAULT_BOX_CAP
from .numberfield.field import NumberField
from .numberfield.spec import parse_field
from .quaternion import parse_ram, split_witnesses, splits_B

EXIT_OK, EXIT_INVALID, EXIT_RESOURCE = 0, 2, 3

log = logging.getLogger("qmsieve")


def _field(text: str) -> NumberField:
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidInputError(f"cannot read {text[1:]}: {exc}") from None
    return build_field(parse_field(text))


def _pos_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qmsieve", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the structured (JSON) document")
    common.add_argument("--workers", type=_pos_int, default=1)
    common.add_argument("--scan-cap", type=_pos_int, default=DEFAULT_SCAN_CAP, help="max triples of the M_2 scan")
    common.add_argument("--ell-cap", type=_pos_int, default=DEFAULT_ELL_CAP, help="max auxiliary prime searched")
    common.add_argument("--box-cap", type=_pos_int, default=DEFAULT_BOX_CAP, help="max lattice points in FR boxes")
    common.add_argument("--hcf-bound", type=_pos_int, default=DEFAULT_HCF_BOUND, help="prime bound of the class-field test")
    common.add_argument("--cache-dir", default=None, help="cache directory (default $QM_SIEVE_CACHE or ~/.cache/qmsieve)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, *args, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        for a in args:
            p.add_argument(a)
        return p

    add("nlcm", "field", help="n_lcm(F)")
    add("fr", "field", "q", "f", help="the Weil classes FR(q^f)")
    add("wset", "field", "l", "f", help="the set W(l^f)")
    add("vset", "field", "l", "f", help="the set V(l^f)")
    add("torsion-bound", "field", "l", "f", help="the integer bounding torsion primes")
    add("classgroup", "field", help="class number and structure")
    add("splits", "B", "l", help="does F(sqrt(-l)) split B").add_argument("--field", default="Q", help="base field of B")
    add("check-m1", "F", "B", "l", "f", "pF", help="emptiness of M_1 at p_F")
    add("check-thm13", "F", "B", "k", "pF", help="emptiness of M_0 at p_F (four conditions)")
    add("check-thm14", "F", "B", "k", "pF", help="emptiness of M_0 at p_F (variant)")
    add("s-set", "k", "F", help="the generating set S of split primes of k")
    return ap


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidInputError(f"{what} must be an integer, got {text!r}") from None


def _emit(args, doc: dict, lines: Sequence[str]) -> None:
    out = to_json(doc) if args.json else "\n".join(lines) + "\n"
    sys.stdout.write(out)


def _cert_lines(cert: dict) -> list[str]:
    lines = [f"theorem: {cert['theorem']}", f"verdict: {cert['verdict']}"]
    for c in cert["checks"]:
        lines.append(f"  [{c['outcome']:>9}] {c['name']}")
    for r in cert["reasons"]:
        lines.append(f"reason: {r}")
    return lines


def _dispatch(args) -> int:
    cache = None if args.no_cache else Cache(args.cache_dir)
    caps = Caps(scan=args.scan_cap, ell=args.ell_cap, hcf=args.hcf_bound)
    cmd = args.cmd

    if cmd == "nlcm":
        F = _field(args.field)
        v = n_lcm(F)
        _emit(args, {"field": F.label, "n_lcm": v}, [str(v)])
    elif cmd == "fr":
        F = _field(args.field)
        q, f = _int(args.q, "q"), _int(args.f, "f")
        S = cache.fr_set(F, q, f) if cache and args.box_cap == DEFAULT_BOX_CAP else fr_set(F, q, f, args.box_cap)
        lines = [f"FR({q}^{f}) over {F.label}: {len(S.classes)} classes"]
        lines += [f"  b = {c.b}  disc: {c.disc_status}" for c in S.classes]
        _emit(args, S.to_json(), lines)
    elif cmd in ("wset", "vset"):
        F = _field(args.field)
        ell, f = _int(args.l, "l"), _int(args.f, "f")
        ps = (w_set if cmd == "wset" else v_set)(F, ell, f)
        labs = prime_labels(ps)
        rational = sorted({P.p for P in ps})
        _emit(args, {"field": F.label, "l": ell, "f": f, "primes": labs, "rational_primes": rational},
              [", ".join(str(p) for p in rational), "primes: " + " ".join(labs)])
    elif cmd == "torsion-bound":
        F = _field(args.field)
        ell, f = _int(args.l, "l"), _int(args.f, "f")
        N = torsion_bound(F, ell, f)
        _emit(args, {"field": F.label, "l": ell, "f": f, "bound": str(N)}, [str(N)])
    elif cmd == "classgroup":
        K = _field(args.field)
        cg = cache.class_group(K) if cache else _class_group(K)
        _emit(args, cg.to_json(), [f"h = {cg.h}", "invariants: " + (" ".join(map(str, cg.invariants)) or "trivial")])
    elif cmd == "splits":
        F = _field(args.field)
        B = parse_ram(F, args.B)
        ell = _int(args.l, "l")
        ok = splits_B(B, ell)
        wit = split_witnesses(B, ell)
        _emit(args, {"B": B.label(), "l": ell, "splits": ok, "non_split_at": wit},
              [str(ok).lower()] + ([f"fails at: {' '.join(wit)}"] if wit else []))
    elif cmd == "check-m1":
        F = _field(args.F)
        B = parse_ram(F, args.B)
        cert = check_m1_empty(F, B, _int(args.l, "l"), _int(args.f, "f"), parse_prime(F, args.pF))
        _emit(args, cert, _cert_lines(cert))
        return EXIT_RESOURCE if has_resource_outcome(cert) else EXIT_OK
    elif cmd in ("check-thm13", "check-thm14"):
        F = _field(args.F)
        B = parse_ram(F, args.B)
        k = _field(args.k)
        pF = parse_prime(F, args.pF)
        if cache:
            _warm(cache, k)
        fn = check_thm13 if cmd == "check-thm13" else check_thm14
        cert = fn(F, B, k, pF, workers=args.workers, caps=caps)
        _emit(args, cert, _cert_lines(cert))
        return EXIT_RESOURCE if has_resource_outcome(cert) else EXIT_OK
    elif cmd == "s-set":
        k = _field(args.k)
        F = _field(args.F)
        cg = cache.class_group(k) if cache else _class_group(k)
        S = build_s_set(k, cg, n_lcm(F))
        lines = [f"h = {S.h}; S over {' '.join(map(str, S.ells))}"]
        lines += [f"  {e.prime.label()}  alpha = {e.alpha}" for e in S]
        _emit(args, S.to_json(), lines)
    return EXIT_OK


def _class_group(K):
    return class_group(K)


def _warm(cache: Cache, k: NumberField) -> None:
    try:
        cache.class_group(k)
    except ResourceBoundError:
        pass  # the checker reports it as a resource outcome


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    try:
        return _dispatch(args)
    except (InvalidInputError, NotGaloisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceBoundError as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
