"""Certificate-producing checkers for the emptiness theorems."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from ..classgroup.hilbert import DEFAULT_HCF_BOUND, condition2_check
from ..classgroup.relations import class_group
from ..errors import InvalidInputError
from ..ideals import PrimeIdeal, decompose_prime
from ..numberfield.build import build_field
from ..numberfield.field import NumberField
from ..numberfield.spec import spec_digest, spec_from_json
from ..quaternion import QuaternionData, build_quaternion, delta
from .certificate import FAIL, HEURISTIC, PASS, RESOURCE, check, guarded, make_certificate
from .scan import DEFAULT_SCAN_CAP
from .sets import (
    DEFAULT_ELL_CAP,
    ell2_diagnostic,
    find_ell1,
    fr_elements_in_k,
    galois_exponent_two,
    n1_member,
    n2_threshold,
)
from .sset import build_s_set
from .weil import n_lcm, v_set


@dataclass(frozen=True)
class Caps:
    scan: int = DEFAULT_SCAN_CAP
    ell: int = DEFAULT_ELL_CAP
    hcf: int = DEFAULT_HCF_BOUND


def parse_prime(F: NumberField, text: str) -> PrimeIdeal:
    """``p`` (the unique prime above p, or the first when p splits) or ``p.i``."""
    try:
        if "." in text:
            p, i = text.split(".")
            return decompose_prime(F, int(p))[int(i)]
        ps = decompose_prime(F, int(text))
    except (ValueError, IndexError) as exc:
        raise InvalidInputError(f"bad prime {text!r}: {exc}") from None
    return ps[0]


def _inputs(F: NumberField, k: Optional[NumberField], B: QuaternionData, pF: PrimeIdeal, **extra) -> dict:
    doc = {
        "F": F.spec.to_json(),
        "B": [P.label() for P in B.ram],
        "pF": pF.label(),
        "digests": {"F": spec_digest(F.spec)},
    }
    if k is not None:
        doc["k"] = k.spec.to_json()
        doc["digests"]["k"] = spec_digest(k.spec)
    doc.update(extra)
    return doc


def _split_over_q(F: NumberField, pF: PrimeIdeal) -> dict:
    ok = pF.f == 1 and pF.e == 1 and F.disc % pF.p != 0
    return check("p_F splits totally over Q", PASS if ok else FAIL, prime=pF.label(), f=pF.f, e=pF.e)


# --- M_1 ---------------------------------------------------------------------


def check_m1_empty(F: NumberField, B: QuaternionData, ell: int, f: int, pF: PrimeIdeal) -> dict:
    V = v_set(F, ell, f)
    in_v = pF in V
    in_ram = pF in B.ram
    checks = [
        check("p_F not in V(ell^f)", FAIL if in_v else PASS, V=[P.label() for P in V]),
        check("p_F not in Ram(B/F)", FAIL if in_ram else PASS, ram=[P.label() for P in B.ram]),
    ]
    return make_certificate("M1-empty", _inputs(F, None, B, pF, ell=ell, f=f), checks)


# --- theorem with the four conditions ---------------------------------------------


def _cond_class_number(k: NumberField, d: int) -> dict:
    name = "condition 1: gcd(h_k, d) = 1"

    def run():
        cg = class_group(k)
        return check(name, PASS if gcd(cg.h, d) == 1 else FAIL, h=cg.h, invariants=list(cg.invariants), d=d)

    return guarded(name, run)


def _cond_ell2(B: QuaternionData, k: NumberField, n: int, caps: Caps, name: str):
    holder = {}

    def run():
        thr = n2_threshold(B, k, n, caps.ell)
        if thr is None:
            return check(name, RESOURCE, cap="ell search cap", bound=caps.ell, **ell2_diagnostic(B, k))
        holder["thr"] = thr
        ell0, f0, X = thr
        return check(name, PASS, ell0=ell0, f0=f0, X=str(X))

    return guarded(name, run), holder.get("thr")


def _exceptional_membership(name: str, k, F, B, pF, n, thr, S_builder, workers, caps) -> dict:
    def run():
        p = pF.p
        if thr is None:
            return check(name, RESOURCE, cap="ell search cap", detail="N_2 threshold unavailable")
        X = thr[2]
        if p < X:
            return check(name, FAIL, set="N2", X=str(X))
        if delta(B) % p == 0:
            return check(name, FAIL, set="Delta", delta=delta(B))
        S = S_builder()
        res = n1_member(k, F, S, n, pF, workers=workers, cap=caps.scan)
        data = {"X": str(X), "S": [e.prime.label() for e in S], "S_ells": list(S.ells), **res}
        return check(name, FAIL if res["member"] else PASS, **data)

    return guarded(name, run)


def check_thm13(F: NumberField, B: QuaternionData, k: NumberField, pF: PrimeIdeal, workers: int = 1,
                caps: Caps = Caps()) -> dict:
    _validate(F, B, k, pF)
    d = F.n
    n = n_lcm(F)
    checks = [_cond_class_number(k, d)]
    c2 = guarded("condition 2: no imaginary quadratic Hilbert class field in k", lambda: condition2_check(k, caps.hcf))
    checks.append(c2)
    c3, thr = _cond_ell2(B, k, n, caps, "condition 3: some ell with odd inertia degree and F(sqrt(-ell)) not splitting B")
    checks.append(c3)
    c4 = d == 1 or (d == 2 and galois_exponent_two(k))
    checks.append(check("condition 4: d = 1, or d = 2 with Gal(k/Q) of exponent 2", PASS if c4 else FAIL, d=d))
    checks.append(_split_over_q(F, pF))

    def s_builder():
        return build_s_set(k, class_group(k), n)

    checks.append(_exceptional_membership("p_F not in N_3(k)", k, F, B, pF, n, thr, s_builder, workers, caps))
    return make_certificate("M0-empty", _inputs(F, k, B, pF, n_lcm=n), checks)


def check_thm14(F: NumberField, B: QuaternionData, k: NumberField, pF: PrimeIdeal, workers: int = 1,
                caps: Caps = Caps()) -> dict:
    _validate(F, B, k, pF)
    n = n_lcm(F)
    holder = {}
    name1 = "condition 1': some split ell_1 with no element of FR(ell_1) in k"

    def run1():
        cg = class_group(k)
        ell1 = find_ell1(F, k, n, cg.h, caps.ell)
        if ell1 is None:
            return check(name1, RESOURCE, cap="ell search cap", bound=caps.ell, h=cg.h)
        holder["ell1"] = ell1
        return check(name1, PASS, ell1=ell1, h=cg.h)

    checks = [guarded(name1, run1)]
    c2, thr = _cond_ell2(B, k, n, caps, "condition 2': some ell with odd inertia degree and F(sqrt(-ell)) not splitting B")
    checks.append(c2)
    checks.append(_split_over_q(F, pF))
    if "ell1" in holder:
        def s_builder():
            return build_s_set(k, class_group(k), n, extra_ells=[holder["ell1"]])

        checks.append(_exceptional_membership("p_F not in N_4(k)", k, F, B, pF, n, thr, s_builder, workers, caps))
    else:
        checks.append(check("p_F not in N_4(k)", RESOURCE, detail="S cannot be enlarged without ell_1"))
    return make_certificate("M0-empty-variant", _inputs(F, k, B, pF, n_lcm=n), checks)


def _validate(F: NumberField, B: QuaternionData, k: NumberField, pF: PrimeIdeal) -> None:
    if not F.is_totally_real:
        raise InvalidInputError("F must be totally real")
    if k.is_totally_real or k.n % F.n:
        raise InvalidInputError("k must be a totally imaginary field containing F")
    if B.field is not F or pF.field is not F:
        raise InvalidInputError("B and p_F must live over F")
    from ..numberfield.galois import automorphisms, embedding

    automorphisms(k)
    embedding(F, k)


# --- re-running from recorded inputs ------------------------------------------


def rerun(theorem: str, inputs: dict, workers: int = 1) -> dict:
    F = build_field(spec_from_json(inputs["F"]))
    ram = [parse_prime(F, lab) for lab in inputs["B"]]
    B = build_quaternion(F, ram)
    pF = parse_prime(F, inputs["pF"])
    if theorem == "M1-empty":
        return check_m1_empty(F, B, inputs["ell"], inputs["f"], pF)
    k = build_field(spec_from_json(inputs["k"]))
    if theorem == "M0-empty":
        return check_thm13(F, B, k, pF, workers=workers)
    if theorem == "M0-empty-variant":
        return check_thm14(F, B, k, pF, workers=workers)
    raise InvalidInputError(f"unknown theorem {theorem!r}")


__all__ = ["Caps", "check_m1_empty", "check_thm13", "check_thm14", "fr_elements_in_k", "parse_prime", "rerun", "HEURISTIC"]
