"""Does a Galois field k contain the Hilbert class field of an imaginary quadratic subfield?"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InvalidInputError
from ..exact.integers import factor_integer, primes_up_to
from ..ideals import splits_totally
from ..numberfield.field import NumberField
from ..numberfield.galois import quadratic_subfields
from ..numberfield.sqrt import sqrt_in_field
from .bqf import bqf_class_group, field_discriminant, identity_form, prime_form

DEFAULT_HCF_BOUND = 1000

CONTAINS = "contains"
NOT_CONTAINS = "not_contains"
NO_WITNESS = "no_witness"


@dataclass
class HCFVerdict:
    kind: str
    step: str
    data: dict = field(default_factory=dict)

    @property
    def heuristic(self) -> bool:
        return self.kind == NO_WITNESS

    def to_json(self) -> dict:
        return {"verdict": self.kind, "step": self.step, **self.data}


def prime_discriminants(D: int) -> list[int]:
    """The prime discriminants whose product is the fundamental discriminant D."""
    out = []
    rest = D
    for p in sorted(factor_integer(abs(D))):
        if p == 2:
            continue
        ps = p if p % 4 == 1 else -p
        out.append(ps)
        rest //= ps
    if rest != 1:
        if rest not in (-4, 8, -8):
            raise ArithmeticError(f"unexpected dyadic part {rest} of {D}")
        out.append(rest)
    return sorted(out)


def hilbert_containment(k: NumberField, m: int, bound: int = DEFAULT_HCF_BOUND) -> HCFVerdict:
    """Decide whether H_M is contained in k for M = Q(sqrt m), m < 0 squarefree."""
    if m >= 0:
        raise InvalidInputError("M must be imaginary quadratic")
    if m not in quadratic_subfields(k):
        raise InvalidInputError(f"Q(sqrt({m})) is not a subfield of {k.label}")
    D = field_discriminant(m)
    h, inv = bqf_class_group(D)
    base = {"m": m, "D": D, "h": h, "invariants": list(inv)}
    if h == 1:
        return HCFVerdict(CONTAINS, "class number one", base)
    degree = k.n // 2
    if degree % h:
        return HCFVerdict(NOT_CONTAINS, "degree obstruction", {**base, "relative_degree": degree})
    if all(d == 2 for d in inv):
        gens = prime_discriminants(D)
        missing = [g for g in gens if sqrt_in_field(k, k(g)) is None]
        data = {**base, "genus_generators": gens, "missing": missing}
        if missing:
            return HCFVerdict(NOT_CONTAINS, "genus field", data)
        return HCFVerdict(CONTAINS, "genus field", data)
    one = identity_form(D)
    sampled = 0
    for q in primes_up_to(bound):
        if D % q == 0 or k.disc % q == 0:
            continue
        if not splits_totally(k, q):
            continue
        sampled += 1
        f = prime_form(D, q)
        if f is not None and f != one:
            return HCFVerdict(NOT_CONTAINS, "split prime witness", {**base, "witness": q, "form": list(f)})
    return HCFVerdict(NO_WITNESS, "split prime sampling", {**base, "bound": bound, "sampled": sampled})


def condition2_check(k: NumberField, bound: int = DEFAULT_HCF_BOUND) -> dict:
    """Check that k contains no Hilbert class field of an imaginary quadratic field.

    Outcome "pass" when every imaginary quadratic subfield is NotContains,
    "heuristic" when some subfield ended without a witness, "fail" otherwise.
    """
    verdicts = {}
    outcome = "pass"
    for m in quadratic_subfields(k):
        if m > 0:
            continue
        v = hilbert_containment(k, m, bound)
        verdicts[str(m)] = v.to_json()
        if v.kind == CONTAINS:
            outcome = "fail"
        elif v.kind == NO_WITNESS and outcome == "pass":
            outcome = "heuristic"
    return {"name": "condition 2: no imaginary quadratic Hilbert class field in k", "outcome": outcome,
            "data": {"subfields": verdicts}}
