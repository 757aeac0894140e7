"""Weil-number classes FR(q^f), the exceptional prime sets W and V, n_lcm and the torsion bound."""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from ..errors import InvalidInputError
from ..exact.integers import euler_phi, is_prime, primes_up_to
from ..exact.poly import real_cyclotomic
from ..ideals import PrimeIdeal, decompose_prime, different, factor_ideal, factor_principal
from ..numberfield.enumeration import DEFAULT_BOX_CAP, enumerate_box
from ..numberfield.field import FieldElement, NumberField, is_totally_neg, is_totally_nonneg
from ..numberfield.galois import eval_poly

ZERO = "Zero"
TOTALLY_NEGATIVE = "TotallyNegative"
MIXED = "MixedNonpositive"


def _require_totally_real(F: NumberField) -> None:
    if not F.is_totally_real:
        raise InvalidInputError(f"{F.label} is not totally real")


def nlcm_candidates(d: int) -> list[int]:
    """All m with phi(m) | 2d (phi(m) >= sqrt(m/2) bounds the search by 8 d^2)."""
    return [m for m in range(1, 8 * d * d + 7) if (2 * d) % euler_phi(m) == 0]


def n_lcm(F: NumberField) -> int:
    """lcm of all m with [F(zeta_m) : F] <= 2, i.e. with 2cos(2 pi/m) in F."""
    _require_totally_real(F)
    key = "n_lcm"
    if key in F._cache:
        return F._cache[key]
    box = enumerate_box(F, 4)
    out = 1
    for m in nlcm_candidates(F.n):
        psi = real_cyclotomic(m)
        if psi.degree > F.n or F.n % psi.degree:
            continue
        if any(eval_poly(F, psi, x).is_zero() for x in box):
            out = lcm(out, m)
    if out % 12:
        raise ArithmeticError(f"n_lcm = {out} is not divisible by 12")
    F._cache[key] = out
    return out


@dataclass(frozen=True)
class WeilClass:
    b: FieldElement
    q: int
    f: int
    disc_status: str
    contribution: FieldElement

    @property
    def disc(self) -> FieldElement:
        return self.b * self.b - 4 * self.q ** self.f

    def to_json(self) -> dict:
        return {"b": self.b.to_json(), "disc_status": self.disc_status, "contribution": self.contribution.to_json()}


@dataclass(frozen=True)
class FRSet:
    field: NumberField
    q: int
    f: int
    classes: tuple

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def to_json(self) -> dict:
        return {"field": self.field.label, "q": self.q, "f": self.f, "classes": [c.to_json() for c in self.classes]}


def weil_class(F: NumberField, b: FieldElement, q: int, f: int) -> WeilClass:
    Q = q ** f
    disc = b * b - 4 * Q
    if not is_totally_nonneg(-disc):
        raise InvalidInputError("b violates the archimedean bound")
    if disc.is_zero():
        status = ZERO
        contribution = (b + 2) / 2
        if not contribution.is_integral():
            raise ArithmeticError("degenerate contribution is not integral")
    else:
        status = TOTALLY_NEGATIVE if is_totally_neg(disc) else MIXED
        contribution = b + (1 + Q)
    if contribution.is_zero():
        raise ArithmeticError("zero contribution")
    return WeilClass(b, q, f, status, contribution)


def fr_set(F: NumberField, q: int, f: int = 1, cap: int = DEFAULT_BOX_CAP) -> FRSet:
    """All b in O_F with 4q^f - b^2 totally nonnegative, as Weil classes in canonical order."""
    _require_totally_real(F)
    if not is_prime(q) or f < 1:
        raise InvalidInputError("q must be prime and f positive")
    key = ("fr", q, f)
    if key in F._cache:
        return F._cache[key]
    classes = tuple(weil_class(F, b, q, f) for b in enumerate_box(F, 4 * q ** f, cap))
    out = FRSet(F, q, f, classes)
    F._cache[key] = out
    return out


def _sorted_primes(ps) -> list[PrimeIdeal]:
    return sorted(set(ps), key=PrimeIdeal.sort_key)


def w_set(F: NumberField, ell: int, f: int = 1) -> list[PrimeIdeal]:
    """Primes of F dividing ell, the different, or some class contribution."""
    out = list(decompose_prime(F, ell))
    out += factor_ideal(different(F)).primes()
    for c in fr_set(F, ell, f):
        out += factor_principal(F, c.contribution).primes()
    return _sorted_primes(out)


def small_norm_primes(F: NumberField, bound: int) -> list[PrimeIdeal]:
    """Primes of F of norm < bound."""
    out = []
    for p in primes_up_to(bound - 1):
        out += [P for P in decompose_prime(F, p) if P.norm() < bound]
    return out


def v_set(F: NumberField, ell: int, f: int = 1) -> list[PrimeIdeal]:
    return _sorted_primes(w_set(F, ell, f) + small_norm_primes(F, 4 ** F.n))


def torsion_bound(F: NumberField, ell: int, f: int = 1) -> int:
    """ell times the product of |N(contribution)| (squared for conjugate pairs)."""
    N = ell
    for c in fr_set(F, ell, f):
        nm = abs(c.contribution.norm())
        if nm.denominator != 1:
            raise ArithmeticError("non-integral contribution norm")
        N *= int(nm) ** (1 if c.disc_status == ZERO else 2)
    return N


def prime_labels(ps) -> list[str]:
    return [P.label() for P in ps]
