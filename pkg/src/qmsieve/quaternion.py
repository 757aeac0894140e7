"""Totally indefinite quaternion algebras over a totally real field, given by ramification."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Sequence

from .errors import InvalidInputError
from .exact.integers import factor_integer
from .exact.intmat import in_row_span
from .ideals import (
    Ideal,
    PrimeIdeal,
    decompose_prime,
    different,
    relative_discriminant,
    valuation,
)
from .numberfield.field import FieldElement, NumberField
from .numberfield.order import omul, opow_mod


@dataclass(frozen=True)
class QuaternionData:
    field: NumberField
    ram: tuple  # PrimeIdeals of F, canonical order

    def to_json(self) -> dict:
        return {"field": self.field.label, "ram": [P.label() for P in self.ram]}

    def label(self) -> str:
        return "ram:@" + ",".join(P.label() for P in self.ram)


def build_quaternion(F: NumberField, ram: Sequence[PrimeIdeal]) -> QuaternionData:
    if not F.is_totally_real:
        raise InvalidInputError("the base field must be totally real")
    uniq = sorted(set(ram), key=PrimeIdeal.sort_key)
    if len(uniq) != len(ram):
        raise InvalidInputError("repeated ramified prime")
    if not uniq:
        raise InvalidInputError("a division algebra needs at least two ramified primes")
    if len(uniq) % 2:
        raise InvalidInputError(f"odd number ({len(uniq)}) of ramified primes violates reciprocity")
    for P in uniq:
        if P.field is not F:
            raise InvalidInputError("ramified prime of another field")
    return QuaternionData(F, tuple(uniq))


def parse_ram(F: NumberField, text: str) -> QuaternionData:
    """``ram:p1,p2`` (every prime of F above each p) or ``ram:@p.i,...`` (explicit labels)."""
    if not text.startswith("ram:"):
        raise InvalidInputError(f"bad algebra spec {text!r}")
    body = text[4:]
    primes: list[PrimeIdeal] = []
    try:
        if body.startswith("@"):
            for item in body[1:].split(","):
                p, i = item.split(".")
                primes.append(decompose_prime(F, int(p))[int(i)])
        else:
            for item in body.split(","):
                primes.extend(decompose_prime(F, int(item)))
    except (ValueError, IndexError) as exc:
        raise InvalidInputError(f"bad algebra spec {text!r}: {exc}") from None
    return build_quaternion(F, primes)


def disc_BF(B: QuaternionData) -> Ideal:
    I = Ideal.unit(B.field)
    for P in B.ram:
        I = I * P.ideal
    return I


def delta_prime(B: QuaternionData) -> int:
    return prod(sorted({P.p for P in B.ram}))


def delta(B: QuaternionData) -> int:
    ps = {P.p for P in B.ram}
    if abs(B.field.disc) > 1:
        ps |= set(factor_integer(abs(B.field.disc)))
    return prod(sorted(ps))


# --- local squares ---------------------------------------------------------


def _strip(u: FieldElement, P: PrimeIdeal) -> tuple[int, list[int]]:
    """(v_P(u), w) with w an integral P-unit in the square class of u (when v is even)."""
    K = P.field
    w = [a * u.den for a in u.num]  # u * den^2 ~ u in squares
    v = valuation(FieldElement(K, w), P)
    for _ in range(v):
        y = omul(K.table, w, P.gamma)
        w = [a // P.p for a in y]
    return v, w


def _residue_power_is_one(K: NumberField, w, e: int, P: PrimeIdeal) -> bool:
    y = opow_mod(K.table, w, e, P.p)
    y[0] -= 1
    return in_row_span([a % P.p for a in y], P.rows)


def _power_rows(P: PrimeIdeal, k: int):
    return (P.ideal ** k).rows


def _in_ideal(v, rows) -> bool:
    return in_row_span(list(v), rows)


def residue_reps(rows) -> list[tuple[int, ...]]:
    """A complete residue system of O/I for an integral ideal with triangular HNF rows."""
    n = len(rows)
    return list(product(*[range(rows[i][i]) for i in range(n)]))


def is_local_square(u, P: PrimeIdeal) -> bool:
    """Whether u is a square in the completion of F at P."""
    K = P.field
    u = K(u)
    if u.is_zero():
        raise InvalidInputError("is_local_square of zero")
    v, w = _strip(u, P)
    if v % 2:
        return False
    if P.p != 2:
        return _residue_power_is_one(K, w, (P.norm() - 1) // 2, P)
    rows = _power_rows(P, 2 * P.e + 1)
    for x in residue_reps(rows):
        sq = omul(K.table, x, x)
        if _in_ideal([a - b for a, b in zip(sq, w)], rows):
            return True
    return False


def splits_B(B: QuaternionData, ell: int) -> bool:
    """Whether L = F(sqrt(-ell)) splits B, i.e. no ramified prime of B splits in L.

    A ramified prime P splits in L exactly when -ell is a square in F_P (a
    local square also forces P to be unramified in L).
    """
    F = B.field
    for P in B.ram:
        if is_local_square(F(-ell), P):
            return False
    return True


def split_witnesses(B: QuaternionData, ell: int) -> list[str]:
    F = B.field
    return [P.label() for P in B.ram if is_local_square(F(-ell), P)]


def sufficient_condition(B: QuaternionData, k: NumberField) -> tuple[bool, list[str]]:
    """(holds, witnesses): some ramified P with v_P(d_{k/F} D_{F/Q}) = 0."""
    F = B.field
    dk = relative_discriminant(F, k)
    D = different(F)
    I = dk * D
    wit = [P.label() for P in B.ram if valuation(I, P) == 0]
    return bool(wit), wit
