"""Field specifications, their canonical JSON form, and the inline mini-grammar.

Grammar (used by the CLI)::

    Q                       the rationals
    realquad:m              Q(sqrt m), m > 0 squarefree
    quad:m                  Q(sqrt m), any squarefree m != 1
    poly:c0,c1,...,1        Q[x]/(p) for a monic totally real irreducible p
    multiquad:m1,m2,...     Q(sqrt m1, sqrt m2, ...)
    relquad:<base>:<delta>  base(sqrt delta); delta an integer or a
                            comma list of coordinates on the base integral basis
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Union

from ..errors import InvalidInputError


@dataclass(frozen=True)
class Rationals:
    def to_json(self) -> dict:
        return {"type": "rationals"}

    def label(self) -> str:
        return "Q"


@dataclass(frozen=True)
class Quadratic:
    """Q(sqrt m) for a squarefree integer m != 0, 1 (either sign)."""

    m: int

    def to_json(self) -> dict:
        return {"type": "quadratic", "m": self.m}

    def label(self) -> str:
        return f"quad:{self.m}"


def RealQuadratic(m: int) -> Quadratic:
    if m <= 1:
        raise InvalidInputError(f"real quadratic needs m > 1, got {m}")
    return Quadratic(m)


@dataclass(frozen=True)
class TotallyRealPoly:
    coeffs: tuple[int, ...]

    def to_json(self) -> dict:
        return {"type": "totally_real_poly", "coeffs": list(self.coeffs)}

    def label(self) -> str:
        return "poly:" + ",".join(map(str, self.coeffs))


@dataclass(frozen=True)
class Multiquadratic:
    ms: tuple[int, ...]

    def to_json(self) -> dict:
        return {"type": "multiquadratic", "ms": list(self.ms)}

    def label(self) -> str:
        return "multiquad:" + ",".join(map(str, self.ms))


@dataclass(frozen=True)
class RelativeQuadratic:
    base: "FieldSpec"
    delta: tuple[int, ...]  # coordinates on the integral basis of the base field

    def to_json(self) -> dict:
        return {"type": "relative_quadratic", "base": self.base.to_json(), "delta": list(self.delta)}

    def label(self) -> str:
        d = str(self.delta[0]) if not any(self.delta[1:]) else ",".join(map(str, self.delta))
        return f"relquad:{self.base.label()}:{d}"


@dataclass(frozen=True)
class ExplicitOrder:
    """Escape hatch: an order given by its multiplication table, asserted maximal.

    ``table[i][j]`` lists the coordinates of w_i * w_j; w_0 must be 1.
    ``conj`` optionally gives complex conjugation on the basis (CM fields);
    without it the field is treated as totally real.
    """

    table: tuple
    disc: int
    conj: tuple | None = None

    def to_json(self) -> dict:
        out = {"type": "explicit_order", "table": [[list(c) for c in r] for r in self.table], "disc": self.disc}
        if self.conj is not None:
            out["conj"] = [list(r) for r in self.conj]
        return out

    def label(self) -> str:
        return "explicit:" + spec_digest(self)[:12]


FieldSpec = Union[Rationals, Quadratic, TotallyRealPoly, Multiquadratic, RelativeQuadratic, ExplicitOrder]


def canonical_json(spec: FieldSpec) -> str:
    return json.dumps(spec.to_json(), sort_keys=True, separators=(",", ":"))


def spec_digest(spec: FieldSpec) -> str:
    return hashlib.sha256(canonical_json(spec).encode()).hexdigest()


def spec_from_json(doc: dict) -> FieldSpec:
    t = doc.get("type")
    if t == "rationals":
        return Rationals()
    if t == "quadratic":
        return Quadratic(int(doc["m"]))
    if t == "totally_real_poly":
        return TotallyRealPoly(tuple(int(c) for c in doc["coeffs"]))
    if t == "multiquadratic":
        return Multiquadratic(tuple(int(m) for m in doc["ms"]))
    if t == "relative_quadratic":
        return RelativeQuadratic(spec_from_json(doc["base"]), tuple(int(c) for c in doc["delta"]))
    if t == "explicit_order":
        table = tuple(tuple(tuple(int(x) for x in c) for c in r) for r in doc["table"])
        conj = doc.get("conj")
        conj = tuple(tuple(int(x) for x in r) for r in conj) if conj is not None else None
        return ExplicitOrder(table, int(doc["disc"]), conj)
    raise InvalidInputError(f"unknown field spec type {t!r}")


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InvalidInputError(f"bad integer list {text!r}") from exc


def parse_field(text: str) -> FieldSpec:
    """Parse the inline grammar described in the module docstring."""
    text = text.strip()
    if text.startswith("k:"):
        text = text[2:]
    if text in ("Q", "QQ", "rationals"):
        return Rationals()
    head, _, rest = text.partition(":")
    if head == "realquad":
        (m,) = _ints(rest) or (0,)
        return RealQuadratic(m)
    if head == "quad":
        (m,) = _ints(rest) or (0,)
        return Quadratic(m)
    if head == "poly":
        return TotallyRealPoly(_ints(rest))
    if head == "multiquad":
        return Multiquadratic(_ints(rest))
    if head == "relquad":
        base_text, sep, delta_text = rest.rpartition(":")
        if not sep:
            raise InvalidInputError("relquad needs relquad:<base>:<delta>")
        return RelativeQuadratic(parse_field(base_text), _ints(delta_text))
    if head == "json":
        return spec_from_json(json.loads(rest))
    raise InvalidInputError(f"cannot parse field spec {text!r}")
