"""Galois-closed sets S of totally split primes of k whose classes generate Cl_k."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..classgroup.relations import ClassGroupData, ideal_class_dlog, principal_generator
from ..errors import ResourceBoundError
from ..exact.integers import primes_from
from ..exact.intmat import Lattice, vecmat
from ..ideals import Ideal, PrimeIdeal, decompose_prime, splits_totally
from ..numberfield.field import FieldElement, NumberField
from ..numberfield.galois import automorphisms

DEFAULT_S_SCAN_CAP = 10_000

@dataclass
class SEntry:
    prime: PrimeIdeal
    alpha: FieldElement
    ell: int

    def to_json(self) -> dict:
        return {"prime": self.prime.label(), "ell": self.ell, "alpha": self.alpha.to_json()}

@dataclass
class SSet:
    field: NumberField
    h: int
    entries: list = field(default_factory=list)
    ells: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def primes(self) -> list[PrimeIdeal]:
        return [e.prime for e in self.entries]

    def to_json(self) -> dict:
        return {"field": self.field.label, "h": self.h, "ells": list(self.ells), "entries": [e.to_json() for e in self.entries]}

def apply_aut_ideal(K: NumberField, A, I: Ideal) -> Ideal:
    return Ideal(K, [vecmat(r, A) for r in I.rows], I.den)

def in_Mk(k: NumberField, ell: int, n: int, h: int) -> bool:
    """ell splits totally in k and is coprime to n_lcm * h_k (then it is unramified in F too)."""
    return (n * h) % ell != 0 and splits_totally(k, ell)

def _orbit_entries(k: NumberField, ell: int, h: int, cg: ClassGroupData) -> list[SEntry]:
    primes = decompose_prime(k, ell)
    q0 = primes[0]
    alpha = principal_generator(q0.ideal ** h, cg)
    if alpha is None:
        raise ArithmeticError("q^h is not principal")
    out = {}
    for A in automorphisms(k):
        img = apply_aut_ideal(k, A, q0.ideal)
        for Q in primes:
            if Q.ideal == img and Q.index not in out:
                out[Q.index] = SEntry(Q, k.apply_matrix(A, alpha), ell)
    if len(out) != len(primes):
        raise ArithmeticError("Galois orbit does not cover the primes above ell")
    return [out[i] for i in sorted(out)]

def _generated_index(vectors: Iterable[tuple], invariants: tuple) -> int:
    r = len(invariants)
    if r == 0:
        return 1
    lat = Lattice(r)
    for i, d in enumerate(invariants):
        lat.add([d if j == i else 0 for j in range(r)])
    for v in vectors:
        lat.add(list(v))
    return lat.determinant()

def build_s_set(k: NumberField, cg: ClassGroupData, n: int, extra_ells: Iterable[int] = (),
                cap: int = DEFAULT_S_SCAN_CAP) -> SSet:
    """Scan admissible primes in increasing order until their classes generate Cl_k."""
    h = cg.h
    S = SSet(k, h)
    dlogs = []
    for ell in primes_from(2):
        if ell > cap:
            raise ResourceBoundError("S scan cap", f"no generating set among primes up to {cap}")
        if not in_Mk(k, ell, n, h):
            continue
        ents = _orbit_entries(k, ell, h, cg)
        S.entries += ents
        S.ells.append(ell)
        dlogs += [ideal_class_dlog(cg, e.prime.ideal) for e in ents]
        if _generated_index(dlogs, cg.invariants) == 1:
            break
    for ell in sorted(set(extra_ells)):
        if ell in S.ells:
            continue
        if not in_Mk(k, ell, n, h):
            raise ValueError(f"{ell} is not an admissible split prime")
        S.entries += _orbit_entries(k, ell, h, cg)
        S.ells.append(ell)
    return S
