"""Class groups of number fields via relation lattices over a Minkowski factor base.

Relations are valuation vectors of principal ideals (alpha), with alpha taken
among short vectors of LLL-reduced ideal lattices.  The index of the relation
lattice is a multiple of h; it is accepted once every factor-base prime occurs
in some relation and the index survives a further batch at doubled search radius.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import InvalidInputError, ResourceBoundError
from ..exact.integers import primes_up_to
from ..exact.intmat import Lattice, det, lll_gram, matmul, rat_inverse, snf_with_transform, transpose
from ..ideals import Ideal, PrimeIdeal, decompose_prime, factor_ideal, valuation
from ..numberfield.enumeration import short_vectors
from ..numberfield.field import FieldElement, NumberField

RELATION_SEED = 0xC1A55
MAX_ROUNDS = 12
CANDIDATE_CAP = 4000


def minkowski_bound(K: NumberField) -> int:
    """An integer >= the Minkowski bound of K (float evaluation with a safety margin)."""
    n = K.n
    r2 = K.signature[1]
    logm = 0.5 * math.log(abs(K.disc)) + r2 * math.log(4 / math.pi) + math.lgamma(n + 1) - n * math.log(n)
    return int(math.exp(logm) * (1 + 1e-9)) + 1


@dataclass
class ClassGroupData:
    field: NumberField
    h: int
    invariants: tuple
    factor_base: list  # PrimeIdeal, ascending by norm
    fb_dlog: list  # tuple per factor-base prime
    generators: list  # exponent vectors over the factor base, one per invariant
    bound: int
    relations: int
    radius: int
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "field": self.field.label,
            "h": self.h,
            "invariants": list(self.invariants),
            "minkowski_bound": self.bound,
            "factor_base_size": len(self.factor_base),
            "relations": self.relations,
            "final_radius": self.radius,
        }

    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1


class _Relator:
    def __init__(self, K: NumberField, fb: list[PrimeIdeal]):
        self.K = K
        self.fb = fb
        self.pos = {id(P): i for i, P in enumerate(fb)}
        self.by_p: dict[int, list[int]] = {}
        for i, P in enumerate(fb):
            self.by_p.setdefault(P.p, []).append(i)
        self.fb_primes = sorted(self.by_p)
        self.full_p = {p for p in self.fb_primes if len(self.by_p[p]) == len(decompose_prime(K, p))}

    def norm_int(self, v: Sequence[int]) -> int:
        return abs(det(self.K.mult_matrix(v)))

    def relation(self, v: Sequence[int], allow: Optional[PrimeIdeal] = None):
        """FB valuation vector of (alpha) (plus the valuation at ``allow``) or None if not smooth."""
        N = self.norm_int(v)
        if N == 0:
            return None
        vec = [0] * len(self.fb)
        extra = 0
        if allow is not None:
            extra = valuation(FieldElement(self.K, v), allow)
            N //= allow.norm() ** extra
        for p in self.fb_primes:
            if N % p:
                continue
            k = 0
            while N % p == 0:
                N //= p
                k += 1
            tot = 0
            for i in self.by_p[p]:
                P = self.fb[i]
                if allow is not None and P == allow:
                    continue
                a = valuation(FieldElement(self.K, v), P)
                vec[i] = a
                tot += a * P.f
            if tot != k:
                return None
        if N != 1:
            return None
        return vec, extra


def _ideal_gram(K: NumberField, rows) -> list[list[Fraction]]:
    B = [list(r) for r in rows]
    return matmul(matmul(B, K.t2_gram), transpose(B))


def _candidates(K: NumberField, I: Ideal, radius: int) -> list[tuple[int, ...]]:
    """Short elements of the integral ideal I: T2 <= radius * T2(shortest reduced basis vector)."""
    rows = [list(r) for r in I.rows]
    gram = _ideal_gram(K, rows)
    T = lll_gram(gram)
    red = matmul(T, rows)
    t2s = [K.t2(FieldElement(K, r)) for r in red]
    bound = min(t2s) * radius
    try:
        coeffs = short_vectors(_ideal_gram(K, red), bound, cap=CANDIDATE_CAP)
    except ResourceBoundError:
        coeffs = [tuple(int(i == j) for j in range(K.n)) for i in range(K.n)]
    out = []
    seen = set()
    for c in coeffs:
        if not any(c):
            continue
        v = [0] * K.n
        for a, r in zip(c, red):
            if a:
                for j, x in enumerate(r):
                    v[j] += a * x
        v = tuple(v)
        neg = tuple(-x for x in v)
        if v in seen or neg in seen:
            continue
        seen.add(v)
        out.append(v)
    return out


def factor_base(K: NumberField, bound: Optional[int] = None) -> list[PrimeIdeal]:
    bound = minkowski_bound(K) if bound is None else bound
    fb = []
    for p in primes_up_to(bound):
        for P in decompose_prime(K, p):
            if P.norm() <= bound:
                fb.append(P)
    fb.sort(key=lambda P: (P.norm(), P.p, P.index))
    return fb


def class_group(K: NumberField, seed: int = RELATION_SEED) -> ClassGroupData:
    """Class number, invariants and discrete-log data of K (cached on the field)."""
    key = ("classgroup", seed)
    if key in K._cache:
        return K._cache[key]
    if K.n == 1:
        cg = ClassGroupData(K, 1, (), [], [], [], 1, 0, 0)
        K._cache[key] = cg
        return cg
    bound = minkowski_bound(K)
    fb = factor_base(K, bound)
    k = len(fb)
    if k == 0:
        cg = ClassGroupData(K, 1, (), [], [], [], bound, 0, 0)
        K._cache[key] = cg
        return cg
    rel = _Relator(K, fb)
    rng = random.Random(seed)
    # columns ordered by descending norm, so large primes become pivots first
    col = [k - 1 - i for i in range(k)]
    lat = Lattice(k)
    seen_rows = set()
    nrel = 0
    touched = [False] * k

    def add_relation(vec):
        nonlocal nrel
        r = [0] * k
        for i, a in enumerate(vec):
            r[col[i]] = a
        t = tuple(r)
        if t in seen_rows or not any(t):
            return
        seen_rows.add(t)
        nrel += 1
        for i, a in enumerate(vec):
            if a:
                touched[i] = True
        lat.add(r)
        if lat.modulus is None and lat.rank() == k:
            D = lat.determinant()
            lat.modulus = D
            for c in list(lat.rows):
                lat.rows[c] = [x % D if j > c else x for j, x in enumerate(lat.rows[c])]
            lat._normalize()

    def harvest(I: Ideal, radius: int):
        for v in _candidates(K, I, radius):
            r = rel.relation(v)
            if r is not None:
                add_relation(r[0])

    small = fb[: min(k, 8)]

    def random_ideal(P: PrimeIdeal) -> Ideal:
        I = P.ideal
        for _ in range(rng.randrange(0, 3)):
            I = I * rng.choice(small).ideal
        return I

    radius = 2
    # phase 1: every factor-base prime, then random products, until full rank
    for P in reversed(fb):
        harvest(P.ideal, radius)
    tries = 0
    while lat.rank() < k or not all(touched):
        tries += 1
        if tries > 40 * k + 200:
            raise ResourceBoundError("relation search", f"rank {lat.rank()} of {k} after {tries} extra ideals")
        if tries % (4 * k + 8) == 0:
            radius *= 2
        harvest(random_ideal(rng.choice(fb)), radius)
    # phase 2: a batch at doubled radius must leave the index unchanged
    rounds = 0
    while True:
        rounds += 1
        if rounds > MAX_ROUNDS:
            raise ResourceBoundError("relation search", "relation index did not stabilize")
        before = lat.determinant()
        radius *= 2
        for P in reversed(fb):
            harvest(random_ideal(P), radius)
        if lat.determinant() == before:
            break
    cg = _structure(K, fb, lat, col, bound, nrel, radius)
    K._cache[key] = cg
    return cg


def _structure(K, fb, lat: Lattice, col, bound, nrel, radius) -> ClassGroupData:
    k = len(fb)
    h = lat.determinant()
    H = lat.basis_rows()  # upper triangular, column c <-> fb index k-1-c
    piv = [H[c][c] for c in range(k)]
    ess = [c for c in range(k) if piv[c] != 1]
    epos = {c: i for i, c in enumerate(ess)}
    m = len(ess)
    # X[c]: class of column c in terms of essential columns, modulo h
    X: list[list[int]] = [None] * k  # type: ignore
    for c in range(k - 1, -1, -1):
        if c in epos:
            v = [0] * m
            v[epos[c]] = 1
        else:
            v = [0] * m
            for j in range(c + 1, k):
                a = H[c][j]
                if a:
                    v = [(x - a * y) % h for x, y in zip(v, X[j])]
        X[c] = v
    R = []
    for c in ess:
        r = [0] * m
        r[epos[c]] = H[c][c]
        for j in range(c + 1, k):
            a = H[c][j]
            if a:
                r = [x + a * y for x, y in zip(r, X[j])]
        R.append([x % h if i != epos[c] else x for i, x in enumerate(r)])
    # h * Z^m lies in the relation span, so adjoin it to keep entries bounded
    if m:
        Rfull = R + [[h * int(i == j) for j in range(m)] for i in range(m)]
        diag, U, V = snf_with_transform(Rfull)
    else:
        diag, V = [], []
    keep = [i for i, d in enumerate(diag[:m]) if d != 1]
    invariants = tuple(diag[i] for i in keep)
    if math.prod(invariants) != h:
        raise ArithmeticError("Smith form does not match the relation index")
    fb_dlog = [None] * k
    for i in range(k):
        x = X[col[i]]
        y = [sum(x[a] * V[a][b] for a in range(m)) for b in range(m)] if m else []
        fb_dlog[i] = tuple(y[b] % diag[b] for b in keep)
    # generators: rows of V^{-1}, pulled back to factor-base exponent vectors
    gens = []
    if m:
        Vinv = rat_inverse(V)
        for b in keep:
            e = [0] * k
            for a in range(m):
                c = int(Vinv[b][a])
                i = col.index(ess[a])
                e[i] = c % h
            gens.append(tuple(e))
    return ClassGroupData(K, h, invariants, list(fb), fb_dlog, gens, bound, nrel, radius)


# --- discrete logarithms and principal generators -------------------------


def _prime_dlog(cg: ClassGroupData, P: PrimeIdeal) -> tuple:
    for i, Q in enumerate(cg.factor_base):
        if Q == P:
            return cg.fb_dlog[i]
    K = cg.field
    rel = _Relator(K, cg.factor_base)
    rng = random.Random(RELATION_SEED ^ P.p)
    radius = 2
    for attempt in range(400):
        I = P.ideal
        if attempt:
            for _ in range(rng.randrange(0, 3)):
                I = I * rng.choice(cg.factor_base[:8]).ideal
        for v in _candidates(K, I, radius):
            r = rel.relation(v, allow=P)
            if r is not None and r[1] == 1:
                # (alpha) = P * prod Q^vec  =>  [P] = -sum vec [Q]
                out = [0] * len(cg.invariants)
                for i, a in enumerate(r[0]):
                    if a:
                        out = [x + a * y for x, y in zip(out, cg.fb_dlog[i])]
                return tuple((-x) % d for x, d in zip(out, cg.invariants))
        if attempt % 50 == 49:
            radius *= 2
    raise ResourceBoundError("relation search", f"no smooth relation for prime {P.label()}")


def ideal_class_dlog(cg: ClassGroupData, I: Ideal) -> tuple:
    """Coordinates of [I] with respect to the invariant-factor generators."""
    if I.field is not cg.field:
        raise InvalidInputError("ideal belongs to another field")
    out = [0] * len(cg.invariants)
    for P, e in factor_ideal(I).factors:
        d = _prime_dlog(cg, P)
        out = [x + e * y for x, y in zip(out, d)]
    return tuple(x % d for x, d in zip(out, cg.invariants))


def ideal_from_exponents(cg: ClassGroupData, e: Sequence[int]) -> Ideal:
    I = Ideal.unit(cg.field)
    for P, a in zip(cg.factor_base, e):
        if a:
            I = I * (P.ideal ** a)
    return I


def principal_generator(I: Ideal, cg: Optional[ClassGroupData] = None, max_doublings: int = 12,
                        cap: int = 2 * 10**5) -> Optional[FieldElement]:
    """A generator of the integral ideal I, or None if I is not principal.

    Searches shells of growing T2 radius in the reduced ideal lattice.  When a
    class group is given, non-principality is decided by the discrete log;
    otherwise an exhausted search raises ResourceBoundError.
    """
    K = I.field
    if not I.is_integral():
        raise InvalidInputError("principal_generator expects an integral ideal")
    if cg is not None and any(ideal_class_dlog(cg, I)):
        return None
    N = I.numerator_norm()
    n = K.n
    rows = [list(r) for r in I.rows]
    gram = _ideal_gram(K, rows)
    base = n * N ** (2 / n)
    for k in range(max_doublings + 1):
        bound = Fraction(math.ceil(base * 2 ** k * 1.0001))
        try:
            coeffs = short_vectors(gram, bound, cap=cap)
        except ResourceBoundError:
            break
        found = []
        for c in coeffs:
            if not any(c):
                continue
            v = [0] * n
            for a, r in zip(c, rows):
                if a:
                    for j, x in enumerate(r):
                        v[j] += a * x
            if abs(det(K.mult_matrix(v))) == N:
                found.append(FieldElement(K, v))
        if found:
            found.sort(key=lambda x: (K.t2(x), x.sort_key()))
            g = found[0]
            if Ideal.principal(K, g) != I:
                raise ArithmeticError("generator check failed")
            return g
    if cg is not None:
        raise ResourceBoundError("generator search", "principal ideal but no generator found within the search caps")
    raise ResourceBoundError("generator search", "no generator found; principality undecided")
