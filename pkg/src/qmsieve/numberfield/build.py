"""build_field: from a FieldSpec to a NumberField with its maximal order."""
from __future__ import annotations

import threading
from fractions import Fraction
from itertools import combinations

from ..errors import InvalidInputError
from ..exact.integers import squarefree_part
from ..exact.intmat import det
from ..exact.poly import IntPolynomial, poly_gcd, sturm_count
from .ambient import multiquadratic_ambient, power_basis_ambient, relative_quadratic_ambient, table_ambient
from .field import NumberField, is_totally_neg
from .order import echelon_basis, maximalize, table_from_basis, trace_matrix
from .spec import (
    ExplicitOrder,
    FieldSpec,
    Multiquadratic,
    Quadratic,
    Rationals,
    RelativeQuadratic,
    TotallyRealPoly,
    canonical_json,
)

_lock = threading.Lock()
_fields: dict[str, NumberField] = {}


def build_field(spec: FieldSpec) -> NumberField:
    """Construct (or fetch from the in-process registry) the field for ``spec``."""
    spec = normalize_spec(spec)
    key = canonical_json(spec)
    with _lock:
        K = _fields.get(key)
    if K is not None:
        return K
    K = _construct(spec)
    with _lock:
        return _fields.setdefault(key, K)


def clear_field_registry() -> None:
    """Forget every constructed field together with its memoized invariants."""
    with _lock:
        _fields.clear()


def normalize_spec(spec: FieldSpec) -> FieldSpec:
    if isinstance(spec, RelativeQuadratic):
        base = normalize_spec(spec.base)
        n = build_field(base).n
        delta = tuple(spec.delta) + (0,) * (n - len(spec.delta))
        if len(delta) != n:
            raise InvalidInputError("delta has too many coordinates for the base field")
        return RelativeQuadratic(base, delta)
    return spec


def _integral_conj(amb, W):
    if amb.conj is None:
        return None
    n = len(W)
    from ..exact.intmat import rat_inverse

    Winv = rat_inverse(W)
    imgs = [amb.apply(amb.conj, w) for w in W]
    C = [[sum(v[k] * Winv[k][c] for k in range(n)) for c in range(n)] for v in imgs]
    if any(Fraction(x).denominator != 1 for r in C for x in r):
        raise ValueError("conjugation does not preserve the order")
    return [[int(x) for x in r] for r in C]


def _finish(spec, amb, W0) -> NumberField:
    W, mt, disc, primes = maximalize(amb, W0)
    W = echelon_basis(W)
    mt = table_from_basis(amb, W)
    disc = det(trace_matrix(mt))
    return NumberField(spec, amb, W, mt, disc, primes, _integral_conj(amb, W))


def _construct(spec: FieldSpec) -> NumberField:
    if isinstance(spec, Rationals):
        amb = table_ambient([[[1]]])
        return NumberField(spec, amb, [[Fraction(1)]], [[(1,)]], 1, (), None)

    if isinstance(spec, Quadratic):
        m = spec.m
        if m in (0, 1) or squarefree_part(m) != m:
            raise InvalidInputError(f"quadratic field needs a squarefree m != 0, 1; got {m}")
        amb = power_basis_ambient([-m, 0, 1], cm=m < 0)
        if m % 4 == 1:
            W0 = [[Fraction(1), Fraction(0)], [Fraction(1, 2), Fraction(1, 2)]]
        else:
            W0 = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
        # classical basis; Round-2 still certifies it
        return _finish(spec, amb, W0)

    if isinstance(spec, TotallyRealPoly):
        P = IntPolynomial(spec.coeffs)
        n = P.degree
        if n < 1 or P.leading != 1:
            raise InvalidInputError("defining polynomial must be monic of positive degree")
        if n > 1 and poly_gcd(P, P.derivative()).degree > 0:
            raise InvalidInputError("defining polynomial is not squarefree")
        if sturm_count(P) != n:
            raise InvalidInputError("defining polynomial is not totally real")
        _check_irreducible(P)
        amb = power_basis_ambient(list(spec.coeffs))
        W0 = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return _finish(spec, amb, W0)

    if isinstance(spec, Multiquadratic):
        ms = tuple(spec.ms)
        if not ms:
            raise InvalidInputError("multiquadratic needs at least one generator")
        for m in ms:
            if m in (0, 1) or squarefree_part(m) != m:
                raise InvalidInputError(f"generator {m} is not a squarefree integer != 0, 1")
        for r in range(1, len(ms) + 1):
            for sub in combinations(ms, r):
                prod = 1
                for m in sub:
                    prod *= m
                if squarefree_part(prod) == 1:
                    raise InvalidInputError(f"generators {ms} are multiplicatively dependent")
        amb = multiquadratic_ambient(ms)
        n = amb.dim
        W0 = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return _finish(spec, amb, W0)

    if isinstance(spec, RelativeQuadratic):
        F = build_field(spec.base)
        if not F.is_totally_real:
            raise InvalidInputError("relative quadratic base must be totally real")
        delta = F.element(spec.delta)
        if not is_totally_neg(delta):
            raise InvalidInputError("delta must be totally negative")
        amb = relative_quadratic_ambient(F.ambient, F.to_ambient(delta))
        nb = F.n
        zero = [Fraction(0)] * nb
        W0 = [list(w) + zero for w in F.W] + [zero + list(w) for w in F.W]
        K = _finish(spec, amb, W0)
        K._cache["base_field"] = F
        return K

    if isinstance(spec, ExplicitOrder):
        table = [[tuple(c) for c in r] for r in spec.table]
        n = len(table)
        amb = table_ambient(table, spec.conj)
        W = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        mt = table_from_basis(amb, W)
        disc = det(trace_matrix(mt))
        if disc != spec.disc:
            raise InvalidInputError(f"table discriminant {disc} differs from asserted {spec.disc}")
        conj = [list(r) for r in spec.conj] if spec.conj is not None else None
        K = NumberField(spec, amb, W, mt, disc, (), conj)
        _check_gram_positive(K)
        return K

    raise InvalidInputError(f"unsupported field spec {spec!r}")


def _check_irreducible(P: IntPolynomial) -> None:
    """Certify irreducibility over Q by factorization degree patterns.

    A rational factor of degree d forces d to be a subset sum of the factor
    degrees mod every prime not dividing disc(P); once no d in 1..n-1
    survives, P is irreducible.  Polynomials whose patterns never rule out a
    factor (rare, e.g. x^4 + 1 shapes) are rejected rather than guessed.
    """
    from ..exact.integers import primes_from
    from ..exact.modp import factor_poly_mod_p

    n = P.degree
    possible = set(range(1, n))
    tried = 0
    for q in primes_from(3):
        if not possible or tried >= 40:
            break
        fac = factor_poly_mod_p(P, q)
        if any(m > 1 for _, m in fac):
            continue
        sums = {0}
        for f, _ in fac:
            sums |= {s + len(f) - 1 for s in sums}
        possible &= sums
        tried += 1
    if possible:
        raise InvalidInputError("could not certify irreducibility of the defining polynomial")


def _check_gram_positive(K: NumberField) -> None:
    G = [[Fraction(x) for x in r] for r in K.t2_gram]
    n = len(G)
    for k in range(n):
        if G[k][k] <= 0:
            raise InvalidInputError("T2 form is not positive definite; supply conj for CM orders")
        for i in range(k + 1, n):
            f = G[i][k] / G[k][k]
            for j in range(k, n):
                G[i][j] -= f * G[k][j]
