"""Square roots in number fields."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Optional

from ..exact.integers import is_square, primes_from
from ..exact.modp import factor_poly_mod_p, kernel_mod
from .field import FieldElement, NumberField

PREFILTER_PRIMES = 12


def degree_one_homs(K: NumberField, p: int) -> list[tuple[int, ...]]:
    """Ring homomorphisms O_K -> GF(p), as images of the integral basis.

    Only meaningful (and only used) for p not dividing disc(K).
    """
    cache = K._cache.setdefault("deg1_homs", {})
    if p in cache:
        return cache[p]
    n = K.n
    out: list[tuple[int, ...]] = []
    if n == 1:
        out = [(1,)]
    else:
        # a generic element separates the homomorphisms when p is unramified
        for shift in range(1, 6):
            coords = [0] + [pow(shift + 1, k, p) * (k + shift) % p for k in range(1, n)]
            M = K.mult_matrix(coords)
            cp = _charpoly_mod(M, p)
            fac = factor_poly_mod_p(cp, p)
            if any(m > 1 for _, m in fac):
                continue
            found = []
            for f, _ in fac:
                if len(f) != 2:
                    continue
                lam = (-f[0]) % p
                A = [[(M[i][j] - (lam if i == j else 0)) % p for j in range(n)] for i in range(n)]
                ker = kernel_mod(A, p)
                if len(ker) != 1 or ker[0][0] % p == 0:
                    continue
                inv = pow(ker[0][0], -1, p)
                found.append(tuple(x * inv % p for x in ker[0]))
            out = [u for u in found if _is_hom(K, u, p)]
            break
    cache[p] = out
    return out


def _charpoly_mod(M, p):
    from .field import charpoly_int

    return [c % p for c in charpoly_int(M).coeffs]


def _is_hom(K: NumberField, u, p) -> bool:
    n = K.n
    for i in range(n):
        for j in range(i, n):
            if (u[i] * u[j] - sum(c * x for c, x in zip(K.table[i][j], u))) % p:
                return False
    return True


def _residue_obstruction(K: NumberField, m: FieldElement) -> bool:
    """True if some degree-one prime certifies that m is not a square."""
    checked = 0
    for p in primes_from(3):
        if checked >= PREFILTER_PRIMES or p > 400:
            break
        if K.disc % p == 0 or m.den % p == 0:
            continue
        homs = degree_one_homs(K, p)
        if not homs:
            continue
        checked += 1
        for u in homs:
            r = sum(a * b for a, b in zip(m.num, u)) % p
            if r and pow(r, (p - 1) // 2, p) != 1:
                return True
    return False


def _norm_obstruction(m: FieldElement) -> bool:
    nm = m.norm()
    return nm < 0 or not (is_square(nm.numerator) and is_square(nm.denominator))


def sqrt_in_field(K: NumberField, m: FieldElement) -> Optional[FieldElement]:
    """Some x in O_K with x^2 = m, or None."""
    m = K(m)
    if m.den != 1:
        raise ValueError("sqrt_in_field expects an integral element")
    if m.is_zero():
        return K.zero()
    if m.is_rational():
        a = m.num[0]
        if a > 0 and is_square(a):
            return K(isqrt(a))
    if K.n == 1:
        return None
    if _norm_obstruction(m):
        return None
    kind = K.ambient.kind
    if m.is_rational() and kind in ("multiquad", "power") and (kind == "multiquad" or K.n == 2):
        return _sqrt_rational_multiquad(K, m.num[0])
    if kind == "relquad":
        return _sqrt_relquad(K, m)
    if _residue_obstruction(K, m):
        return None
    return _sqrt_enumerate(K, m)


def _sqrt_rational_multiquad(K: NumberField, a: int) -> Optional[FieldElement]:
    amb = K.ambient
    if amb.kind == "power":
        # Q(sqrt m) as Q[x]/(x^2 - m)
        ms = (-amb.data["poly"][0],)
    else:
        ms = amb.data["ms"]
    r = len(ms)
    for s in range(1, 1 << r):
        prod = 1
        for i in range(r):
            if (s >> i) & 1:
                prod *= ms[i]
        t2 = a * prod
        if t2 > 0 and is_square(t2):
            coeff = Fraction(isqrt(t2), prod)
            v = [Fraction(0)] * amb.dim
            if amb.kind == "power":
                v[1] = coeff
            else:
                v[s] = coeff
            x = K.from_ambient(v)
            assert x * x == K(a)
            return x
    return None


def base_of(K: NumberField) -> NumberField:
    return K._cache["base_field"]


def _split_relquad(K: NumberField, x: FieldElement) -> tuple[FieldElement, FieldElement]:
    """x = a + c sqrt(delta) with a, c in the base field."""
    F = base_of(K)
    v = K.to_ambient(x)
    nb = F.n
    return F.from_ambient(v[:nb]), F.from_ambient(v[nb:])


def _join_relquad(K: NumberField, a: FieldElement, c: FieldElement) -> FieldElement:
    F = base_of(K)
    return K.from_ambient(F.to_ambient(a) + F.to_ambient(c))


def _sqrt_relquad(K: NumberField, m: FieldElement) -> Optional[FieldElement]:
    F = base_of(K)
    a, c = _split_relquad(K, m)
    if c.is_zero():
        # (a' + c' sqrt d)^2 = m in F forces a' c' = 0
        delta = F.element(K.spec.delta)
        if a.is_integral():
            r = sqrt_in_field(F, a)
            if r is not None:
                return _join_relquad(K, r, F.zero())
        t = a * delta
        if t.is_integral():
            r = sqrt_in_field(F, t)
            if r is not None:
                return _join_relquad(K, F.zero(), r / delta)
        return None
    if _residue_obstruction(K, m):
        return None
    return _sqrt_enumerate(K, m)


def _sqrt_float_guess(K: NumberField, m: FieldElement) -> Optional[FieldElement]:
    """Candidate roots from floating-point embeddings, each verified exactly.

    A root x and -x are both candidates; the one first in canonical order is
    returned, which is the root the exact enumeration would find.
    """
    import numpy as np

    emb = K.float_embeddings()
    vals = emb @ np.array([float(a) for a in m.num])
    n = K.n
    # pair each place with its complex conjugate (real places pair with themselves)
    partner = []
    for i in range(n):
        j = int(np.argmin(np.abs(emb - emb[i].conj()).sum(axis=1)))
        partner.append(j)
    reps = [i for i in range(n) if partner[i] >= i]
    roots0 = np.sqrt(vals.astype(complex))
    for mask in range(1 << (len(reps) - 1)):
        r = np.array(roots0)
        for b, i in enumerate(reps[1:]):
            if (mask >> b) & 1:
                r[i] = -r[i]
        for i in reps:
            r[partner[i]] = r[i].conjugate()
        try:
            sol = np.linalg.solve(emb, r)
        except np.linalg.LinAlgError:
            return None
        if np.abs(sol.imag).max() > 1e-6 or np.abs(sol.real).max() > 2**50:
            continue
        x = FieldElement(K, [int(round(c)) for c in sol.real])
        if x * x == m:
            return min(x, -x, key=FieldElement.sort_key)
    return None


def _sqrt_enumerate(K: NumberField, m: FieldElement) -> Optional[FieldElement]:
    from .enumeration import enumerate_box

    guess = _sqrt_float_guess(K, m)
    if guess is not None:
        return guess
    # |sigma(x)|^2 = |sigma(m)| <= sqrt(T2(m))
    t2 = K.t2(m)
    R2 = isqrt(t2.numerator // t2.denominator) + 1
    for x in enumerate_box(K, R2):
        if x * x == m:
            return x
    return None
