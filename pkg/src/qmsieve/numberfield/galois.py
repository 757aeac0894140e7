"""Automorphisms, subfield embeddings, relative norms and quadratic subfields."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..errors import InvalidInputError, NotGaloisError
from ..exact.integers import factor_integer
from ..exact.intmat import identity, matmul, rat_solve_left
from ..exact.poly import IntPolynomial, isolate_real_roots, root_bound, sturm_count
from .enumeration import enumerate_box
from .field import FieldElement, NumberField
from .sqrt import base_of, sqrt_in_field
from .spec import RelativeQuadratic

Aut = tuple  # n x n integer matrix as a tuple of row tuples


def eval_poly(K: NumberField, P: IntPolynomial, x: FieldElement) -> FieldElement:
    acc = K.zero()
    for c in reversed(P.coeffs):
        acc = acc * x + c
    return acc


def root_radius_sq(P: IntPolynomial) -> Fraction:
    """Rational upper bound for max |root|^2."""
    if P.degree >= 1 and sturm_count(P) == P.degree:
        ivs = isolate_real_roots(P, Fraction(1, 64))
        r = max(max(abs(iv.lo), abs(iv.hi)) for iv in ivs)
        return Fraction(r) ** 2
    return Fraction(root_bound(P)) ** 2


def roots_in_field(K: NumberField, P: IntPolynomial) -> list[FieldElement]:
    """All roots of the monic integer polynomial P lying in K (canonical order)."""
    if P.degree < 1:
        return []
    return [x for x in enumerate_box(K, root_radius_sq(P)) if eval_poly(K, P, x).is_zero()]


def _to_integral(K: NumberField, amb_mat: Sequence[Sequence[Fraction]]) -> Aut:
    n = K.n
    rows = []
    for w in K.W:
        img = K.ambient.apply(amb_mat, w)
        c = [sum(img[k] * K.Winv[k][j] for k in range(n) if img[k]) for j in range(n)]
        if any(Fraction(x).denominator != 1 for x in c):
            raise NotGaloisError("map does not preserve the maximal order")
        rows.append(tuple(int(x) for x in c))
    return tuple(rows)


def _preserves_table(K: NumberField, A: Aut) -> bool:
    n = K.n
    imgs = [FieldElement(K, A[i]) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            lhs = imgs[i] * imgs[j]
            rhs = K.apply_matrix(A, FieldElement(K, K.table[i][j]))
            if lhs != rhs:
                return False
    return True


def _ambient_automorphisms(K: NumberField) -> list[list[list[Fraction]]]:
    amb = K.ambient
    n = amb.dim
    if n == 1:
        return [[[Fraction(1)]]]
    if amb.kind == "multiquad":
        ms = amb.data["ms"]
        r = len(ms)
        mats = []
        for signs in range(1 << r):
            M = [[Fraction(0)] * n for _ in range(n)]
            for s in range(n):
                M[s][s] = Fraction((-1) ** bin(s & signs).count("1"))
            mats.append(M)
        return mats
    if amb.kind == "power":
        P = IntPolynomial(amb.data["poly"])
        mats = []
        for r in roots_in_field(K, P):
            ra = K.to_ambient(r)
            rows = [amb.one()]
            for _ in range(1, n):
                rows.append(amb.mul(rows[-1], ra))
            mats.append(rows)
        if len(mats) != n:
            raise NotGaloisError(f"found {len(mats)} of {n} roots of the defining polynomial")
        return mats
    if amb.kind == "relquad":
        F = base_of(K)
        nb = F.n
        delta = F.element(K.spec.delta)
        mats = []
        for tau in automorphisms(F):
            tau_amb = _integral_to_ambient(F, tau)
            td = F.apply_matrix(tau, delta)
            gamma = sqrt_in_field(F, td * delta)
            if gamma is None:
                raise NotGaloisError("tau(delta)/delta is not a square in the base field")
            g_amb = F.to_ambient(gamma / delta)
            for sign in (1, -1):
                M = [[Fraction(0)] * n for _ in range(n)]
                for i in range(nb):
                    ti = tau_amb[i]
                    M[i][:nb] = list(ti)
                    img = F.ambient.mul(ti, g_amb)
                    M[i + nb][nb:] = [sign * x for x in img]
                mats.append(M)
        return mats
    raise NotGaloisError(f"no automorphism data for {amb.kind or 'explicit'} orders")


def _integral_to_ambient(K: NumberField, A: Aut) -> list[list[Fraction]]:
    """Ambient matrix of an automorphism given on the integral basis."""
    n = K.n
    # ambient e_k = sum Winv[k][i] w_i
    out = []
    for k in range(n):
        img = [Fraction(0)] * n
        for i in range(n):
            c = K.Winv[k][i]
            if c:
                for j, a in enumerate(A[i]):
                    if a:
                        for l in range(n):
                            img[l] += c * a * K.W[j][l]
        out.append(img)
    return out


def automorphisms(K: NumberField) -> list[Aut]:
    """The automorphism group on the integral basis; identity first, then sorted."""
    if "auts" in K._cache:
        return K._cache["auts"]
    mats = [_to_integral(K, M) for M in _ambient_automorphisms(K)]
    ident = tuple(tuple(r) for r in identity(K.n))
    for A in mats:
        if not _preserves_table(K, A):
            raise NotGaloisError("candidate automorphism does not respect multiplication")
    uniq = sorted(set(mats))
    if len(uniq) != K.n:
        raise NotGaloisError(f"found {len(uniq)} automorphisms for degree {K.n}")
    uniq.remove(ident)
    out = [ident] + uniq
    K._cache["auts"] = out
    return out


def apply_aut(K: NumberField, A: Aut, x: FieldElement) -> FieldElement:
    return K.apply_matrix(A, x)


def compose(A: Aut, B: Aut) -> Aut:
    """The automorphism x -> A(B(x)) on row-coordinate matrices."""
    return tuple(tuple(r) for r in matmul(B, A))


def aut_order(A: Aut) -> int:
    n = len(A)
    ident = tuple(tuple(r) for r in identity(n))
    P, k = A, 1
    while P != ident:
        P = compose(A, P)
        k += 1
    return k


def group_exponent(K: NumberField) -> int:
    from math import lcm

    e = 1
    for A in automorphisms(K):
        e = lcm(e, aut_order(A))
    return e


def complex_conjugation(K: NumberField) -> Aut:
    if K.conj is None:
        raise InvalidInputError("field is totally real")
    C = tuple(tuple(r) for r in K.conj)
    if C not in automorphisms(K):
        raise NotGaloisError("complex conjugation not among the automorphisms")
    return C


# --- subfields -------------------------------------------------------------


def embedding(F: NumberField, K: NumberField) -> list[list[int]]:
    """Integer matrix E with rows = images of F's integral basis in K coordinates."""
    key = ("embed", id(F))
    if key in K._cache:
        return K._cache[key]
    if isinstance(K.spec, RelativeQuadratic) and base_of(K) is F:
        images_amb = [list(w) + [Fraction(0)] * F.n for w in F.W]
        E = [list(K.from_ambient(v).num) for v in images_amb]
    else:
        E = _embed_generic(F, K)
    K._cache[key] = E
    return E


def _embed_generic(F: NumberField, K: NumberField) -> list[list[int]]:
    amb = F.ambient
    n = amb.dim
    if n == 1:
        gens_images = [K.one()]
    elif amb.kind == "power":
        P = IntPolynomial(amb.data["poly"])
        roots = roots_in_field(K, P)
        if not roots:
            raise InvalidInputError(f"{F.label} does not embed in {K.label}")
        r = roots[0]
        gens_images = [K.one()]
        for _ in range(1, n):
            gens_images.append(gens_images[-1] * r)
    elif amb.kind == "multiquad":
        ms = amb.data["ms"]
        roots = []
        for m in ms:
            s = sqrt_in_field(K, K(m))
            if s is None:
                raise InvalidInputError(f"{F.label} does not embed in {K.label}")
            roots.append(s)
        gens_images = []
        for s in range(n):
            x = K.one()
            for i in range(len(ms)):
                if (s >> i) & 1:
                    x = x * roots[i]
            gens_images.append(x)
    else:
        raise InvalidInputError(f"cannot embed {F.label}")
    E = []
    for w in F.W:
        x = K.zero()
        for c, g in zip(w, gens_images):
            if c:
                x = x + g * c
        if x.den != 1:
            raise ArithmeticError("embedding is not integral")
        E.append(list(x.num))
    return E


def lift(F: NumberField, K: NumberField, y: FieldElement) -> FieldElement:
    E = embedding(F, K)
    y = F(y)
    out = [0] * K.n
    for a, row in zip(y.num, E):
        if a:
            for j, c in enumerate(row):
                out[j] += a * c
    return FieldElement(K, out, y.den)


def descend(F: NumberField, K: NumberField, x: FieldElement) -> FieldElement:
    """Inverse of lift; raises if x is not in the image of F."""
    E = embedding(F, K)
    sol = rat_solve_left(x.coords(), E)
    if sol is None:
        raise ValueError("element does not lie in the subfield")
    return F.element(sol)


def relative_automorphisms(F: NumberField, K: NumberField) -> list[Aut]:
    E = embedding(F, K)
    out = []
    for A in automorphisms(K):
        if matmul(E, [list(r) for r in A]) == E:
            out.append(A)
    return out


def relative_norm(F: NumberField, K: NumberField, x: FieldElement) -> FieldElement:
    """N_{K/F}(x) as an element of F."""
    auts = relative_automorphisms(F, K)
    if len(auts) * F.n != K.n:
        raise NotGaloisError("K/F is not Galois with the computed automorphisms")
    prod = K.one()
    for A in auts:
        prod = prod * K.apply_matrix(A, x)
    return descend(F, K, prod)


def quadratic_subfields(K: NumberField) -> list[int]:
    """Squarefree m != 1 with Q(sqrt m) contained in K (sorted)."""
    if "quad_subfields" in K._cache:
        return K._cache["quad_subfields"]
    ram = sorted(factor_integer(K.disc)) if abs(K.disc) > 1 else []
    out = []
    if K.n % 2 == 0:
        for r in range(0, len(ram) + 1):
            for sub in combinations(ram, r):
                base = 1
                for p in sub:
                    base *= p
                for m in (base, -base):
                    if m == 1:
                        continue
                    if sqrt_in_field(K, K(m)) is not None:
                        out.append(m)
    out.sort()
    K._cache["quad_subfields"] = out
    return out

