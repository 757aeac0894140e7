"""Independent oracles shared by the unit and acceptance suites.

None of these call into the algorithms they check: prime decomposition is
recomputed by brute force over O/pO (or by Dedekind-Kummer through sympy),
FR sets by a coefficient hypercube with exact rational comparisons, and local
squares by squaring every residue.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import numpy as np
import sympy

from qmsieve.numberfield.field import FieldElement, NumberField

BRUTE_LIMIT = 150_000
_x = sympy.Symbol("x")


# --- prime decomposition ---------------------------------------------------------


def _encode(X: np.ndarray, p: int) -> np.ndarray:
    w = p ** np.arange(X.shape[1], dtype=np.int64)
    return (X.astype(np.int64) * w).sum(axis=1)


def _mul_all(T: np.ndarray, X: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    return np.einsum("ai,aj,ijk->ak", X, Y, T) % p


def brute_force_decomposition(K: NumberField, p: int):
    """(sorted [(e, f)], {frozenset of encoded residues of each maximal ideal}) from all of O/pO."""
    n = K.n
    T = np.array(K.table, dtype=np.int64) % p
    X = np.array(list(product(range(p), repeat=n)), dtype=np.int64)[:, ::-1]
    codes = _encode(X, p)
    sq = _mul_all(T, X, X, p)
    idem = X[(sq == X).all(axis=1)]
    # nilpotent: x^n = 0
    P = X.copy()
    for _ in range(n - 1):
        P = _mul_all(T, P, X, p)
    nil = (P == 0).all(axis=1)
    # primitive idempotents: nonzero e with f e in {0, e} for every idempotent f
    prim = []
    for e in idem:
        if not e.any():
            continue
        fe = _mul_all(T, idem, np.broadcast_to(e, idem.shape), p)
        if all((not r.any()) or (r == e).all() for r in fe):
            prim.append(e)
    types, maximal = [], set()
    for e in prim:
        ye = _mul_all(T, X, np.broadcast_to(e, X.shape), p)
        local = (ye == X).all(axis=1)
        size = int(local.sum())
        nsize = int((local & nil).sum())
        dim = round(np.log(size) / np.log(p))
        f = dim - round(np.log(nsize) / np.log(p))
        types.append((dim // f, f))
        # maximal ideal: y with y e nilpotent
        Q = ye.copy()
        for _ in range(n - 1):
            Q = _mul_all(T, Q, ye, p)
        maximal.add(frozenset(codes[(Q == 0).all(axis=1)].tolist()))
    return sorted(types), maximal


def residues_of_ideal(rows, p: int) -> frozenset:
    """Encoded residues mod p of an integral ideal given by HNF rows containing p."""
    n = len(rows[0])
    from qmsieve.exact.modp import rref_mod

    basis, _ = rref_mod([list(r) for r in rows], p)
    if not basis:
        return frozenset([0])
    B = np.array(basis, dtype=np.int64).reshape(-1, n)
    C = np.array(list(product(range(p), repeat=len(B))), dtype=np.int64).reshape(-1, len(B))
    X = (C @ B) % p
    return frozenset(_encode(X, p).tolist())


def dedekind_kummer_types(K: NumberField, p: int, tries: int = 200):
    """Splitting type from a factorization mod p (sympy) of the characteristic polynomial
    of an element whose index is prime to p; None if no such element was found."""
    rng = random.Random(p)
    for _ in range(tries):
        v = [0] + [rng.randint(-3, 3) for _ in range(K.n - 1)]
        M = sympy.Matrix(FieldElement(K, v).mult_matrix())
        cp = M.charpoly(_x)
        dp = sympy.discriminant(cp.as_expr(), _x)
        if dp == 0:
            continue
        idx2 = Fraction(int(dp), K.disc)
        if idx2.denominator != 1 or int(idx2) % p == 0:
            continue
        _, facs = sympy.Poly(cp.as_expr(), _x, modulus=p).factor_list()
        return sorted((m, g.degree()) for g, m in facs)
    return None


def decomposition_types(K: NumberField, p: int):
    if p ** K.n <= BRUTE_LIMIT:
        return brute_force_decomposition(K, p)[0]
    return dedekind_kummer_types(K, p)


# --- FR sets over Q, Q(sqrt 2), Q(sqrt 5) ------------------------------------


def _le_sqrt(L: Fraction, R: Fraction, m: int) -> bool:
    """Exact test of L sqrt(m) <= R."""
    if L <= 0:
        return R >= 0 or L * L * m >= R * R
    return R >= 0 and L * L * m <= R * R


def fr_bruteforce(m: int | None, Q: int) -> set:
    """All b in O_F (F = Q or Q(sqrt m)) with |sigma(b)| <= 2 sqrt(Q) at each real place,
    as pairs (a, c) meaning a + c sqrt(m), filtered by exact rational comparisons."""
    R = int(2 * Q ** 0.5) + 2
    if m is None:
        return {(Fraction(a), Fraction(0)) for a in range(-R, R + 1) if a * a <= 4 * Q}
    half = m % 4 == 1
    step = Fraction(1, 2) if half else Fraction(1)
    N = 2 * R if half else R
    out = set()
    for i, j in product(range(-2 * N, 2 * N + 1), repeat=2):
        a, c = i * step, j * step
        if half and (a - c).denominator != 1:
            continue
        # sigma(b)^2 = a^2 + m c^2 +- 2ac sqrt(m) <= 4Q at both places
        rest = 4 * Q - a * a - m * c * c
        if _le_sqrt(2 * a * c, rest, m) and _le_sqrt(-2 * a * c, rest, m):
            out.add((a, c))
    return out


# --- local squares -------------------------------------------------------------

_SQUARES: dict = {}


def _reducer(rows):
    n = len(rows)

    def reduce(v):
        v = list(v)
        for i in range(n):
            q = v[i] // rows[i][i]
            if q:
                v = [a - q * b for a, b in zip(v, rows[i])]
        return tuple(v)

    return reduce


def squares_mod_power(P, k: int):
    """(set of residues of squares mod P^k, reducer) by squaring a full residue system."""
    key = (id(P), k)
    if key not in _SQUARES:
        K = P.field
        rows = [list(r) for r in (P.ideal ** k).rows]
        reduce = _reducer(rows)
        reps = product(*[range(rows[i][i]) for i in range(K.n)])
        _SQUARES[key] = ({reduce(K.mul_coords(list(r), list(r))) for r in reps}, reduce)
    return _SQUARES[key]


def oracle_is_local_square(u: FieldElement, P) -> bool:
    """u (nonzero) is a square in F_P iff x^2 = u has a solution mod P^(v + 2 v_P(2) + 1), v = v_P(u)."""
    K = P.field
    w = FieldElement(K, [a * u.den for a in u.num])  # same square class, integral
    v = 0
    while w in P.ideal ** (v + 1):
        v += 1
    e2 = P.e if P.p == 2 else 0
    sq, reduce = squares_mod_power(P, v + 2 * e2 + 1)
    return reduce(w.num) in sq


# --- M_2 membership by exact norms -------------------------------------------


def lucas_power_sum(b: int, ell: int, E: int) -> int:
    """beta^E + conj(beta)^E for the roots of x^2 + b x + ell, expanded by sympy."""
    r1, r2 = sympy.roots(_x**2 + b * _x + ell, _x, multiple=True)
    return int(sympy.expand(r1 ** E + r2 ** E))


def brute_force_member(k: NumberField, S, n: int, p: int) -> bool:
    """F = Q, k imaginary quadratic: does p divide the norm of some nonzero
    y = alpha^(2 eps) - s_E alpha^eps + ell^E over the full grid eps in [0, n]^2?
    Every y is built with exact field arithmetic and its norm computed exactly."""
    from qmsieve.numberfield.galois import automorphisms

    E = n * S.h
    auts = automorphisms(k)
    for e in S:
        conj = [k.apply_matrix(A, e.alpha) for A in auts]
        pw = [[c ** i for i in range(n + 1)] for c in conj]
        for b in range(-2 * e.ell, 2 * e.ell + 1):
            if b * b > 4 * e.ell:
                continue
            sE = lucas_power_sum(b, e.ell, E)
            for e0, e1 in product(range(n + 1), repeat=2):
                A = pw[0][e0] * pw[1][e1]
                y = A * A - A * sE + e.ell ** E
                if not y.is_zero() and y.norm() % p == 0:
                    return True
    return False


# --- power-basis fields through sympy matrices --------------------------------


class PowerBasisField:
    """Q(theta) for a monic integer polynomial, elements as sympy multiplication
    matrices in the basis 1, theta, ..., theta^(n-1).  Used only when that basis
    is the full ring of integers (here Q(sqrt 2) and the cubic of conductor 7)."""

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)  # c0, c1, ..., 1
        n = self.n = len(coeffs) - 1
        M = sympy.zeros(n, n)
        for j in range(n - 1):
            M[j + 1, j] = 1
        for i in range(n):
            M[i, n - 1] = -coeffs[i]
        self.theta = M

    def element(self, a) -> sympy.Matrix:
        out = sympy.zeros(self.n, self.n)
        P = sympy.eye(self.n)
        for c in a:
            out += c * P
            P = P * self.theta
        return out

    def traces(self, A: sympy.Matrix) -> tuple:
        """(Tr(A theta^i))_i, which determine A since the trace form is nondegenerate."""
        P, out = sympy.eye(self.n), []
        for _ in range(self.n):
            out.append(int((A * P).trace()))
            P = P * self.theta
        return tuple(out)


def totally_nonneg(A: sympy.Matrix) -> bool:
    """All eigenvalues of a real-rooted integer matrix are >= 0 iff the characteristic
    polynomial has alternating signs."""
    cs = A.charpoly(_x).all_coeffs()
    return all((-1) ** i * c >= 0 for i, c in enumerate(cs))


def fr_power_basis(K: PowerBasisField, Q: int) -> list[sympy.Matrix]:
    """All b in Z[theta] with 4Q - b^2 totally nonnegative; the coefficient box is
    bounded through the inverse Vandermonde matrix of the real roots."""
    roots = np.roots(list(reversed(K.coeffs))).real
    V = np.vander(roots, K.n, increasing=True)
    R = int(np.abs(np.linalg.inv(V)).sum(axis=1).max() * 2 * Q ** 0.5) + 1
    out = []
    for a in product(range(-R, R + 1), repeat=K.n):
        b = K.element(a)
        if totally_nonneg(4 * Q * sympy.eye(K.n) - b * b):
            out.append(b)
    return out


def _rational_square(r) -> bool:
    r = sympy.Rational(r)
    return r >= 0 and sympy.sqrt(r).is_rational


def is_square_in(K: PowerBasisField, A: sympy.Matrix, m_if_quadratic=None) -> bool:
    """Is the element A a square in K?  K has prime degree, so a nonrational A
    generates K and is a square iff its minimal polynomial at x^2 is reducible."""
    n = K.n
    if A == A[0, 0] * sympy.eye(n):
        r = A[0, 0]
        if r == 0 or _rational_square(r):
            return True
        return n == 2 and _rational_square(r / m_if_quadratic)
    cp = sympy.Poly(A.charpoly(_x).as_expr().subs(_x, _x**2), _x)
    _, facs = cp.factor_list()
    return len(facs) > 1 or facs[0][1] > 1


# --- analytic class numbers ----------------------------------------------------


def _kron(D: int, a: int) -> int:
    from sympy.functions.combinatorial.numbers import kronecker_symbol

    return int(kronecker_symbol(D, a))


def imag_quadratic_h(D: int) -> int:
    """h(D) = -(w/2) B_{1,chi_D} with B_{1,chi} = (1/|D|) sum_a chi(a) a."""
    w = {-3: 6, -4: 4}.get(D, 2)
    B = Fraction(sum(_kron(D, a) * a for a in range(1, -D)), -D)
    h = -Fraction(w, 2) * B
    assert h.denominator == 1
    return int(h)


def cm_relative_class_number(D: int, ell: int, w: int = 2, Q: int = 1) -> int:
    """h^- of the CM field F(sqrt D), F the cubic subfield of Q(zeta_ell), from
    h^- = Q w prod_{chi odd} (-B_{1,chi}/2); the odd characters are chi_D times the
    characters of order dividing 3 modulo ell, and the conjugate cubic pair contributes
    |B_{1,chi}/2|^2, computed exactly in Z[zeta_3]."""
    g = int(sympy.primitive_root(ell))
    ind = {pow(g, i, ell): i % 3 for i in range(ell - 1)}
    f = ell * -D
    x = y = 0  # x + y zeta_3
    for a in range(1, f):
        if sympy.gcd(a, f) != 1:
            continue
        c = _kron(D, a) * a
        e = ind[a % ell]
        if e == 0:
            x += c
        elif e == 1:
            y += c
        else:  # zeta_3^2 = -1 - zeta_3
            x -= c
            y -= c
    pair = Fraction(x * x - x * y + y * y, 4 * f * f)
    h = Q * w * Fraction(imag_quadratic_h(D), 2) * pair
    assert h.denominator == 1
    return int(h)
