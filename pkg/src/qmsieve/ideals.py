"""Fractional ideals of a number field: HNF lattices, prime decomposition, valuations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import InvalidInputError
from .exact.integers import factor_integer, is_prime
from .exact.intmat import det, hnf_rows, hnf_rows_n, in_row_span, rat_inverse, transpose
from .exact.modp import factor_poly_mod_p, left_kernel_mod, rref_mod
from .numberfield.field import FieldElement, NumberField
from .numberfield.order import omul, opow_mod, p_radical


def _content(rows: Iterable[Sequence[int]]) -> int:
    g = 0
    for r in rows:
        for x in r:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


class Ideal:
    """(1/den) * the Z-lattice with row-style HNF basis ``rows`` (order coordinates)."""

    __slots__ = ("field", "rows", "den", "_norm")

    def __init__(self, K: NumberField, rows: Sequence[Sequence[int]], den: int = 1, *, normalized: bool = False):
        if not normalized:
            rows = hnf_rows(rows)
            if len(rows) != K.n:
                raise InvalidInputError("ideal lattice is not of full rank")
            g = gcd(_content(rows), den)
            if g > 1:
                rows = [[x // g for x in r] for r in rows]
                den //= g
        self.field = K
        self.rows = tuple(tuple(r) for r in rows)
        self.den = den
        self._norm = None

    # --- construction ------------------------------------------------------
    @classmethod
    def from_generators(cls, K: NumberField, gens: Sequence[FieldElement]) -> "Ideal":
        gens = [K(g) for g in gens if not K(g).is_zero()]
        if not gens:
            raise InvalidInputError("the zero ideal is not supported")
        d = 1
        for g in gens:
            d = lcm(d, g.den)
        rows = []
        modulus = 0
        for g in gens:
            num = [a * (d // g.den) for a in g.num]
            rows.extend(K.mult_matrix(num))
            modulus = gcd(modulus, det(K.mult_matrix(num)))
        return cls(K, hnf_rows(rows, modulus=abs(modulus)), d)

    @classmethod
    def principal(cls, K: NumberField, x) -> "Ideal":
        return cls.from_generators(K, [K(x)])

    @classmethod
    def unit(cls, K: NumberField) -> "Ideal":
        return cls(K, [[int(i == j) for j in range(K.n)] for i in range(K.n)], 1, normalized=True)

    # --- basic data --------------------------------------------------------
    def numerator_norm(self) -> int:
        if self._norm is None:
            d = 1
            for i, r in enumerate(self.rows):
                d *= r[i]
            self._norm = d
        return self._norm

    def norm(self) -> Fraction:
        return Fraction(self.numerator_norm(), self.den ** self.field.n)

    def is_integral(self) -> bool:
        return self.den == 1

    def basis_elements(self) -> list[FieldElement]:
        return [FieldElement(self.field, r, self.den) for r in self.rows]

    def __contains__(self, x) -> bool:
        x = self.field(x)
        if self.den % x.den:
            return False
        v = [a * (self.den // x.den) for a in x.num]
        return in_row_span(v, self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and other.field is self.field and other.rows == self.rows and other.den == self.den

    def __hash__(self):
        return hash((self.rows, self.den))

    def sort_key(self) -> tuple:
        return (self.norm(), self.den, self.rows)

    def __repr__(self) -> str:
        return f"Ideal(norm {self.norm()}, rows {list(map(list, self.rows))}{', den ' + str(self.den) if self.den != 1 else ''})"

    def to_json(self) -> dict:
        return {"field": self.field.label, "den": self.den, "rows": [list(r) for r in self.rows]}

    # --- arithmetic --------------------------------------------------------
    def __mul__(self, other) -> "Ideal":
        K = self.field
        if not isinstance(other, Ideal):
            other = Ideal.principal(K, other)
        rows = []
        for a in self.rows:
            for b in other.rows:
                rows.append(omul(K.table, a, b))
        modulus = self.numerator_norm() * other.numerator_norm()
        return Ideal(K, hnf_rows(rows, modulus=modulus), self.den * other.den)

    __rmul__ = __mul__

    def __add__(self, other: "Ideal") -> "Ideal":
        d = lcm(self.den, other.den)
        rows = [[x * (d // self.den) for x in r] for r in self.rows]
        rows += [[x * (d // other.den) for x in r] for r in other.rows]
        return Ideal(self.field, rows, d)

    def inverse(self) -> "Ideal":
        """{x : x I in O}, computed as a dual lattice."""
        K = self.field
        cols: list[list[int]] = []
        for h in self.rows:
            M = K.mult_matrix(h)
            cols.extend(transpose(M))
        B = hnf_rows(cols, modulus=self.numerator_norm())
        inv = rat_inverse(transpose(B))
        d = 1
        for r in inv:
            for x in r:
                d = lcm(d, x.denominator)
        rows = [[int(x * d) for x in r] for r in inv]
        # (I/den)^-1 = den * I^-1
        g = gcd(d, self.den)
        return Ideal(K, [[x * (self.den // g) for x in r] for r in rows], d // g)

    def __truediv__(self, other: "Ideal") -> "Ideal":
        return self * other.inverse()

    def __pow__(self, e: int) -> "Ideal":
        if e < 0:
            return self.inverse() ** (-e)
        result = Ideal.unit(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divides(self, other: "Ideal") -> bool:
        """self | other, i.e. other is contained in self."""
        return all(x in self for x in other.basis_elements())


@dataclass(eq=False)
class PrimeIdeal:
    ideal: Ideal
    p: int
    e: int
    f: int
    gamma: tuple  # anti-uniformizer: gamma * P in pO, gamma not in pO
    index: int = 0  # position among the primes above p
    pi: Optional[tuple] = None  # two-element generator with P = (p, pi)

    @property
    def field(self) -> NumberField:
        return self.ideal.field

    @property
    def rows(self):
        return self.ideal.rows

    def norm(self) -> int:
        return self.p ** self.f

    def sort_key(self) -> tuple:
        return (self.p, self.f, self.e, self.ideal.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeIdeal) and other.ideal == self.ideal

    def __hash__(self):
        return hash(self.ideal)

    def __contains__(self, x) -> bool:
        return x in self.ideal

    def label(self) -> str:
        return f"{self.p}.{self.index}"

    def __repr__(self) -> str:
        return f"PrimeIdeal({self.label()}, e={self.e}, f={self.f})"

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "f": self.f, "index": self.index, "rows": [list(r) for r in self.rows]}


# --- prime decomposition -------------------------------------------------


class _ModSubspace:
    """Reduction modulo an F_p-subspace given by rows."""

    def __init__(self, rows, p):
        self.p = p
        self.rows, self.pivots = rref_mod(rows, p)

    def reduce(self, v):
        p = self.p
        v = [x % p for x in v]
        for r, c in zip(self.rows, self.pivots):
            if v[c]:
                f = v[c]
                v = [(a - f * b) % p for a, b in zip(v, r)]
        return v

    def dim(self):
        return len(self.rows)


def _min_poly_mod(mt, b, J: _ModSubspace, p: int) -> list[int]:
    """Minimal polynomial over F_p of b in O/pO modulo the radical J."""
    n = len(mt)
    one = [1] + [0] * (n - 1)
    powers = [J.reduce(one)]
    cur = one
    while True:
        cur = [x % p for x in omul(mt, cur, b)]
        red = J.reduce(cur)
        # solve red = sum c_i powers_i
        k = len(powers)
        rows = powers + [red]
        ker = left_kernel_mod(rows, p)
        if ker:
            v = ker[0]
            inv = pow(v[k], -1, p)
            return [(x * inv) % p for x in v]
        powers.append(red)


def decompose_prime(K: NumberField, p: int) -> list[PrimeIdeal]:
    """All primes of K above p, sorted by (f, e, HNF)."""
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    cache = K._cache.setdefault("primes", {})
    if p in cache:
        return cache[p]
    n = K.n
    mt = K.table
    if n == 1:
        P = Ideal(K, [[p]], 1, normalized=True)
        res = [PrimeIdeal(P, p, 1, 1, (1,), 0, (p,))]
        cache[p] = res
        return res
    J = _ModSubspace(p_radical(mt, p), p)
    # Frobenius-fixed part of (O/pO)/J
    L = []
    for i in range(n):
        e = [int(k == i) for k in range(n)]
        fp = opow_mod(mt, e, p, p)
        L.append(J.reduce([a - b for a, b in zip(fp, e)]))
    S = left_kernel_mod(L, p)
    fixed = [s for s in S if any(J.reduce(s))]
    idems = [[1] + [0] * (n - 1)]
    for b in fixed:
        new = []
        for e in idems:
            be = [x % p for x in omul(mt, b, e)]
            mp = _min_poly_mod(mt, be, J, p)
            roots = [(-f[0]) % p for f, _ in factor_poly_mod_p(mp, p)]
            if len(roots) <= 1:
                new.append(e)
                continue
            for c in roots:
                x = list(e)
                for c2 in roots:
                    if c2 == c:
                        continue
                    inv = pow((c - c2) % p, -1, p)
                    fac = [(a - (c2 if k == 0 else 0)) * inv % p for k, a in enumerate(be)]
                    x = [t % p for t in omul(mt, x, fac)]
                x = [t % p for t in omul(mt, x, e)]
                if any(J.reduce(x)):
                    new.append(x)
        idems = new
    g_expected = len(S) - J.dim()
    if len(idems) != g_expected:
        raise ArithmeticError(f"idempotent splitting failed at p={p}")
    primes = []
    for e in idems:
        rows = [J.reduce(omul(mt, [int(k == i) for k in range(n)], e)) for i in range(n)]
        ker = left_kernel_mod(rows, p)
        f = n - len(ker)
        H = hnf_rows_n(ker, n, modulus=p)
        P = Ideal(K, H, 1, normalized=True)
        gamma = _anti_uniformizer(mt, H, p)
        pr = PrimeIdeal(P, p, 0, f, gamma)
        pr.e = _valuation_int(mt, [p] + [0] * (n - 1), pr)
        primes.append(pr)
    if sum(q.e * q.f for q in primes) != n:
        raise ArithmeticError(f"sum e*f != degree at p={p}")
    primes.sort(key=PrimeIdeal.sort_key)
    for i, q in enumerate(primes):
        q.index = i
        q.pi = _two_element(K, q)
    cache[p] = primes
    return primes


def _anti_uniformizer(mt, H, p) -> tuple:
    n = len(mt)
    rows = []
    for i in range(n):
        e = [int(k == i) for k in range(n)]
        row = []
        for h in H:
            row.extend(x % p for x in omul(mt, e, h))
        rows.append(row)
    ker = left_kernel_mod(rows, p)
    if not ker:
        raise ArithmeticError("no anti-uniformizer")
    return tuple(ker[0])


def _two_element(K: NumberField, P: PrimeIdeal) -> Optional[tuple]:
    """Some pi with P = (p, pi): an element of P with v_P(pi) = 1 and no other prime over p."""
    for r in P.rows:
        cand = list(r)
        for t in (cand, [a + P.p * (k == 0) for k, a in enumerate(cand)]):
            if _valuation_int(K.table, t, P) == 1:
                I = Ideal.from_generators(K, [K(P.p), FieldElement(K, t)])
                if I == P.ideal:
                    return tuple(t)
    return None


def _valuation_int(mt, x: Sequence[int], P: PrimeIdeal) -> int:
    p = P.p
    v = 0
    x = list(x)
    g = P.gamma
    while True:
        y = omul(mt, x, g)
        if any(a % p for a in y):
            return v
        x = [a // p for a in y]
        v += 1


def valuation(x, P: PrimeIdeal) -> int:
    """v_P of a nonzero field element, rational number, or fractional ideal."""
    K = P.field
    if isinstance(x, Ideal):
        return _ideal_valuation(x, P)
    x = K(x)
    if x.is_zero():
        raise InvalidInputError("valuation of zero")
    v = _valuation_int(K.table, x.num, P)
    if x.den > 1:
        vp = 0
        d = x.den
        while d % P.p == 0:
            d //= P.p
            vp += 1
        v -= P.e * vp
    return v


def _ideal_valuation(I: Ideal, P: PrimeIdeal) -> int:
    K = I.field
    p = P.p
    g = P.gamma
    rows = [list(r) for r in I.rows]
    v = 0
    while True:
        prods = [omul(K.table, r, g) for r in rows]
        if any(a % p for r in prods for a in r):
            break
        rows = [[a // p for a in r] for r in prods]
        v += 1
    d = I.den
    vp = 0
    while d % p == 0:
        d //= p
        vp += 1
    return v - P.e * vp


@dataclass
class IdealFactorization:
    factors: list  # (PrimeIdeal, exponent)

    def product(self, K: NumberField) -> Ideal:
        I = Ideal.unit(K)
        for P, e in self.factors:
            I = I * (P.ideal ** e)
        return I

    def primes(self) -> list[PrimeIdeal]:
        return [P for P, _ in self.factors]

    def to_json(self) -> list:
        return [{"prime": P.label(), "e": P.e, "f": P.f, "exponent": k} for P, k in self.factors]


def factor_principal(K: NumberField, x, check: bool = True, rho_iterations: int | None = None) -> IdealFactorization:
    """Prime factorization of the principal ideal (x) for nonzero integral x."""
    x = K(x)
    if x.is_zero():
        raise InvalidInputError("cannot factor zero")
    N = abs(x.norm())
    kwargs = {} if rho_iterations is None else {"rho_iterations": rho_iterations}
    out = []
    ps = set(factor_integer(N.numerator, **kwargs)) if N.numerator != 1 else set()
    if N.denominator != 1:
        ps |= set(factor_integer(N.denominator, **kwargs))
    for p in sorted(ps):
        for P in decompose_prime(K, p):
            v = valuation(x, P)
            if v:
                out.append((P, v))
    fac = IdealFactorization(out)
    if check and x.den == 1:
        if fac.product(K) != Ideal.principal(K, x):
            raise ArithmeticError("factorization product check failed")
    return fac


def factor_ideal(I: Ideal) -> IdealFactorization:
    K = I.field
    ps = set()
    num = I.numerator_norm()
    if num > 1:
        ps |= set(factor_integer(num))
    if I.den > 1:
        ps |= set(factor_integer(I.den))
    out = []
    for p in sorted(ps):
        for P in decompose_prime(K, p):
            v = valuation(I, P)
            if v:
                out.append((P, v))
    return IdealFactorization(out)


def splitting_type(K: NumberField, p: int) -> list[tuple[int, int]]:
    return sorted((P.e, P.f) for P in decompose_prime(K, p))


def splits_totally(K: NumberField, p: int) -> bool:
    return all(e == 1 and f == 1 for e, f in splitting_type(K, p)) and len(decompose_prime(K, p)) == K.n


def inertia_degrees(K: NumberField, p: int) -> list[int]:
    return [P.f for P in decompose_prime(K, p)]


def is_unramified(K: NumberField, p: int) -> bool:
    return K.disc % p != 0


# --- different and discriminants -----------------------------------------


def codifferent(K: NumberField) -> Ideal:
    T = K.trace_matrix
    inv = rat_inverse(T)
    d = 1
    for r in inv:
        for x in r:
            d = lcm(d, x.denominator)
    return Ideal(K, [[int(x * d) for x in r] for r in inv], d)


def different(K: NumberField) -> Ideal:
    if "different" not in K._cache:
        K._cache["different"] = codifferent(K).inverse()
    return K._cache["different"]


def discriminant_different(K: NumberField) -> tuple[int, Ideal]:
    D = different(K)
    assert D.norm() == abs(K.disc)
    return K.disc, D


def lift_ideal(F: NumberField, K: NumberField, I: Ideal) -> Ideal:
    from .numberfield.galois import lift

    return Ideal.from_generators(K, [lift(F, K, g) for g in I.basis_elements()])


def primes_above(F: NumberField, K: NumberField, P: PrimeIdeal) -> list[PrimeIdeal]:
    """Primes of K dividing P O_K."""
    from .numberfield.galois import lift

    gens = [lift(F, K, g) for g in P.ideal.basis_elements()]
    return [Q for Q in decompose_prime(K, P.p) if all(g in Q for g in gens)]


def prime_below(F: NumberField, K: NumberField, Q: PrimeIdeal) -> PrimeIdeal:
    for P in decompose_prime(F, Q.p):
        if Q in primes_above(F, K, P):
            return P
    raise ArithmeticError("no prime below")


def relative_discriminant(F: NumberField, K: NumberField) -> Ideal:
    """The relative discriminant d_{K/F} as an ideal of F.

    Computed from different valuations: v_P(d) = sum over Q | P of
    f(Q|P) * (v_Q(D_K) - e(Q|P) v_P(D_F)).
    """
    DK = different(K)
    DF = different(F)
    I = Ideal.unit(F)
    for p in sorted(factor_integer(K.disc)) if abs(K.disc) > 1 else []:
        for P in decompose_prime(F, p):
            vF = valuation(DF, P)
            tot = 0
            for Q in primes_above(F, K, P):
                e_rel = Q.e // P.e
                f_rel = Q.f // P.f
                tot += f_rel * (valuation(DK, Q) - e_rel * vF)
            if tot:
                I = I * (P.ideal ** tot)
    return I


def dedekind_decomposition(K: NumberField, p: int) -> Optional[list[tuple[int, int]]]:
    """(e, f) pattern from factoring the defining polynomial mod p (power-basis
    fields whose integral basis is the power basis, p not dividing the index).
    None when this route does not apply."""
    amb = K.ambient
    if amb.kind != "power":
        return None
    if any(K.W[i][j] != (1 if i == j else 0) for i in range(K.n) for j in range(K.n)):
        return None
    fac = factor_poly_mod_p(list(amb.data["poly"]), p)
    return sorted((m, len(f) - 1) for f, m in fac)
