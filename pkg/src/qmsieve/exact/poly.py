"""Integer and rational univariate polynomials.

Coefficients are stored lowest degree first.  Everything here is exact:
real roots are located with Sturm sequences over ``fractions.Fraction``
and resultants come from the subresultant pseudo-remainder sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

Number = int | Fraction


def _trim(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        c = _trim(int(a) for a in coeffs)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-a for a in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self.coeffs)
        return IntPolynomial(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * a for i, a in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    def primitive(self) -> "IntPolynomial":
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(a // g for a in self.coeffs)

    def squarefree_part(self) -> "IntPolynomial":
        if self.degree < 1:
            return self.primitive()
        g = poly_gcd(self, self.derivative())
        if g.degree == 0:
            return self.primitive()
        q, r = pseudo_divmod(self, g)
        return q.primitive()

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(a) == 1:
                s = "-" + mono if a < 0 else mono
            else:
                s = f"{a}{'*' if mono else ''}{mono}"
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")


def _mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def pseudo_divmod(a: IntPolynomial, b: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Pseudo-division: lc(b)^(deg a - deg b + 1) * a = q*b + r."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a.coeffs)
    db = b.degree
    lb = b.leading
    if len(r) - 1 < db:
        return IntPolynomial([]), a
    q = [0] * (len(r) - db)
    e = len(r) - 1 - db + 1
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        lr = r[-1]
        q = [c * lb for c in q]
        q[k] += lr
        r = [c * lb for c in r]
        for i, c in enumerate(b.coeffs):
            r[i + k] -= lr * c
        r = list(_trim(r))
        e -= 1
    mult = lb**e
    return IntPolynomial(c * mult for c in q), IntPolynomial(c * mult for c in r)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Q (positive leading coefficient)."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        _, r = pseudo_divmod(a, b)
        a, b = b, r.primitive()
    return a.primitive()


# --- rational helpers ------------------------------------------------------


def rat_poly_eval(coeffs: Sequence[Number], x: Number) -> Number:
    acc: Number = 0
    for a in reversed(coeffs):
        acc = acc * x + a
    return acc


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# --- Sturm sequences -------------------------------------------------------


@lru_cache(maxsize=512)
def sturm_sequence(p: IntPolynomial) -> tuple[IntPolynomial, ...]:
    """Sturm chain of the squarefree part of ``p`` (primitive integer scaled)."""
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    p0 = p.squarefree_part()
    seq = [p0, p0.derivative().primitive() if p0.degree > 0 else IntPolynomial([])]
    if seq[1].is_zero():
        return (p0,)
    while True:
        a, b = seq[-2], seq[-1]
        _, r = pseudo_divmod(a, b)
        if r.is_zero():
            break
        # pseudo-remainder carries lc(b)^k, k >= 1; keep the sign of the true remainder
        k = a.degree - b.degree + 1
        s = 1 if (b.leading > 0 or k % 2 == 0) else -1
        rr = r.primitive()
        if _sign(rr.leading) != -_sign(r.leading) * s:
            rr = -rr
        seq.append(rr)
    return tuple(seq)


def _variations_at(seq: Sequence[IntPolynomial], x: Optional[Number], side: int) -> int:
    """Sign variations at x; x None means +inf (side=1) or -inf (side=-1)."""
    signs = []
    for q in seq:
        if x is None:
            s = _sign(q.leading)
            if side < 0 and q.degree % 2 == 1:
                s = -s
        else:
            s = _sign(q(x))
        if s:
            signs.append(s)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(p: IntPolynomial, lo: Optional[Number] = None, hi: Optional[Number] = None) -> int:
    """Number of distinct real roots of ``p`` in the open interval (lo, hi).

    ``None`` endpoints stand for -inf / +inf.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no root count")
    if p.degree == 0:
        return 0
    if lo is not None and hi is not None and lo >= hi:
        return 0
    seq = sturm_sequence(p)
    va = _variations_at(seq, lo, -1)
    vb = _variations_at(seq, hi, 1)
    n = va - vb  # counts roots in (lo, hi]
    if hi is not None and seq[0](hi) == 0:
        n -= 1
    return n


@dataclass(frozen=True, order=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval with lo > hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2


def root_bound(p: IntPolynomial) -> int:
    """Cauchy bound: every complex root has absolute value < the result."""
    lc = abs(p.leading)
    m = max((abs(a) for a in p.coeffs[:-1]), default=0)
    return 1 + -(-m // lc)


def isolate_real_roots(p: IntPolynomial, max_width: Number = 1) -> list[RationalInterval]:
    """Disjoint closed intervals, one per distinct real root, sorted ascending.

    Non-degenerate intervals have non-root endpoints and contain exactly one
    root (Sturm count 1).  A rational root hit exactly during bisection is
    returned as the point interval [r, r].
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    max_width = Fraction(max_width)
    if max_width <= 0:
        raise ValueError("max_width must be positive")
    q = p.squarefree_part()
    if q.degree < 1:
        return []
    B = Fraction(root_bound(q))
    out: list[RationalInterval] = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        c = sturm_count(q, lo, hi)
        if c == 0:
            continue
        if c == 1 and hi - lo <= max_width:
            out.append(RationalInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        if q(mid) == 0:
            out.append(RationalInterval(mid, mid))
            # nudge the split point off the root
            eps = min(mid - lo, hi - mid) / 4
            stack.append((lo, mid - eps)) if sturm_count(q, lo, mid - eps) else None
            stack.append((mid + eps, hi)) if sturm_count(q, mid + eps, hi) else None
            # roots inside (mid-eps, mid) or (mid, mid+eps) other than mid
            if sturm_count(q, mid - eps, mid):
                stack.append((mid - eps, mid))
            if sturm_count(q, mid, mid + eps):
                stack.append((mid, mid + eps))
            continue
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    return out


def refine_root(p: IntPolynomial, iv: RationalInterval, max_width: Number) -> RationalInterval:
    """Bisect an isolating interval of a squarefree-reduced root down to max_width."""
    q = p.squarefree_part()
    lo, hi = iv.lo, iv.hi
    max_width = Fraction(max_width)
    while hi - lo > max_width:
        mid = (lo + hi) / 2
        v = q(mid)
        if v == 0:
            return RationalInterval(mid, mid)
        if sturm_count(q, lo, mid):
            hi = mid
        else:
            lo = mid
    return RationalInterval(lo, hi)


# --- resultants ------------------------------------------------------------


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Res(p, q) = lc(p)^deg q * prod q(root of p), by the subresultant PRS."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant with the zero polynomial")
    A, B = p, q
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    if B.degree == 0:
        return s * B.leading ** A.degree
    a, b = A.content(), B.content()
    t = a**B.degree * b**A.degree
    A = IntPolynomial(c // a for c in A.coeffs)
    B = IntPolynomial(c // b for c in B.coeffs)
    g = h = 1
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        _, r = pseudo_divmod(A, B)
        if r.is_zero():
            return 0
        A = B
        div = g * h**delta
        B = IntPolynomial(_exact_div(c, div) for c in r.coeffs)
        g = A.leading
        h = _exact_div(g**delta, h ** (delta - 1)) if delta >= 1 else h * 1
        if B.degree == 0:
            break
    dA = A.degree
    h = _exact_div(B.leading**dA, h ** (dA - 1)) if dA >= 1 else h
    return s * t * h


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        # fall back to Fraction so a bug surfaces as a type error, not silent rounding
        raise ArithmeticError(f"inexact division {a}/{b}")
    return q


def resultant_sylvester(p: IntPolynomial, q: IntPolynomial) -> int:
    """Determinant of the Sylvester matrix (slow reference route)."""
    from .intmat import det

    m, n = p.degree, q.degree
    size = m + n
    if size == 0:
        return 1
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return det(rows)


# --- cyclotomic ------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> IntPolynomial:
    """The m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("m must be positive")
    num = IntPolynomial([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            num, r = pseudo_divmod(num, cyclotomic(d))
            assert r.is_zero()
    return num


@lru_cache(maxsize=None)
def real_cyclotomic(m: int) -> IntPolynomial:
    """Minimal polynomial of 2cos(2*pi/m)."""
    if m == 1:
        return IntPolynomial([-2, 1])
    if m == 2:
        return IntPolynomial([2, 1])
    phi = cyclotomic(m)
    k = phi.degree // 2
    c = phi.coeffs
    # x^j + x^-j = C_j(y), C_0 = 2, C_1 = y, C_{j+1} = y C_j - C_{j-1}
    cheb = [IntPolynomial([2]), IntPolynomial([0, 1])]
    y = IntPolynomial([0, 1])
    for _ in range(2, k + 1):
        cheb.append(y * cheb[-1] - cheb[-2])
    psi = IntPolynomial([c[k]])
    for j in range(1, k + 1):
        psi = psi + cheb[j] * c[k + j]
    return psi
