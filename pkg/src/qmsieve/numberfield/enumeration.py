"""Exact lattice-point enumeration (Fincke-Pohst on an LLL-reduced Gram matrix)."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

from ..errors import ResourceBoundError
from ..exact.intmat import lll_gram, matmul, transpose
from .field import FieldElement, NumberField, is_totally_nonneg

DEFAULT_BOX_CAP = 10**8


def _cholesky_q(G: Sequence[Sequence[Fraction]]):
    """q with Q(y) = sum_i q[i][i] * (y_i + sum_{j>i} q[i][j] y_j)^2."""
    n = len(G)
    q = [[Fraction(x) for x in r] for r in G]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def short_vectors(gram: Sequence[Sequence], bound, cap: int = DEFAULT_BOX_CAP) -> list[tuple[int, ...]]:
    """All integer x with x G x^t <= bound (exact), in the original coordinates."""
    n = len(gram)
    bound = Fraction(bound)
    if bound < 0:
        return []
    T = lll_gram(gram)
    Gr = matmul(matmul(T, [[Fraction(x) for x in r] for r in gram]), transpose(T))
    q = _cholesky_q(Gr)
    out: list[tuple[int, ...]] = []
    y = [0] * n
    visited = 0

    def rec(i: int, remaining: Fraction):
        nonlocal visited
        c = -sum((q[i][j] * y[j] for j in range(i + 1, n)), Fraction(0))
        s = remaining / q[i][i]
        r = isqrt(s.numerator // s.denominator) + 1
        lo = int(c) - r - 1
        hi = int(c) + r + 1
        for v in range(lo, hi + 1):
            d = v - c
            t = q[i][i] * d * d
            if t > remaining:
                continue
            visited += 1
            if visited > cap:
                raise ResourceBoundError("box cap", f"more than {cap} lattice points visited")
            y[i] = v
            if i == 0:
                out.append(tuple(y))
            else:
                rec(i - 1, remaining - t)
        y[i] = 0

    rec(n - 1, bound)
    res = []
    for yv in out:
        x = [0] * n
        for k, a in enumerate(yv):
            if a:
                row = T[k]
                for l in range(n):
                    x[l] += a * row[l]
        res.append(tuple(x))
    return res


def enumerate_box(K: NumberField, R2, cap: int = DEFAULT_BOX_CAP) -> list[FieldElement]:
    """All x in O_K with |sigma(x)|^2 <= R2 at every archimedean place, sorted canonically.

    Candidates come from T2(x) <= n * R2; each is accepted by the exact test
    that R2 - x * conj(x) is totally nonnegative.
    """
    R2 = Fraction(R2)
    if R2 < 0:
        return []
    pts = short_vectors(K.t2_gram, K.n * R2, cap)
    out = []
    for v in pts:
        x = FieldElement(K, v, 1)
        if _within(K, x, R2):
            out.append(x)
    out.sort(key=FieldElement.sort_key)
    return out


def _within(K: NumberField, x: FieldElement, R2: Fraction) -> bool:
    if x.is_zero():
        return True
    if K.n == 1:
        return Fraction(x.num[0], x.den) ** 2 <= R2
    xx = x * K.conjugate(x)
    return is_totally_nonneg(K(R2) - xx)


def lattice_points_t2(K: NumberField, basis: Sequence[Sequence[int]], bound, cap: int = DEFAULT_BOX_CAP):
    """Elements of the lattice with the given basis rows (order coordinates) and T2 <= bound."""
    G = K.t2_gram
    B = [list(r) for r in basis]
    gram = matmul(matmul(B, G), transpose(B))
    out = []
    for c in short_vectors(gram, bound, cap):
        v = [0] * K.n
        for a, row in zip(c, B):
            if a:
                for j, x in enumerate(row):
                    v[j] += a * x
        out.append(tuple(v))
    return out
