"""Ambient Q-algebras: a rational basis e_0 = 1, e_1, ... with structure constants.

Every supported field is first written in an obvious ambient basis (powers
of a root, products of square roots, or a relative basis {1, sqrt delta});
the maximal order is then located inside it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

Vec = list  # list of Fraction


@dataclass
class Ambient:
    dim: int
    table: list  # table[i][j] -> list of Fractions (length dim)
    conj: Optional[list] = None  # rational dim x dim matrix acting on rows, None if totally real
    kind: str = ""
    data: dict = field(default_factory=dict)

    def one(self) -> Vec:
        return [Fraction(int(i == 0)) for i in range(self.dim)]

    def mul(self, a: Sequence, b: Sequence) -> Vec:
        n = self.dim
        out = [Fraction(0)] * n
        t = self.table
        for i, x in enumerate(a):
            if not x:
                continue
            ti = t[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(ti[j]):
                    if c:
                        out[k] += xy * c
        return out

    def apply(self, mat: Sequence[Sequence], v: Sequence) -> Vec:
        out = [Fraction(0)] * self.dim
        for a, row in zip(v, mat):
            if a:
                for j, x in enumerate(row):
                    if x:
                        out[j] += a * x
        return out


def power_basis_ambient(coeffs: Sequence[int], cm: bool = False) -> Ambient:
    """Q[x]/(P) for monic P given lowest-first; ``cm`` marks x -> -x as conjugation."""
    n = len(coeffs) - 1
    # reduction of x^k for k < 2n - 1
    powers = []
    cur = [Fraction(int(i == 0)) for i in range(n)]
    for _ in range(2 * n - 1):
        powers.append(cur)
        # multiply by x
        top = cur[-1]
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            nxt = [a - top * c for a, c in zip(nxt, coeffs[:-1])]
        cur = nxt
    table = [[list(powers[i + j]) for j in range(n)] for i in range(n)]
    conj = None
    if cm:
        conj = [[Fraction((-1) ** i if i == j else 0) for j in range(n)] for i in range(n)]
    return Ambient(n, table, conj, "power", {"poly": tuple(coeffs)})


def multiquadratic_ambient(ms: Sequence[int]) -> Ambient:
    r = len(ms)
    n = 1 << r
    table = [[None] * n for _ in range(n)]
    for s in range(n):
        for t in range(n):
            c = 1
            for i in range(r):
                if (s >> i) & 1 and (t >> i) & 1:
                    c *= ms[i]
            v = [Fraction(0)] * n
            v[s ^ t] = Fraction(c)
            table[s][t] = v
    conj = None
    if any(m < 0 for m in ms):
        conj = [[Fraction(0)] * n for _ in range(n)]
        for s in range(n):
            neg = sum(1 for i in range(r) if (s >> i) & 1 and ms[i] < 0)
            conj[s][s] = Fraction((-1) ** neg)
    return Ambient(n, table, conj, "multiquad", {"ms": tuple(ms)})


def relative_quadratic_ambient(base: Ambient, delta: Sequence) -> Ambient:
    """base (x) {1, sqrt delta}; index i + s * dim(base) for s in {0, 1}."""
    nb = base.dim
    n = 2 * nb
    table = [[None] * n for _ in range(n)]
    for i in range(nb):
        for j in range(nb):
            prod = base.table[i][j]
            pd = base.mul(prod, delta)
            for s in (0, 1):
                for t in (0, 1):
                    v = [Fraction(0)] * n
                    if s + t == 0:
                        v[:nb] = prod
                    elif s + t == 1:
                        v[nb:] = prod
                    else:
                        v[:nb] = pd
                    table[i + s * nb][j + t * nb] = v
    conj = [[Fraction(0)] * n for _ in range(n)]
    for i in range(nb):
        conj[i][i] = Fraction(1)
        conj[i + nb][i + nb] = Fraction(-1)
    return Ambient(n, table, conj, "relquad", {"delta": tuple(delta), "base_dim": nb})


def table_ambient(table: Sequence, conj: Optional[Sequence] = None) -> Ambient:
    n = len(table)
    t = [[[Fraction(x) for x in table[i][j]] for j in range(n)] for i in range(n)]
    c = [[Fraction(x) for x in r] for r in conj] if conj is not None else None
    return Ambient(n, t, c, "explicit", {})
