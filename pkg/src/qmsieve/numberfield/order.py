"""Orders inside an ambient algebra and Round-2 p-maximalization."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from ..exact.integers import factor_integer
from ..exact.intmat import det, hnf_rows, hnf_rows_n, rat_inverse
from ..exact.modp import left_kernel_mod
from .ambient import Ambient

IntTable = list  # mt[i][j] -> tuple of ints


def table_from_basis(amb: Ambient, W: Sequence[Sequence[Fraction]]) -> IntTable:
    """Structure constants of the Z-module spanned by ``W``; raises if not a ring."""
    n = len(W)
    Winv = rat_inverse(W)
    mt = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            prod = amb.mul(W[i], W[j])
            coords = [sum(prod[k] * Winv[k][c] for k in range(n) if prod[k]) for c in range(n)]
            if any(Fraction(x).denominator != 1 for x in coords):
                raise ValueError("basis does not span a ring")
            t = tuple(int(x) for x in coords)
            mt[i][j] = mt[j][i] = t
    return mt


def omul(mt: IntTable, a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = len(mt)
    out = [0] * n
    for i, x in enumerate(a):
        if not x:
            continue
        row = mt[i]
        for j, y in enumerate(b):
            if not y:
                continue
            xy = x * y
            for k, c in enumerate(row[j]):
                if c:
                    out[k] += xy * c
    return out


def omul_mod(mt: IntTable, a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return [x % p for x in omul(mt, a, b)]


def opow_mod(mt: IntTable, a: Sequence[int], e: int, p: int) -> list[int]:
    n = len(mt)
    result = [1] + [0] * (n - 1)
    base = [x % p for x in a]
    while e:
        if e & 1:
            result = omul_mod(mt, result, base, p)
        e >>= 1
        if e:
            base = omul_mod(mt, base, base, p)
    return result


def trace_vector(mt: IntTable) -> list[int]:
    n = len(mt)
    return [sum(mt[k][j][j] for j in range(n)) for k in range(n)]


def trace_matrix(mt: IntTable) -> list[list[int]]:
    n = len(mt)
    t = trace_vector(mt)
    return [[sum(c * tk for c, tk in zip(mt[i][j], t)) for j in range(n)] for i in range(n)]


def p_radical(mt: IntTable, p: int) -> list[list[int]]:
    """HNF basis (order coordinates) of the radical of pO."""
    n = len(mt)
    j = 1
    q = p
    while q < n:
        q *= p
        j += 1
    frob = [opow_mod(mt, [int(i == k) for k in range(n)], q, p) for i in range(n)]
    kern = left_kernel_mod(frob, p)
    return hnf_rows_n(kern, n, modulus=p)


def _coords_in(v: Sequence[int], Hinv: Sequence[Sequence[Fraction]]) -> list[int]:
    n = len(v)
    out = []
    for c in range(n):
        s = sum(v[k] * Hinv[k][c] for k in range(n) if v[k])
        if Fraction(s).denominator != 1:
            raise ArithmeticError("element not in lattice")
        out.append(int(s))
    return out


def round2_step(mt: IntTable, p: int) -> list[list[Fraction]] | None:
    """One enlargement at p: the ring of multipliers of the p-radical.

    Returns the new basis in old coordinates, or None if the order is
    already p-maximal.
    """
    n = len(mt)
    H = p_radical(mt, p)
    Hinv = rat_inverse(H)
    rows = []
    for i in range(n):
        e = [int(k == i) for k in range(n)]
        row = []
        for h in H:
            row.extend(x % p for x in _coords_in(omul(mt, e, h), Hinv))
        rows.append(row)
    kern = left_kernel_mod(rows, p)
    if not kern:
        return None
    U = hnf_rows_n(kern, n, modulus=p)
    return [[Fraction(x, p) for x in r] for r in U]


def maximalize(amb: Ambient, W: list[list[Fraction]], primes: Sequence[int] | None = None):
    """Enlarge the order spanned by ``W`` to be p-maximal at the given primes.

    With ``primes`` None they are taken from p^2 | disc.  Returns
    (W, table, disc, certified primes).
    """
    mt = table_from_basis(amb, W)
    disc = det(trace_matrix(mt))
    if disc == 0:
        raise ValueError("degenerate trace form: not a field")
    if primes is None:
        primes = [p for p, e in factor_integer(disc).items() if e >= 2]
    for p in primes:
        while True:
            step = round2_step(mt, p)
            if step is None:
                break
            W = [[sum(a * w for a, w in zip(col_coeffs, col)) for col in zip(*W)] for col_coeffs in step]
            mt = table_from_basis(amb, W)
            disc = det(trace_matrix(mt))
    return W, mt, disc, tuple(sorted(primes))


def common_denominator(rows: Sequence[Sequence[Fraction]]) -> int:
    d = 1
    for r in rows:
        for x in r:
            d = lcm(d, Fraction(x).denominator)
    return d


def echelon_basis(W: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Canonical basis of the lattice spanned by ``W``: lower echelon in ambient coordinates.

    Row i has its last nonzero ambient coordinate at position i, so the first
    row is 1 whenever the lattice meets Q in Z.
    """
    n = len(W)
    D = common_denominator(W)
    M = [[int(x * D) for x in reversed(r)] for r in W]
    H = hnf_rows(M)
    out = [[Fraction(x, D) for x in reversed(r)] for r in H]
    out.reverse()
    if len(out) != n:
        raise ValueError("basis is not of full rank")
    return out
