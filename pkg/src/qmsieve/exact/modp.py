"""Linear algebra and univariate polynomials over prime fields GF(p).

Polynomials are lists of residues, lowest degree first, trimmed so the
zero polynomial is ``[]``.
"""
from __future__ import annotations

from typing import Sequence

from .integers import is_prime
from .poly import IntPolynomial

# Seeds for equal-degree splitting; fixed so factor order is reproducible.
EDF_SEED_BASE = 0x5EED


# --- linear algebra --------------------------------------------------------


def rref_mod(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    a = [[x % p for x in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod(rows, p)[0])


def left_kernel_mod(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of {x : x * M = 0 mod p} for M given by its rows."""
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    aug = [[x % p for x in r] + [int(i == j) for j in range(m)] for i, r in enumerate(rows)]
    # eliminate on the first ncols columns
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        r += 1
    kern = [row[ncols:] for row in aug[r:]]
    basis, _ = rref_mod(kern, p)
    return basis


def kernel_mod(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of {x : M x = 0 mod p} (right kernel)."""
    cols = [list(c) for c in zip(*rows)] if rows else []
    return left_kernel_mod(cols, p)


def solve_left_mod(v: Sequence[int], rows: Sequence[Sequence[int]], p: int):
    """Some x with x * M = v mod p, or None."""
    m = len(rows)
    ncols = len(v)
    aug = [[x % p for x in r] + [int(i == j) for j in range(m)] for i, r in enumerate(rows)]
    target = [x % p for x in v]
    r = 0
    piv_cols = []
    for c in range(ncols):
        piv = next((i for i in range(r, m) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    x = [0] * m
    t = list(target)
    for i, c in enumerate(piv_cols):
        f = t[c]
        if f:
            t = [(a - f * b) % p for a, b in zip(t, aug[i][:ncols])]
            x = [(a + f * b) % p for a, b in zip(x, aug[i][ncols:])]
    if any(t):
        return None
    return x


# --- polynomials over GF(p) ------------------------------------------------


def ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def pmod_poly(a: Sequence[int], p: int) -> list[int]:
    return ptrim([x % p for x in a])


def padd(a, b, p):
    n = max(len(a), len(b))
    return ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def psub(a, b, p):
    n = max(len(a), len(b))
    return ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ptrim([x % p for x in out])


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], ptrim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = (a[k + db] * inv) % p
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] = (a[k + i] - c * y) % p
    return ptrim(q), ptrim(a[:db])


def prem(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [(x * inv) % p for x in a]


def pgcd(a, b, p):
    a, b = ptrim(list(a)), ptrim(list(b))
    while b:
        a, b = b, prem(a, b, p)
    return pmonic(a, p)


def pderiv(a, p):
    return ptrim([(i * x) % p for i, x in enumerate(a)][1:])


def ppowmod(base, e, mod, p):
    result = [1]
    base = prem(base, mod, p)
    while e:
        if e & 1:
            result = prem(pmul(result, base, p), mod, p)
        base = prem(pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _pth_root(a, p):
    # a is a polynomial in x^p; return b with b^p = a over GF(p)
    return ptrim([a[i] for i in range(0, len(a), p)])


def squarefree_factorization_mod(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Monic squarefree factors with multiplicities (Yun / char-p variant)."""
    f = pmonic(ptrim(list(f)), p)
    out: list[tuple[list[int], int]] = []
    if len(f) <= 1:
        return out

    def rec(f, mult):
        i = 1
        g = pderiv(f, p)
        if g:
            c = pgcd(f, g, p)
            w = pdivmod(f, c, p)[0]
            while len(w) > 1:
                y = pgcd(w, c, p)
                z = pdivmod(w, y, p)[0]
                if len(z) > 1:
                    out.append((pmonic(z, p), i * mult))
                i += 1
                w = y
                c = pdivmod(c, y, p)[0]
            if len(c) > 1:
                rec(_pth_root(c, p), mult * p)
        else:
            rec(_pth_root(f, p), mult * p)

    rec(f, 1)
    return out


def distinct_degree_factorization(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """For squarefree monic f: list of (product of degree-d irreducibles, d)."""
    out = []
    h = [0, 1]
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, p, f, p)
        g = pgcd(f, psub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(f, g, p)[0]
            h = prem(h, f, p)
    if len(f) > 1:
        out.append((pmonic(f, p), len(f) - 1))
    return out


def _det_rng(seed: int):
    # small deterministic LCG; the sequence is part of the reproducibility contract
    state = seed & 0xFFFFFFFFFFFF
    while True:
        state = (state * 0x5DEECE66D + 11) & 0xFFFFFFFFFFFF
        yield state >> 16


def equal_degree_split(f: list[int], d: int, p: int) -> list[list[int]]:
    """Split a product of distinct degree-d monic irreducibles (Cantor-Zassenhaus)."""
    n = len(f) - 1
    if n == d:
        return [f]
    rng = _det_rng(EDF_SEED_BASE + 7919 * n + d)
    while True:
        a = ptrim([next(rng) % p for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, s = a, a
            for _ in range(d - 1):
                s = prem(pmul(s, s, p), f, p)
                t = padd(t, s, p)
            g = pgcd(f, t, p)
        else:
            e = (p**d - 1) // 2
            b = ppowmod(a, e, f, p)
            g = pgcd(f, psub(b, [1], p), p)
        if 1 < len(g) < len(f):
            h = pdivmod(f, g, p)[0]
            return equal_degree_split(g, d, p) + equal_degree_split(pmonic(h, p), d, p)


def factor_poly_mod_p(poly: IntPolynomial | Sequence[int], q: int) -> list[tuple[list[int], int]]:
    """Monic irreducible factors of ``poly`` over GF(q) with multiplicities.

    Output is sorted by (degree, coefficients) so it is reproducible.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    coeffs = poly.coeffs if isinstance(poly, IntPolynomial) else tuple(poly)
    f = pmod_poly(coeffs, q)
    if not f:
        raise ValueError("polynomial vanishes mod q")
    out = []
    for g, m in squarefree_factorization_mod(f, q):
        for h, d in distinct_degree_factorization(g, q):
            for irr in equal_degree_split(h, d, q):
                out.append((irr, m))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return out


def is_irreducible_mod(poly: Sequence[int], q: int) -> bool:
    fac = factor_poly_mod_p(list(poly), q)
    return len(fac) == 1 and fac[0][1] == 1
