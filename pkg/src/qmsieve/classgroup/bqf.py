"""Positive definite binary quadratic forms of negative fundamental discriminant."""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import gcd, isqrt

from ..errors import InvalidInputError
from ..exact.integers import factor_integer, squarefree_part

Form = tuple  # (a, b, c)


def is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return squarefree_part(D) == D
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree_part(m) == m
    return False


def field_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt m) for squarefree m."""
    return m if m % 4 == 1 else 4 * m


def reduce_form(f: Form) -> Form:
    a, b, c = f
    D = b * b - 4 * a * c
    while True:
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            b = b + 2 * a * k
            c = (b * b - D) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return (a, b, c)


def identity_form(D: int) -> Form:
    b = D % 2
    return (1, b, (b * b - D) // 4)


def _xgcd3(a: int, b: int, c: int):
    """(d, u, v, w) with u a + v b + w c = d = gcd(a, b, c)."""

    def xg(x, y):
        x0, x1, y0, y1 = 1, 0, 0, 1
        while y:
            q, x, y = x // y, y, x % y
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        return x, x0, y0

    d1, u1, v1 = xg(a, b)
    d, s, w = xg(d1, c)
    if d < 0:
        d, s, w = -d, -s, -w
    return d, s * u1, s * v1, w


def compose(f: Form, g: Form) -> Form:
    """Gaussian composition (Dirichlet / Buell form) followed by reduction."""
    a1, b1, c1 = f
    a2, b2, c2 = g
    D = b1 * b1 - 4 * a1 * c1
    s = (b1 + b2) // 2
    d, u, v, w = _xgcd3(a1, a2, s)
    A = a1 * a2 // (d * d)
    B = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + D) // 2) // d
    B %= 2 * A
    C = (B * B - D) // (4 * A)
    return reduce_form((A, B, C))


def inverse_form(f: Form) -> Form:
    a, b, c = f
    return reduce_form((a, -b, c))


def form_power(f: Form, e: int) -> Form:
    D = f[1] ** 2 - 4 * f[0] * f[2]
    result = identity_form(D)
    base = f
    if e < 0:
        base, e = inverse_form(f), -e
    while e:
        if e & 1:
            result = compose(result, base)
        e >>= 1
        if e:
            base = compose(base, base)
    return result


def reduced_forms(D: int) -> list[Form]:
    """All reduced primitive forms of discriminant D < 0, sorted."""
    if D >= 0 or D % 4 not in (0, 1):
        raise InvalidInputError(f"bad discriminant {D}")
    out = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
    return sorted(out)


def form_order(f: Form) -> int:
    D = f[1] ** 2 - 4 * f[0] * f[2]
    e = identity_form(D)
    g, k = f, 1
    while g != e:
        g = compose(g, f)
        k += 1
    return k


def structure_from_orders(orders: list[int]) -> list[int]:
    """Invariant factors d1 | d2 | ... (all > 1) of a finite abelian group from its element orders."""
    h = len(orders)
    if h == 1:
        return []
    # for each prime p: N_j = #{x : x^{p^j} = 1}
    pparts: dict[int, list[int]] = {}
    for p in factor_integer(h):
        counts = []
        j = 0
        prev = 1
        while True:
            j += 1
            pj = p ** j
            N = sum(1 for o in orders if pj % o == 0)
            r = 0
            q = N // prev
            while q > 1:
                q //= p
                r += 1
            if r == 0:
                break
            counts.append(r)  # number of cyclic p-factors of exponent >= j
            prev = N
        # exponents a_i: counts[j-1] = #{i : a_i >= j}
        exps = []
        for j in range(len(counts)):
            nxt = counts[j + 1] if j + 1 < len(counts) else 0
            exps.extend([j + 1] * (counts[j] - nxt))
        pparts[p] = sorted(exps, reverse=True)
    width = max(len(v) for v in pparts.values())
    inv = [1] * width
    for p, exps in pparts.items():
        for i, a in enumerate(exps):
            inv[i] *= p ** a
    return sorted(inv)


@lru_cache(maxsize=256)
def bqf_class_group(D: int) -> tuple[int, tuple[int, ...]]:
    """(h, invariant factors) for a negative fundamental discriminant D."""
    if D >= 0 or not is_fundamental(D):
        raise InvalidInputError(f"{D} is not a negative fundamental discriminant")
    forms = reduced_forms(D)
    orders = [form_order(f) for f in forms]
    return len(forms), tuple(structure_from_orders(orders))


def prime_form(D: int, q: int) -> Form | None:
    """A form (q, b, c) representing a prime of norm q (q not dividing D or ramified), reduced."""
    for b in range(0, 2 * q):
        if (b * b - D) % (4 * q) == 0:
            return reduce_form((q, b, (b * b - D) // (4 * q)))
    return None


def orders_histogram(D: int) -> dict[int, int]:
    return dict(Counter(form_order(f) for f in reduced_forms(D)))
