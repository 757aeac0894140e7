"""Rational-integer utilities: primality, factorization, squarefree parts."""
from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

from ..errors import ResourceBoundError

TRIAL_DIVISION_LIMIT = 10**6
RHO_SEEDS = (2, 3, 5, 7, 11, 13, 17, 19)
DEFAULT_RHO_ITERATIONS = 2_000_000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i, v in enumerate(sieve) if v)


def primes_from(start: int = 2) -> Iterator[int]:
    """Rational primes >= start, in increasing order, unbounded."""
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


def next_prime(n: int) -> int:
    return next(primes_from(n + 1))


def _pollard_brent(n: int, seed: int, max_iter: int) -> int | None:
    y, c, m = seed % n, (seed * seed + 1) % n or 1, 128
    g = r = q = 1
    x = ys = y
    it = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
        it += r
        if it > max_iter:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g if g != n else None


def factor_integer(n: int, rho_iterations: int = DEFAULT_RHO_ITERATIONS) -> dict[int, int]:
    """Prime factorization of |n| (n != 0) as {p: e}.

    Trial division up to 10^6, then Pollard-Brent rho with fixed seeds.  If
    the budget is exhausted a ResourceBoundError names the unfactored part.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in primes_up_to(1000):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1 and n < 1000 * 1000:
        if n > 1:
            out[n] = out.get(n, 0) + 1
        return dict(sorted(out.items()))
    if n > 1:
        for p in primes_up_to(TRIAL_DIVISION_LIMIT)[168:]:
            if p * p > n:
                break
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < TRIAL_DIVISION_LIMIT**2 or is_prime(m):
            # below 10^12 every cofactor left after trial division is prime
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        d = None
        for seed in RHO_SEEDS:
            d = _pollard_brent(m, seed, rho_iterations)
            if d:
                break
        if not d:
            raise ResourceBoundError(
                "factor budget", f"could not split cofactor {m} within {rho_iterations} rho iterations"
            )
        stack.extend([d, m // d])
    return dict(sorted(out.items()))


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = s * t^2 with s squarefree."""
    if n == 0:
        return 0
    s = -1 if n < 0 else 1
    for p, e in factor_integer(n).items():
        if e % 2:
            s *= p
    return s


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def euler_phi(m: int) -> int:
    out = m
    for p in factor_integer(m):
        out = out // p * (p - 1)
    return out


def lcm(*args: int) -> int:
    out = 1
    for a in args:
        out = out * a // gcd(out, a)
    return out
