"""The exceptional sets T(k), N_1(k) and the N_2 threshold; searches for the auxiliary primes."""
from __future__ import annotations

from math import gcd
from typing import Optional

from ..exact.integers import primes_from, primes_up_to
from ..ideals import PrimeIdeal, decompose_prime, inertia_degrees, primes_above, splits_totally
from ..numberfield.field import NumberField
from ..numberfield.galois import lift
from ..numberfield.sqrt import sqrt_in_field
from ..quaternion import QuaternionData, delta, splits_B, sufficient_condition
from .scan import m2_scan
from .sset import SSet
from .weil import ZERO, fr_set, small_norm_primes

DEFAULT_ELL_CAP = 10_000


def t_set(k: NumberField, F: NumberField, S: SSet, n: int) -> list[PrimeIdeal]:
    """Primes of F under S, of norm < 4^d, or over a rational prime < n_lcm."""
    out = set(small_norm_primes(F, 4 ** F.n))
    for ell in S.ells:
        out |= set(decompose_prime(F, ell))
    for p in primes_up_to(n - 1):
        out |= set(decompose_prime(F, p))
    return sorted(out, key=PrimeIdeal.sort_key)


def in_t_set(pF: PrimeIdeal, S: SSet, n: int) -> list[str]:
    """Reasons p_F lies in T(k) (empty list if it does not)."""
    why = []
    if pF.p in S.ells:
        why.append("under a prime of S")
    if pF.norm() < 4 ** pF.field.n:
        why.append("norm below 4^d")
    if pF.p < n:
        why.append("over a rational prime below n_lcm")
    return why


def is_ramified_member(k: NumberField, F: NumberField, pF: PrimeIdeal) -> bool:
    """p_F ramified over Q or in k."""
    if pF.e > 1:
        return True
    return any(Q.e > 1 for Q in primes_above(F, k, pF))


def n1_member(k: NumberField, F: NumberField, S: SSet, n: int, pF: PrimeIdeal, workers: int = 1,
              cap: Optional[int] = None) -> dict:
    """Membership of p_F in N_1(k) = N_0 u T u ramified, with the deciding reason."""
    why = in_t_set(pF, S, n)
    if why:
        return {"member": True, "set": "T", "reasons": why}
    if is_ramified_member(k, F, pF):
        return {"member": True, "set": "ramified"}
    kw = {} if cap is None else {"cap": cap}
    res = m2_scan(k, F, S, n, pF, workers=workers, **kw)
    return {"member": res.member, "set": "N0", "scan": res.to_json()}


def odd_inertia(k: NumberField, ell: int) -> Optional[int]:
    fs = set(inertia_degrees(k, ell))
    f = min(fs)
    return f if f % 2 else None


def find_ell2(B: QuaternionData, k: NumberField, n: int, cap: int = DEFAULT_ELL_CAP) -> Optional[tuple[int, int]]:
    """Smallest (ell, f) with ell not dividing n_lcm * Delta, odd inertia degree f in k, and
    F(sqrt(-ell)) not splitting B."""
    D = delta(B)
    for ell in primes_from(2):
        if ell > cap:
            return None
        if (n * D) % ell == 0:
            continue
        f = odd_inertia(k, ell)
        if f is None:
            continue
        if not splits_B(B, ell):
            return ell, f
    return None


def n2_threshold(B: QuaternionData, k: NumberField, n: int, cap: int = DEFAULT_ELL_CAP) -> Optional[tuple[int, int, int]]:
    """(ell_0, f_0, X) with X = 4 ell_0^(d f_0 n_lcm / 12), or None if the search cap is exhausted."""
    found = find_ell2(B, k, n, cap)
    if found is None:
        return None
    ell, f = found
    d = B.field.n
    e = d * f * n
    if e % 12:
        raise ArithmeticError("n_lcm is not divisible by 12")
    return ell, f, 4 * ell ** (e // 12)


def fr_elements_in_k(F: NumberField, k: NumberField, ell: int) -> Optional[dict]:
    """First Weil class of FR(ell) whose root lies in k, or None."""
    for c in fr_set(F, ell, 1):
        if c.disc_status == ZERO:
            return {"b": c.b.to_json(), "reason": "degenerate class, beta in F"}
        r = sqrt_in_field(k, lift(F, k, c.disc))
        if r is not None:
            return {"b": c.b.to_json(), "sqrt_disc": r.to_json()}
    return None


def find_ell1(F: NumberField, k: NumberField, n: int, h: int, cap: int = DEFAULT_ELL_CAP) -> Optional[int]:
    """Smallest prime not dividing n_lcm h_k, totally split in k, with no FR(ell) element in k."""
    for ell in primes_from(2):
        if ell > cap:
            return None
        if (n * h) % ell == 0 or not splits_totally(k, ell):
            continue
        if fr_elements_in_k(F, k, ell) is None:
            return ell
    return None


def ell2_diagnostic(B: QuaternionData, k: NumberField) -> dict:
    try:
        ok, wit = sufficient_condition(B, k)
    except Exception as exc:  # unsupported relative shape
        return {"sufficient_condition": None, "detail": str(exc)}
    return {"sufficient_condition": ok, "witnesses": wit}


def galois_exponent_two(k: NumberField) -> bool:
    from ..numberfield.galois import group_exponent

    return group_exponent(k) <= 2


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
