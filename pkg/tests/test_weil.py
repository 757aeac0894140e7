"""Weil-number classes, n_lcm, the exceptional sets W and V, and the torsion bound."""
from fractions import Fraction
from math import lcm

import pytest
import sympy

from conftest import field
from oracles import fr_bruteforce
from qmsieve.criteria.weil import (
    MIXED,
    TOTALLY_NEGATIVE,
    ZERO,
    fr_set,
    n_lcm,
    nlcm_candidates,
    prime_labels,
    torsion_bound,
    v_set,
    w_set,
)
from qmsieve.errors import InvalidInputError
from qmsieve.numberfield.galois import automorphisms
from qmsieve.numberfield.sqrt import sqrt_in_field

QUAD = {"Q": None, "realquad:2": 2, "realquad:5": 5}


def _positive_sqrt(F, m):
    s = sqrt_in_field(F, F(m))
    # pick the root that is positive at the first real place
    return s if F.float_embeddings()[0] @ [float(v) for v in s.coords()] > 0 else -s


def pairs(F, m, bs):
    if m is None:
        return {(b.coords()[0], Fraction(0)) for b in bs}
    s = _positive_sqrt(F, m)
    out = set()
    for b in bs:
        out.add((Fraction(b.trace(), 2), Fraction((b * s).trace(), 2 * m)))
    return out


@pytest.mark.parametrize("spec,want", [
    ("Q", 12), ("realquad:2", 24), ("realquad:5", 60), ("realquad:3", 12), ("poly:-1,-2,1,1", 84),
])
def test_n_lcm(spec, want):
    assert n_lcm(field(spec)) == want


def test_n_lcm_against_cosines():
    # independent check: lcm of the m for which 2cos(2 pi/m) is rational or generates Q(sqrt 2)
    x = sympy.Symbol("x")
    ms = []
    for m in range(1, 41):
        mp = sympy.minimal_polynomial(2 * sympy.cos(2 * sympy.pi / m), x)
        if sympy.degree(mp, x) == 1 or mp == x**2 - 2:
            ms.append(m)
    assert lcm(*ms) == n_lcm(field("realquad:2"))


def test_nlcm_candidates_cover_euler_phi():
    for d in (1, 2, 3):
        for m in range(1, 400):
            if (2 * d) % sympy.totient(m) == 0:
                assert m in nlcm_candidates(d)


@pytest.mark.parametrize("spec", sorted(QUAD))
@pytest.mark.parametrize("q,f", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (11, 1), (13, 1),
                                 (2, 4), (2, 5), (5, 2), (17, 1), (19, 1), (23, 1), (29, 1), (31, 1),
                                 (37, 1), (41, 1), (43, 1), (47, 1)])
def test_fr_against_hypercube(spec, q, f):
    if q ** f > 50:
        pytest.skip("outside the checked range")
    F = field(spec)
    m = QUAD[spec]
    got = pairs(F, m, [c.b for c in fr_set(F, q, f)])
    assert got == fr_bruteforce(m, q ** f)


def test_fr_contains_2_sqrt2():
    F = field("realquad:2")
    got = pairs(F, 2, [c.b for c in fr_set(F, 2, 1)])
    assert (0, 2) in got and (0, -2) in got


@pytest.mark.parametrize("spec", ["realquad:2", "realquad:5", "poly:-1,-2,1,1"])
def test_fr_invariants(spec):
    F = field(spec)
    for q in (2, 3, 7):
        bs = {tuple(c.b.coords()) for c in fr_set(F, q, 1)}
        assert {tuple((-F.element(list(b))).coords()) for b in bs} == bs
        for A in automorphisms(F):
            assert {tuple(F.apply_matrix(A, F.element(list(b))).coords()) for b in bs} == bs


def test_disc_status():
    F = field("realquad:2")
    st = {pairs(F, 2, [c.b]).pop(): c.disc_status for c in fr_set(F, 2, 1)}
    # (2 sqrt 2)^2 = 4 * 2, so beta = sqrt 2 lies in F
    assert st[(0, 2)] == st[(0, -2)] == ZERO
    assert st[(0, 0)] == st[(1, 1)] == TOTALLY_NEGATIVE
    # the discriminant is a conjugate-invariant element, so it never vanishes at just one place
    assert MIXED not in st.values()
    Q = field("Q")
    zs = [c for c in fr_set(Q, 2, 2) if c.disc_status == ZERO]
    assert sorted(c.b.coords()[0] for c in zs) == [-4, 4]
    assert all(c.contribution.coords()[0] == (c.b.coords()[0] + 2) / 2 for c in zs)


def test_fr_7_over_Q():
    assert len(fr_set(field("Q"), 7)) == 11


def test_w_and_v_over_Q():
    Q = field("Q")
    assert prime_labels(w_set(Q, 2, 1)) == prime_labels(v_set(Q, 2, 1))
    assert [P.p for P in w_set(Q, 2, 1)] == [2, 3, 5]
    assert torsion_bound(Q, 2, 1) == 28800


def test_w_subset_of_v():
    for spec in ("realquad:2", "realquad:5"):
        F = field(spec)
        for ell in (2, 3, 7):
            w = set(prime_labels(w_set(F, ell)))
            assert w <= set(prime_labels(v_set(F, ell)))
            assert {str(ell)} <= {lab.split(".")[0] for lab in w}


def test_w_brute_force_over_Q():
    # primes dividing 2 or some b + 3 with b^2 <= 8, b in [-3, 3]
    want = {2}
    for b in range(-3, 4):
        if b * b <= 8:
            want |= set(sympy.factorint(b + 3))
    assert [P.p for P in w_set(field("Q"), 2, 1)] == sorted(want)


def test_bad_inputs():
    with pytest.raises(InvalidInputError):
        fr_set(field("Q"), 4)
    with pytest.raises(InvalidInputError):
        n_lcm(field("quad:-5"))
