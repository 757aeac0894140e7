"""Number fields: construction, maximal orders, element arithmetic, enumeration, square roots, automorphisms."""
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import field
from qmsieve.errors import InvalidInputError, ResourceBoundError
from qmsieve.exact.intmat import det
from qmsieve.numberfield.enumeration import enumerate_box, short_vectors
from qmsieve.numberfield.field import is_totally_neg, is_totally_nonneg, is_totally_positive
from qmsieve.numberfield.galois import (
    automorphisms,
    complex_conjugation,
    descend,
    group_exponent,
    lift,
    quadratic_subfields,
    relative_norm,
)
from qmsieve.numberfield.spec import canonical_json, parse_field, spec_digest, spec_from_json
from qmsieve.numberfield.sqrt import sqrt_in_field

x = sympy.Symbol("x")

DISCS = {
    "Q": 1,
    "realquad:2": 8,
    "realquad:3": 12,
    "realquad:5": 5,
    "quad:-5": -20,
    "quad:-7": -7,
    "quad:-1": -4,
    "poly:-1,-2,1,1": 49,
    "poly:1,-3,0,1": 81,  # Q(zeta_9)+
    "multiquad:2,-17": 8 * 68 * 136,
    "multiquad:-1,5": 400,
    "relquad:poly:-1,-2,1,1:-17": -(49**2) * 68**3,
}


@pytest.mark.parametrize("spec,disc", sorted(DISCS.items()))
def test_discriminant(spec, disc):
    K = field(spec)
    assert K.disc == disc
    # the discriminant is det of the trace form of the integral basis
    assert det(K.trace_matrix) == disc


def test_power_basis_field_against_sympy():
    # x^3 - 3x + 1 has polynomial discriminant 81 = field discriminant (monogenic)
    K = field("poly:1,-3,0,1")
    assert sympy.discriminant(x**3 - 3 * x + 1) == K.disc


def test_non_monogenic_index():
    # x^2 - 5: polynomial disc 20, field disc 5; the order Z[sqrt 5] has index 2
    K = field("realquad:5")
    assert sympy.discriminant(x**2 - 5) == 4 * K.disc


@pytest.mark.parametrize("bad", ["realquad:4", "realquad:-3", "poly:0,-1,0,1", "poly:-2,0,0,1", "multiquad:2,8", "nonsense:3"])
def test_invalid_specs(bad):
    with pytest.raises(InvalidInputError):
        field(bad)


def test_spec_round_trip():
    for s in DISCS:
        spec = parse_field(s)
        assert spec_from_json(spec.to_json()) == spec
        assert spec_digest(spec) == spec_digest(spec_from_json(spec.to_json()))
    assert canonical_json(parse_field("k:quad:-7")) == canonical_json(parse_field("quad:-7"))


# --- element arithmetic --------------------------------------------------------

coords = st.lists(st.integers(-6, 6), min_size=4, max_size=4)


@given(coords, coords, coords)
@settings(max_examples=50, deadline=None)
def test_ring_axioms(a, b, c):
    K = field("multiquad:2,-17")
    A, B, C = K.element(a), K.element(b), K.element(c)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert (A * B).norm() == A.norm() * B.norm()
    if not A.is_zero():
        assert A * A.inverse() == K.one()


@given(coords)
@settings(max_examples=50, deadline=None)
def test_charpoly_matches_sympy(a):
    K = field("multiquad:2,-17")
    A = K.element(a)
    M = sympy.Matrix(A.mult_matrix())
    assert list(reversed(A.charpoly().coeffs)) == M.charpoly(x).all_coeffs()
    assert A.norm() == M.det() and A.trace() == M.trace()


def test_sign_predicates():
    F = field("realquad:2")
    s2 = sqrt_in_field(F, F(2))
    assert is_totally_positive(F(3) + s2) and not is_totally_positive(F(1) + s2)
    assert is_totally_nonneg(F(2) - s2 * s2) and not is_totally_nonneg(F(1) - s2)
    assert is_totally_neg(F(-3) + s2) and not is_totally_neg(F(-1) + s2)


# --- enumeration -----------------------------------------------------------------


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))),
    st.integers(0, 30))
@settings(max_examples=60, deadline=None)
def test_short_vectors_brute_force(data, bound):
    n, B = data
    if det(B) == 0:
        return
    G = [[sum(B[i][k] * B[j][k] for k in range(n)) + (i == j) for j in range(n)] for i in range(n)]
    got = sorted(short_vectors(G, bound))
    R = 12
    want = sorted(
        v for v in product(range(-R, R + 1), repeat=n)
        if sum(v[i] * G[i][j] * v[j] for i in range(n) for j in range(n)) <= bound
    )
    assert got == want


def test_enumerate_box_real_quadratic():
    F = field("realquad:2")
    got = {(x.coords()[0], x.coords()[1]) for x in enumerate_box(F, 8)}
    # brute force: a + b sqrt2 with |a +- b sqrt2| <= sqrt 8 (exact via squares)
    want = set()
    for a, b in product(range(-6, 7), repeat=2):
        ok = all(sympy.Abs(a + s * b * sympy.sqrt(2)) <= sympy.sqrt(8) for s in (1, -1))
        if ok:
            want.add((Fraction(a), Fraction(b)))
    assert got == want


def test_box_cap():
    with pytest.raises(ResourceBoundError):
        enumerate_box(field("poly:-1,-2,1,1"), 10**4, cap=50)


# --- square roots ----------------------------------------------------------------


@pytest.mark.parametrize("spec", ["realquad:2", "realquad:5", "poly:-1,-2,1,1", "multiquad:2,-17", "relquad:poly:-1,-2,1,1:-17"])
def test_sqrt_of_squares(spec):
    K = field(spec)
    for c in product(range(-2, 3), repeat=min(K.n, 3)):
        a = K.element(list(c) + [0] * (K.n - len(c)))
        r = sqrt_in_field(K, a * a)
        assert r is not None and r * r == a * a


def test_sqrt_non_squares():
    K = field("multiquad:2,-17")
    assert sqrt_in_field(K, K(-34)) is not None
    assert sqrt_in_field(K, K(-1)) is None
    assert sqrt_in_field(K, K(3)) is None
    F = field("realquad:5")
    assert sqrt_in_field(F, F(5)) is not None
    assert sqrt_in_field(F, F(-5)) is None


# --- automorphisms and subfields -----------------------------------------------


@pytest.mark.parametrize("spec,order,exponent", [
    ("realquad:2", 2, 2), ("poly:-1,-2,1,1", 3, 3), ("multiquad:2,-17", 4, 2),
    ("relquad:poly:-1,-2,1,1:-17", 6, 6), ("multiquad:-1,5", 4, 2),
])
def test_automorphism_group(spec, order, exponent):
    K = field(spec)
    auts = automorphisms(K)
    assert len(auts) == order
    assert group_exponent(K) == exponent
    a = K.element(list(range(1, K.n + 1)))
    b = K.element([1] + [0] * (K.n - 2) + [-1])
    for A in auts:
        assert K.apply_matrix(A, a * b) == K.apply_matrix(A, a) * K.apply_matrix(A, b)


def test_zeta7_plus_automorphism():
    F = field("poly:-1,-2,1,1")
    th = F.gen(1)
    images = {tuple(F.apply_matrix(A, th).num) for A in automorphisms(F)}
    assert tuple((th * th - 2).num) in images


def test_complex_conjugation_fixes_real_subfield():
    F = field("poly:-1,-2,1,1")
    k = field("relquad:poly:-1,-2,1,1:-17")
    c = complex_conjugation(k)
    y = lift(F, k, F.gen(1))
    assert k.apply_matrix(c, y) == y
    assert descend(F, k, y) == F.gen(1)


@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
@settings(max_examples=30, deadline=None)
def test_relative_norm_multiplicative(a, b):
    F, k = field("realquad:2"), field("multiquad:2,-17")
    A, B = k.element(a), k.element(b)
    assert relative_norm(F, k, A * B) == relative_norm(F, k, A) * relative_norm(F, k, B)
    assert relative_norm(F, k, A).norm() == A.norm()


@pytest.mark.parametrize("spec,subs", [
    ("multiquad:2,-17", [-34, -17, 2]), ("multiquad:-1,5", [-5, -1, 5]), ("poly:-1,-2,1,1", []),
    ("relquad:poly:-1,-2,1,1:-17", [-17]), ("quad:-5", [-5]),
])
def test_quadratic_subfields(spec, subs):
    assert quadratic_subfields(field(spec)) == subs
