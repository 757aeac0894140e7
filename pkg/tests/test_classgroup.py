"""Class groups: binary quadratic forms, relation lattices, discrete logs, Hilbert class fields."""
from itertools import product
from math import gcd, lcm, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import field
from qmsieve.classgroup.bqf import (
    bqf_class_group,
    compose,
    form_order,
    form_power,
    identity_form,
    inverse_form,
    is_fundamental,
    prime_form,
    reduce_form,
    reduced_forms,
    structure_from_orders,
)
from qmsieve.classgroup.hilbert import condition2_check, hilbert_containment, prime_discriminants
from qmsieve.classgroup.relations import class_group, ideal_class_dlog, ideal_from_exponents, principal_generator
from qmsieve.errors import InvalidInputError
from qmsieve.ideals import Ideal, decompose_prime

# class numbers of imaginary quadratic fields (standard tables)
H_IMAG = {-3: 1, -4: 1, -7: 1, -8: 1, -15: 2, -20: 2, -23: 3, -24: 2, -31: 3, -35: 2, -39: 4, -47: 5, -56: 4,
          -68: 4, -71: 7, -84: 4, -87: 6, -104: 6, -136: 4, -151: 7, -155: 4, -164: 8, -199: 9, -239: 15}


@pytest.mark.parametrize("D,h", sorted(H_IMAG.items()))
def test_bqf_class_numbers(D, h):
    assert bqf_class_group(D)[0] == h


def test_bqf_structures():
    assert bqf_class_group(-84) == (4, (2, 2))
    assert bqf_class_group(-56) == (4, (4,))
    assert bqf_class_group(-3299) == (27, (3, 9))
    with pytest.raises(InvalidInputError):
        bqf_class_group(-12)


@given(st.lists(st.integers(2, 12), min_size=0, max_size=3))
@settings(max_examples=80, deadline=None)
def test_structure_from_orders(cyclic):
    import sympy
    from sympy.matrices.normalforms import smith_normal_form

    # element orders of Z/c1 x ... x Z/cr; invariant factors from the Smith form of diag(c_i)
    orders = [lcm(1, *[c // gcd(c, a) for a, c in zip(x, cyclic)]) for x in product(*[range(c) for c in cyclic])]
    if cyclic:
        S = smith_normal_form(sympy.diag(*cyclic), domain=sympy.ZZ)
        want = sorted(abs(int(S[i, i])) for i in range(len(cyclic)) if abs(S[i, i]) > 1)
    else:
        want = []
    assert structure_from_orders(orders) == want


def test_fundamental():
    assert [D for D in range(-30, 0) if is_fundamental(D)] == [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3]


disc = st.sampled_from([-23, -47, -71, -84, -104, -164, -239, -3299])


@given(disc, st.data())
@settings(max_examples=40, deadline=None)
def test_form_group_laws(D, data):
    forms = reduced_forms(D)
    f, g, h = (data.draw(st.sampled_from(forms)) for _ in range(3))
    assert compose(compose(f, g), h) == compose(f, compose(g, h))
    assert compose(f, g) == compose(g, f)
    assert compose(f, identity_form(D)) == reduce_form(f)
    assert compose(f, inverse_form(f)) == identity_form(D)
    assert form_power(f, form_order(f)) == identity_form(D)
    a, b, c = f
    assert b * b - 4 * a * c == D


def test_prime_forms():
    D = -20
    assert prime_form(D, 3) is not None and prime_form(D, 3) != identity_form(D)
    assert prime_form(D, 29) == identity_form(D)  # 29 = 3^2 + 5*2^2
    assert prime_form(D, 13) is None  # inert: (-20/13) = -1


@pytest.mark.parametrize("spec,h,inv", [
    ("quad:-5", 2, (2,)), ("quad:-23", 3, (3,)), ("quad:-1", 1, ()), ("realquad:10", 2, (2,)),
    ("realquad:79", 3, (3,)), ("multiquad:-1,5", 1, ()), ("multiquad:2,-17", 8, None),
])
def test_class_group_values(spec, h, inv):
    cg = class_group(field(spec))
    assert cg.h == h
    if inv is not None:
        assert cg.invariants == inv
    assert cg.h == prod(cg.invariants)


def test_class_group_matches_forms_small():
    for m in (-5, -6, -14, -17, -21, -26, -29, -30, -65):
        D = 4 * m if m % 4 != 1 else m
        cg = class_group(field(f"quad:{m}"))
        assert (cg.h, cg.invariants) == bqf_class_group(D)


def test_dlog_is_a_homomorphism():
    K = field("quad:-23")
    cg = class_group(K)
    P = decompose_prime(K, 2)[0]
    Q = decompose_prime(K, 3)[0]
    d = cg.invariants
    a, b = ideal_class_dlog(cg, P.ideal), ideal_class_dlog(cg, Q.ideal)
    ab = ideal_class_dlog(cg, P.ideal * Q.ideal)
    assert ab == tuple((x + y) % n for x, y, n in zip(a, b, d))
    assert ideal_class_dlog(cg, P.ideal ** 3) == (0,)
    for gens in cg.generators:
        assert ideal_class_dlog(cg, ideal_from_exponents(cg, gens)) != (0,) * len(d)


def test_principal_generator():
    K = field("quad:-5")
    cg = class_group(K)
    P = decompose_prime(K, 2)[0]
    assert principal_generator(P.ideal, cg) is None
    Q7 = decompose_prime(K, 7)[0]
    g = principal_generator(Q7.ideal ** 2, cg)
    assert g is not None and Ideal.principal(K, g) == Q7.ideal ** 2
    x = K.element([3, 2])
    g = principal_generator(Ideal.principal(K, x), cg)
    assert Ideal.principal(K, g) == Ideal.principal(K, x)


def test_prime_discriminants():
    assert prime_discriminants(-20) == [-4, 5]
    assert prime_discriminants(-84) == [-7, -4, -3]
    assert prime_discriminants(-136) == [-8, 17]


def test_hilbert_containment_steps():
    assert hilbert_containment(field("quad:-7"), -7).kind == "contains"
    v = hilbert_containment(field("quad:-5"), -5)
    assert (v.kind, v.step) == ("not_contains", "degree obstruction")
    # Q(i, sqrt 5) is the Hilbert class field of Q(sqrt -5)
    v = hilbert_containment(field("multiquad:-1,5"), -5)
    assert (v.kind, v.step) == ("contains", "genus field")
    v = hilbert_containment(field("multiquad:2,-17"), -17)
    assert v.kind == "not_contains"


def test_condition2():
    assert condition2_check(field("multiquad:2,-17"))["outcome"] == "pass"
    assert condition2_check(field("quad:-7"))["outcome"] == "fail"
    assert condition2_check(field("quad:-5"))["outcome"] == "pass"
    assert condition2_check(field("multiquad:-1,5"))["outcome"] == "fail"
