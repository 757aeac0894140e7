"""Quaternion algebras: ramification input, discriminants, local squares, splitting fields."""
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import field
from oracles import oracle_is_local_square
from qmsieve.errors import InvalidInputError
from qmsieve.ideals import decompose_prime
from qmsieve.quaternion import (
    build_quaternion,
    delta,
    delta_prime,
    disc_BF,
    is_local_square,
    parse_ram,
    split_witnesses,
    splits_B,
    sufficient_condition,
)


def test_splits_examples():
    Q = field("Q")
    B = parse_ram(Q, "ram:2,3")
    assert splits_B(B, 13) is True
    assert splits_B(B, 7) is False and split_witnesses(B, 7) == ["2.0"]
    assert splits_B(B, 5) is False and split_witnesses(B, 5) == ["3.0"]


def test_splits_matches_hilbert_symbol_over_Q():
    # over Q, -l is a square in Q_p (p odd, p != l) iff (-l/p) = 1; in Q_2 iff -l = 1 mod 8
    import sympy

    Q = field("Q")
    B = parse_ram(Q, "ram:2,3")
    for ell in sympy.primerange(5, 200):
        at3 = sympy.legendre_symbol((-ell) % 3, 3) == 1
        at2 = (-ell) % 8 == 1
        assert splits_B(B, ell) == (not at2 and not at3)


def test_discriminants():
    F = field("realquad:2")
    B = parse_ram(F, "ram:7")
    assert [P.label() for P in B.ram] == ["7.0", "7.1"]
    assert disc_BF(B).norm() == 49
    assert delta_prime(B) == 7 and delta(B) == 14
    assert parse_ram(F, "ram:@7.0,7.1") == B


@pytest.mark.parametrize("text", ["ram:2", "ram:2,2,3,5", "ram:", "rm:2,3", "ram:@2.5,3.0", "ram:x"])
def test_bad_algebras(text):
    with pytest.raises(InvalidInputError):
        parse_ram(field("Q"), text)


def test_needs_totally_real_base():
    k = field("quad:-5")
    with pytest.raises(InvalidInputError):
        build_quaternion(k, decompose_prime(k, 3)[:1] + decompose_prime(k, 7)[:1])


def test_sufficient_condition():
    F = field("realquad:2")
    k = field("multiquad:2,-17")
    assert sufficient_condition(parse_ram(F, "ram:7"), k) == (True, ["7.0", "7.1"])
    assert sufficient_condition(parse_ram(F, "ram:17"), k) == (False, [])


@pytest.mark.parametrize("spec", ["Q", "realquad:2", "realquad:5"])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_local_squares_against_exhaustive_squaring(spec, p):
    F = field(spec)
    for P in decompose_prime(F, p):
        for c in product(range(-4, 5), repeat=F.n):
            if any(c):
                u = F.element(list(c))
                assert is_local_square(u, P) == oracle_is_local_square(u, P), (c, P)


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=2).filter(any), st.sampled_from([2, 3, 7, 17]))
@settings(max_examples=60, deadline=None)
def test_squares_are_local_squares(c, p):
    F = field("realquad:2")
    u = F.element(c)
    for P in decompose_prime(F, p):
        assert is_local_square(u * u, P)
        assert is_local_square(u * u * 4, P)


def test_local_square_rejects_zero():
    F = field("Q")
    with pytest.raises(InvalidInputError):
        is_local_square(F(0), decompose_prime(F, 3)[0])
