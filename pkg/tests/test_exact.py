"""Exact core: integers, integer polynomials, integer matrices, arithmetic mod p.

sympy serves as the independent oracle throughout.
"""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qmsieve.exact.integers import euler_phi, factor_integer, is_prime, is_square, legendre, primes_up_to, squarefree_part
from qmsieve.exact.intmat import (
    Lattice,
    det,
    hnf_rows,
    in_row_span,
    lll_gram,
    matmul,
    rat_inverse,
    rat_solve_left,
    snf,
    snf_with_transform,
)
from qmsieve.exact.modp import factor_poly_mod_p, kernel_mod, rank_mod
from qmsieve.exact.poly import (
    IntPolynomial,
    cyclotomic,
    isolate_real_roots,
    poly_gcd,
    real_cyclotomic,
    resultant,
    resultant_sylvester,
    sturm_count,
)

x = sympy.Symbol("x")
small_ints = st.integers(min_value=-20, max_value=20)
polys = st.lists(small_ints, min_size=2, max_size=6).filter(lambda c: c[-1] != 0)


def to_sympy(p: IntPolynomial):
    return sympy.Poly(list(reversed(p.coeffs)), x)


def sylvester_det(a, b) -> int:
    """Res(a, b) as the determinant of the Sylvester matrix (sympy.resultant differs in sign for some inputs)."""
    A, B = list(reversed(a)), list(reversed(b))
    m, n = len(A) - 1, len(B) - 1
    rows = [[0] * i + A + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + B + [0] * (m - 1 - i) for i in range(m)]
    return int(sympy.Matrix(rows).det())


# --- integers ----------------------------------------------------------------


def test_primes_match_sympy():
    assert list(primes_up_to(500)) == list(sympy.primerange(2, 501))
    assert all(is_prime(n) == sympy.isprime(n) for n in range(-5, 2000))


@given(st.integers(min_value=1, max_value=10**12))
@settings(max_examples=60, deadline=None)
def test_factor_integer(n):
    assert factor_integer(n) == sympy.factorint(n)


@given(st.integers(min_value=1, max_value=5000))
def test_phi_square_squarefree(n):
    assert euler_phi(n) == sympy.totient(n)
    assert is_square(n) == (sympy.sqrt(n).is_integer)
    s = squarefree_part(n)
    assert n % s == 0 and is_square(n // s) and sympy.factorint(s) == {p: 1 for p in sympy.factorint(s)}


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 101])
def test_legendre(p):
    assert all(legendre(a, p) == sympy.legendre_symbol(a % p, p) for a in range(1, 3 * p) if a % p)


# --- polynomials ---------------------------------------------------------------


@given(polys)
@settings(max_examples=80, deadline=None)
def test_sturm_count_matches_real_roots(c):
    p = IntPolynomial(c)
    assert sturm_count(p) == len(set(sympy.real_roots(to_sympy(p))))


def test_isolation_example():
    p = IntPolynomial([-1, -2, 1, 1])
    ivs = isolate_real_roots(p, Fraction(1, 16))
    assert len(ivs) == 3
    approx = sorted(float(r) for r in sympy.Poly(x**3 + x**2 - 2 * x - 1).nroots())
    for iv, r in zip(ivs, approx):
        assert iv.width <= Fraction(1, 16)
        assert float(iv.lo) <= r <= float(iv.hi)


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_resultant_and_gcd(a, b):
    A, B = IntPolynomial(a), IntPolynomial(b)
    r = sylvester_det(A.coeffs, B.coeffs)
    assert resultant(A, B) == r == resultant_sylvester(A, B)
    g = poly_gcd(A, B)
    gs = sympy.gcd(to_sympy(A), to_sympy(B))
    assert g.degree == gs.degree()


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclotomic(m):
    assert list(reversed(cyclotomic(m).coeffs)) == sympy.Poly(sympy.cyclotomic_poly(m, x)).all_coeffs()
    # the minimal polynomial of 2cos(2 pi/m)
    theta = 2 * sympy.cos(2 * sympy.pi / m)
    assert list(reversed(real_cyclotomic(m).coeffs)) == sympy.Poly(sympy.minimal_polynomial(theta, x)).all_coeffs()


@given(polys, st.sampled_from([2, 3, 5, 7, 13]))
@settings(max_examples=80, deadline=None)
def test_factor_mod_p(c, p):
    P = sympy.Poly(list(reversed(c)), x, modulus=p)
    if P.is_zero or P.degree() < 1:
        return
    ours = factor_poly_mod_p(c, p)
    _, theirs = P.factor_list()
    key = lambda fs: sorted((len(f) - 1, m) for f, m in fs)  # noqa: E731
    assert key(ours) == sorted((g.degree(), m) for g, m in theirs)
    prod = sympy.Poly([1], x, modulus=p)
    for f, m in ours:
        prod *= sympy.Poly(list(reversed(f)), x, modulus=p) ** m
    assert (prod * P.LC()).all_coeffs() == P.all_coeffs()


# --- integer matrices ----------------------------------------------------------

mats = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(mats)
@settings(max_examples=80, deadline=None)
def test_det_inverse(m):
    M = sympy.Matrix(m)
    assert det(m) == M.det()
    if M.det() != 0:
        inv = rat_inverse(m)
        assert matmul(m, inv) == [[Fraction(int(i == j)) for j in range(len(m))] for i in range(len(m))]


@given(mats)
@settings(max_examples=80, deadline=None)
def test_snf_matches_sympy(m):
    from sympy.matrices.normalforms import smith_normal_form

    S = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    theirs = [abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]
    assert [d for d in snf(m) if d != 0] == theirs


@given(mats)
@settings(max_examples=60, deadline=None)
def test_snf_transform(m):
    d, U, V = snf_with_transform(m)
    D = matmul(matmul(U, m), V)
    n = len(m)
    assert all(D[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    assert abs(det(U)) == 1 and abs(det(V)) == 1


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=6))
@settings(max_examples=80, deadline=None)
def test_hnf_spans_same_lattice(rows):
    H = hnf_rows(rows)
    # every input row lies in the span of H and vice versa
    assert all(in_row_span(r, H) for r in rows)
    lat = Lattice(3)
    for r in rows:
        lat.add(r)
    assert all(in_row_span(r, lat.basis_rows()) for r in H)
    assert all(in_row_span(r, H) for r in lat.basis_rows())


def test_lattice_determinant_and_reduction():
    lat = Lattice(3)
    for r in ([13, 20, 0], [0, 13, 0], [0, 0, 13], [1, 5, 7]):
        lat.add(r)
    B = lat.basis_rows()
    assert lat.determinant() == abs(sympy.Matrix(B).det())
    # fully reduced: entries above each pivot are in [0, pivot)
    for i, row in enumerate(B):
        piv = next(j for j, a in enumerate(row) if a)
        assert all(0 <= B[k][piv] < row[piv] for k in range(i))


def test_rat_solve_left():
    m = [[2, 1], [1, 3]]
    v = [Fraction(5), Fraction(10)]
    s = rat_solve_left(v, m)
    assert [sum(s[i] * m[i][j] for i in range(2)) for j in range(2)] == v


def test_lll_gram_reduces():
    gram = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    basis = [[1, 0, 0], [7, 1, 0], [13, 22, 1]]
    G = matmul(matmul(basis, gram), [list(r) for r in zip(*basis)])
    T = lll_gram(G)
    red = matmul(T, basis)
    assert abs(det(T)) == 1
    assert sorted(sum(a * a for a in r) for r in red) == [1, 1, 1]


@given(st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_rank_and_kernel_mod(rows):
    from sympy.polys.domains import GF
    from sympy.polys.matrices import DomainMatrix

    p = 7
    r = rank_mod(rows, p)
    assert r == DomainMatrix([[GF(p)(a) for a in row] for row in rows], (len(rows), 4), GF(p)).rank()
    for v in kernel_mod(rows, p):
        assert all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in rows)
    assert len(kernel_mod(rows, p)) == 4 - r
