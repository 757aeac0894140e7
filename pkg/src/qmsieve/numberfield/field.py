"""Number fields given by an integral basis, and their elements."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd
from numbers import Rational
from typing import Iterable, Optional, Sequence

from ..exact.intmat import det, matmul, rat_inverse, transpose
from ..exact.poly import IntPolynomial, sturm_count
from .ambient import Ambient
from .order import IntTable, omul, trace_matrix, trace_vector


def charpoly_int(M: Sequence[Sequence[int]]) -> IntPolynomial:
    """Characteristic polynomial det(xI - M) of an integer matrix (Faddeev-LeVerrier)."""
    n = len(M)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # Mk = M * M_{k-1} + c_{n-k+1} I
        Mk = matmul(M, Mk) if k > 1 else [[0] * n for _ in range(n)]
        for i in range(n):
            Mk[i][i] += c
        AM = matmul(M, Mk)
        tr = sum(AM[i][i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs[n - k] = c
    return IntPolynomial(coeffs)


class NumberField:
    """A number field with a fixed integral basis w_0 = 1, w_1, ..., w_{n-1}.

    ``table[i][j]`` holds the integer coordinates of w_i * w_j.  Fields are
    totally real or CM; ``conj`` is complex conjugation on the basis (None
    for totally real fields).
    """

    def __init__(
        self,
        spec,
        ambient: Ambient,
        W: list[list[Fraction]],
        table: IntTable,
        disc: int,
        index_primes: tuple[int, ...],
        conj: Optional[list[list[int]]],
    ):
        self.spec = spec
        self.ambient = ambient
        self.W = W
        self.Winv = rat_inverse(W)
        self.table = table
        self.n = len(table)
        self.disc = disc
        self.index_primes = index_primes
        self.conj = conj
        self._cache: dict = {}

    # --- descriptive -------------------------------------------------------
    @property
    def degree(self) -> int:
        return self.n

    @property
    def is_totally_real(self) -> bool:
        return self.conj is None

    @property
    def signature(self) -> tuple[int, int]:
        return (self.n, 0) if self.conj is None else (0, self.n // 2)

    @property
    def label(self) -> str:
        return self.spec.label()

    def __repr__(self) -> str:
        return f"NumberField({self.label}, degree {self.n}, disc {self.disc})"

    # --- elements ----------------------------------------------------------
    def element(self, coords: Sequence, den: int = 1) -> "FieldElement":
        fr = [Fraction(c) / den for c in coords]
        d = 1
        for x in fr:
            d = d * x.denominator // gcd(d, x.denominator)
        return FieldElement(self, tuple(int(x * d) for x in fr), d)

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise ValueError("element of another field")
            return x
        if isinstance(x, (int, Rational)):
            q = Fraction(x)
            return FieldElement(self, (q.numerator,) + (0,) * (self.n - 1), q.denominator)
        return self.element(x)

    def one(self) -> "FieldElement":
        return self(1)

    def zero(self) -> "FieldElement":
        return self(0)

    def gen(self, i: int) -> "FieldElement":
        return FieldElement(self, tuple(int(k == i) for k in range(self.n)), 1)

    def from_ambient(self, v: Sequence) -> "FieldElement":
        n = self.n
        coords = [sum(Fraction(v[k]) * self.Winv[k][c] for k in range(n) if v[k]) for c in range(n)]
        return self.element(coords)

    def to_ambient(self, x: "FieldElement") -> list[Fraction]:
        n = self.n
        return [sum(Fraction(x.num[k]) * self.W[k][c] for k in range(n) if x.num[k]) / x.den for c in range(n)]

    # --- matrices ----------------------------------------------------------
    def mult_matrix(self, a: Sequence[int]) -> list[list[int]]:
        """Row j = coordinates of a * w_j."""
        n = self.n
        M = [[0] * n for _ in range(n)]
        for i, x in enumerate(a):
            if not x:
                continue
            ti = self.table[i]
            for j in range(n):
                row = M[j]
                for k, c in enumerate(ti[j]):
                    if c:
                        row[k] += x * c
        return M

    @cached_property
    def trace_vector(self) -> list[int]:
        return trace_vector(self.table)

    @cached_property
    def trace_matrix(self) -> list[list[int]]:
        return trace_matrix(self.table)

    @cached_property
    def t2_gram(self) -> list[list[int]]:
        """Gram matrix of T2(x) = sum |sigma(x)|^2 on the integral basis."""
        T = self.trace_matrix
        if self.conj is None:
            return [list(r) for r in T]
        return matmul(T, transpose(self.conj))

    def mul_coords(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        return omul(self.table, a, b)

    def apply_matrix(self, mat: Sequence[Sequence[int]], x: "FieldElement") -> "FieldElement":
        n = self.n
        out = [0] * n
        for a, row in zip(x.num, mat):
            if a:
                for j, c in enumerate(row):
                    if c:
                        out[j] += a * c
        return FieldElement(self, tuple(out), x.den)

    def conjugate(self, x: "FieldElement") -> "FieldElement":
        if self.conj is None:
            return x
        return self.apply_matrix(self.conj, x)

    def t2(self, x: "FieldElement") -> Fraction:
        G = self.t2_gram
        s = sum(x.num[i] * G[i][j] * x.num[j] for i in range(self.n) for j in range(self.n))
        return Fraction(s, x.den * x.den)

    def float_embeddings(self):
        """Approximate complex embeddings of the basis (numpy array, rows = places).

        Used only to propose candidates that are then verified exactly.
        """
        if "float_emb" not in self._cache:
            import numpy as np

            # a generic element separates the embeddings
            for shift in range(1, 50):
                coords = [0] + [shift ** k for k in range(1, self.n)]
                M = np.array(self.mult_matrix(coords), dtype=float)
                vals, vecs = np.linalg.eig(M)
                if len(set(np.round(vals, 6))) == self.n:
                    break
            emb = (vecs / vecs[0, :]).T  # row sigma: (sigma(w_0), ..., sigma(w_{n-1}))
            order = np.lexsort((emb[:, 1].imag if self.n > 1 else emb[:, 0].imag, emb[:, 1].real if self.n > 1 else emb[:, 0].real))
            self._cache["float_emb"] = emb[order]
        return self._cache["float_emb"]


class FieldElement:
    """num / den in the integral basis coordinates; gcd(num, den) = 1, den > 0."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: NumberField, num: Sequence[int], den: int = 1):
        num = tuple(num)
        if den < 0:
            num, den = tuple(-x for x in num), -den
        g = den
        for x in num:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            num, den = tuple(x // g for x in num), den // g
        if not any(num):
            den = 1
        self.field = field
        self.num = num
        self.den = den

    # --- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, [a * other for a in self.num], self.den)
        o = self._coerce(other)
        return FieldElement(self.field, self.field.mul_coords(self.num, o.num), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        M = self.field.mult_matrix(self.num)
        one = [1] + [0] * (self.field.n - 1)
        inv = rat_inverse(M)
        coords = [sum(one[k] * inv[k][c] for k in range(self.field.n)) for c in range(self.field.n)]
        return self.field.element([c * self.den for c in coords])

    def __truediv__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, self.num, self.den * other)
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # --- comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.field is self.field and other.num == self.num and other.den == self.den
        if isinstance(other, (int, Rational)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.num, self.den))

    def sort_key(self) -> tuple:
        return (self.den, self.num)

    def __lt__(self, other: "FieldElement") -> bool:
        return self.sort_key() < other.sort_key()

    # --- predicates and invariants -----------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def mult_matrix(self) -> list[list[int]]:
        return self.field.mult_matrix(self.num)

    def norm(self) -> Fraction:
        return Fraction(det(self.mult_matrix()), self.den ** self.field.n)

    def trace(self) -> Fraction:
        return Fraction(sum(a * t for a, t in zip(self.num, self.field.trace_vector)), self.den)

    def charpoly(self) -> IntPolynomial:
        """Characteristic polynomial over Q (requires an integral element)."""
        if self.den != 1:
            raise ValueError("char_poly requires an integral element")
        return charpoly_int(self.mult_matrix())

    def numerator_charpoly(self) -> IntPolynomial:
        return charpoly_int(self.mult_matrix())

    def coords(self) -> list[Fraction]:
        return [Fraction(a, self.den) for a in self.num]

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": self.den}

    def __repr__(self) -> str:
        parts = [f"{a}*w{i}" if i else str(a) for i, a in enumerate(self.num) if a]
        s = " + ".join(parts) or "0"
        return f"({s})/{self.den}" if self.den != 1 else s


def is_totally_nonneg(x: FieldElement) -> bool:
    """sigma(x) >= 0 at every real place (x should be fixed by complex conjugation)."""
    if x.is_zero():
        return True
    cp = x.numerator_charpoly()
    return sturm_count(cp, None, 0) == 0


def is_totally_positive(x: FieldElement) -> bool:
    if x.is_zero():
        return False
    cp = x.numerator_charpoly()
    return sturm_count(cp, None, 0) == 0 and cp(0) != 0


def is_totally_neg(x: FieldElement) -> bool:
    if x.is_zero():
        return False
    cp = x.numerator_charpoly()
    return sturm_count(cp, 0, None) == 0 and cp(0) != 0


def norm(x: FieldElement) -> Fraction:
    return x.norm()


def trace(x: FieldElement) -> Fraction:
    return x.trace()


def char_poly(x: FieldElement) -> IntPolynomial:
    return x.charpoly()


def canonical_sorted(xs: Iterable[FieldElement]) -> list[FieldElement]:
    return sorted(xs, key=FieldElement.sort_key)
