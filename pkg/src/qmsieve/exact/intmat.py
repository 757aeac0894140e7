"""Integer and rational matrix kernels.

Matrices are plain lists of rows.  Hermite normal form is row style: the
rows of ``H`` span the same lattice as the input rows, pivots are positive,
and entries above a pivot lie in ``[0, pivot)``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*m)] if m else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v: Sequence, m: Sequence[Sequence]) -> list:
    n = len(m[0]) if m else 0
    out = [0] * n
    for a, row in zip(v, m):
        if a:
            for j, x in enumerate(row):
                out[j] += a * x
    return out


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rat_inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix by Gauss-Jordan."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def rat_solve_left(v: Sequence, m: Sequence[Sequence]) -> Optional[list[Fraction]]:
    """Some rational x with x * m = v, or None if there is none.

    ``m`` may be rectangular; when its rows are independent x is unique.
    """
    r = len(m)
    cols = len(v)
    # columns of m become equations: sum_i x_i m[i][c] = v[c]
    eqs = [[Fraction(m[i][c]) for i in range(r)] + [Fraction(v[c])] for c in range(cols)]
    piv_cols = []
    row = 0
    for c in range(r):
        piv = next((k for k in range(row, cols) if eqs[k][c] != 0), None)
        if piv is None:
            continue
        eqs[row], eqs[piv] = eqs[piv], eqs[row]
        inv = 1 / eqs[row][c]
        eqs[row] = [x * inv for x in eqs[row]]
        for k in range(cols):
            if k != row and eqs[k][c] != 0:
                f = eqs[k][c]
                eqs[k] = [x - f * y for x, y in zip(eqs[k], eqs[row])]
        piv_cols.append(c)
        row += 1
    if any(eqs[k][r] != 0 for k in range(row, cols)):
        return None
    x = [Fraction(0)] * r
    for k, c in enumerate(piv_cols):
        x[c] = eqs[k][r]
    return x


# --- Hermite normal form ---------------------------------------------------


def hnf(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style HNF with transform: returns (H, U) with H = U*m, U unimodular.

    Zero rows of the reduced matrix are kept at the bottom of ``H`` so that
    ``U`` stays square.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        # gcd-reduce column c among rows r..end
        while True:
            nz = [i for i in range(r, rows) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def hnf_rows(m: Iterable[Sequence[int]], modulus: Optional[int] = None) -> Matrix:
    """Nonzero rows of the row-style HNF of the lattice spanned by ``m``.

    With ``modulus`` D (D * Z^n must lie in the lattice) the computation is
    done modulo D, and the lattice is assumed full rank.
    """
    rows = [list(r) for r in m]
    if not rows:
        return []
    n = len(rows[0])
    return _hnf_rows_n(rows, n, modulus)


def hnf_rows_n(m: Iterable[Sequence[int]], n: int, modulus: Optional[int] = None) -> Matrix:
    """As hnf_rows, with the ambient dimension given (so ``m`` may be empty)."""
    return _hnf_rows_n([list(r) for r in m], n, modulus)


def _hnf_rows_n(rows: list, n: int, modulus: Optional[int]) -> Matrix:
    if modulus is not None:
        D = abs(modulus)
        lat = Lattice(n)
        for i in range(n):
            lat.add([D * int(i == j) for j in range(n)])
        lat.modulus = D
    else:
        lat = Lattice(n)
    for r in rows:
        lat.add(r)
    return lat.basis_rows()


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class Lattice:
    """Incremental row-style HNF of a sublattice of Z^n.

    ``add`` inserts a vector; with ``modulus`` set (a multiple of the
    lattice determinant, so that modulus * Z^n lies in the lattice) entries
    are kept reduced.
    """

    __slots__ = ("n", "rows", "modulus")

    def __init__(self, n: int, modulus: Optional[int] = None):
        self.n = n
        self.rows: dict[int, list[int]] = {}
        self.modulus = modulus

    def copy(self) -> "Lattice":
        other = Lattice(self.n, self.modulus)
        other.rows = {k: list(v) for k, v in self.rows.items()}
        return other

    def rank(self) -> int:
        return len(self.rows)

    def add(self, vec: Sequence[int]) -> bool:
        """Insert a vector; returns True if the lattice changed."""
        D = self.modulus
        v = [x % D for x in vec] if D is not None else list(vec)
        changed = False
        for c in range(self.n):
            if v[c] == 0:
                continue
            b = self.rows.get(c)
            if b is None:
                if v[c] < 0:
                    v = [-x for x in v]
                self.rows[c] = v
                self._reduce_above(c)
                return True
            x, y = b[c], v[c]
            if y % x == 0:
                q = y // x
                v = [p - q * r for p, r in zip(v, b)]
            else:
                g, s, t = _xgcd(x, y)
                nb = [s * p + t * q for p, q in zip(b, v)]
                v = [(x // g) * q - (y // g) * p for p, q in zip(b, v)]
                self.rows[c] = nb
                changed = True
                self._reduce_above(c)
            if D is not None:
                v = [a % D for a in v]
        if changed:
            self._normalize()
        return changed

    def _reduce_above(self, c: int) -> None:
        b = self.rows[c]
        D = self.modulus
        if D is not None:
            for j in range(c + 1, self.n):
                b[j] %= D
        p = b[c]
        for i, r in self.rows.items():
            if i < c and r[c]:
                q = r[c] // p
                if q:
                    self.rows[i] = [x - q * y for x, y in zip(r, b)]

    def _normalize(self) -> None:
        for c in sorted(self.rows):
            self._reduce_above(c)

    def basis_rows(self) -> Matrix:
        out = [self.rows[c] for c in sorted(self.rows)]
        out = [list(r) for r in out]
        # full reduction above pivots, left to right: reducing with a later
        # pivot row never touches earlier pivot columns
        piv = sorted(self.rows)
        for k in range(len(out)):
            c = piv[k]
            p = out[k][c]
            for i in range(k):
                q = out[i][c] // p
                if q:
                    out[i] = [x - q * y for x, y in zip(out[i], out[k])]
        return out

    def determinant(self) -> int:
        """Product of pivots (the index in Z^n when full rank, else 0)."""
        if len(self.rows) < self.n:
            return 0
        d = 1
        for c, r in self.rows.items():
            d *= r[c]
        return d

    def __contains__(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        for c in range(self.n):
            if v[c] == 0:
                continue
            b = self.rows.get(c)
            if b is None or v[c] % b[c]:
                return False
            q = v[c] // b[c]
            v = [x - q * y for x, y in zip(v, b)]
        return True


def in_row_span(vec: Sequence[int], h: Sequence[Sequence[int]]) -> bool:
    """Membership of an integer vector in the lattice of an HNF basis."""
    v = list(vec)
    for row in h:
        c = next(i for i, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


# --- Smith normal form -----------------------------------------------------


def snf(m: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d1 | d2 | ... (min(rows, cols) of them, zeros last)."""
    d, _, _ = snf_with_transform(m)
    return d


def snf_with_transform(m: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """Smith form D = U * m * V; returns (diagonal, U, V)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = identity(rows)
    v = identity(cols)
    t = 0
    while t < min(rows, cols):
        # pick the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        u[t], u[i] = u[i], u[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        for row in v:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # divisibility of the remaining block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
                u[t] = [x + y for x, y in zip(u[t], u[bad])]
                dirty = True
            # move the smallest entry of row/col t to the pivot
            best = None
            for i in range(t, rows):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                    best = (i, t, a[i][t])
            for j in range(t, cols):
                if a[t][j] and (best is None or abs(a[t][j]) < abs(best[2])):
                    best = (t, j, a[t][j])
            i, j, _ = best
            if i != t:
                a[t], a[i] = a[i], a[t]
                u[t], u[i] = u[i], u[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
                for row in v:
                    row[t], row[j] = row[j], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = [a[i][i] if i < rows and i < cols else 0 for i in range(min(rows, cols))]
    return diag, u, v


# --- LLL on a Gram matrix --------------------------------------------------


def lll_gram(gram: Sequence[Sequence], delta: Fraction = Fraction(3, 4)) -> Matrix:
    """Exact LLL on a positive definite rational Gram matrix.

    Returns a unimodular integer matrix T whose rows are the reduced basis
    expressed in the input basis (reduced Gram = T * G * T^t).
    """
    n = len(gram)
    G = [[Fraction(x) for x in row] for row in gram]
    T = identity(n)

    def ip(i, j):
        return G[i][j]

    def gs():
        mu = [[Fraction(0)] * n for _ in range(n)]
        B = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = ip(i, j) - sum(mu[j][k] * mu[i][k] * B[k] for k in range(j))
                mu[i][j] = s / B[j]
            B[i] = ip(i, i) - sum(mu[i][k] ** 2 * B[k] for k in range(i))
        return mu, B

    def row_op(i, j, q):
        # b_i -= q b_j
        T[i] = [x - q * y for x, y in zip(T[i], T[j])]
        for k in range(n):
            G[i][k] -= q * G[j][k]
        for k in range(n):
            G[k][i] -= q * G[k][j]

    def swap(i, j):
        T[i], T[j] = T[j], T[i]
        G[i], G[j] = G[j], G[i]
        for row in G:
            row[i], row[j] = row[j], row[i]

    k = 1
    mu, B = gs()
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                row_op(k, j, q)
                mu, B = gs()
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            swap(k, k - 1)
            mu, B = gs()
            k = max(k - 1, 1)
    return T
