"""Exact entry rings for twisted adjacency matrices.

Entries are Python ints, ``Fraction`` or :class:`Cyclo` (elements of
``Q(zeta_m)`` in the power basis modulo the m-th cyclotomic polynomial).
The matrix helpers here only use ``+``, ``-``, ``*`` (and ``inverse`` for
rank), so they work over any of these.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence[object]]

# m values whose Hermitian char polys have rational coefficients
EXACT_MODULI = frozenset({1, 2, 3, 4, 6})


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # monic integer division, coefficients lowest degree first
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, lowest first."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod_int(num, list(cyclotomic_poly(d)))
            assert not any(rem)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    # power-basis coordinates of x^k mod Phi_m for 0 <= k < 2*phi(m) - 1 and k < m
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    top = max(2 * deg - 1, m)
    for _ in range(top):
        rows.append(tuple(cur))
        # multiply by x and reduce
        carry = cur[-1]
        cur = [0] + cur[:-1]
        if carry:
            for j in range(deg):
                cur[j] -= carry * phi[j]
    return tuple(rows)


class Cyclo:
    """Element of Q(zeta_m), zeta_m = exp(2*pi*i/m)."""

    __slots__ = ("m", "c")

    def __init__(self, m: int, coeffs: Sequence[object]):
        deg = len(cyclotomic_poly(m)) - 1
        c = list(coeffs) + [0] * (deg - len(coeffs))
        if len(c) > deg:
            c = _reduce(m, c)
        self.m = m
        self.c = tuple(c)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> Cyclo:
        return cls(m, _reduction_table(m)[k % m])

    @classmethod
    def rational(cls, m: int, q: object) -> Cyclo:
        return cls(m, [q])

    def _coerce(self, other: object) -> Cyclo | None:
        if isinstance(other, Cyclo):
            if other.m != self.m:
                raise ValueError(f"mixed cyclotomic moduli {self.m} and {other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.m, [other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclo(self.m, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.m, [-a for a in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclo(self.m, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.m, [a * other for a in self.c])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = [0] * (2 * len(self.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return Cyclo(self.m, _reduce(self.m, prod))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.m == other.m and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.m, self.c))

    def __repr__(self):
        return f"Cyclo({self.m}, {list(self.c)})"

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.c[0])

    def galois(self, j: int) -> Cyclo:
        """Image under zeta -> zeta^j (j coprime to m)."""
        table = _reduction_table(self.m)
        out = [0] * len(self.c)
        for k, a in enumerate(self.c):
            if a:
                for t, b in enumerate(table[(j * k) % self.m]):
                    out[t] += a * b
        return Cyclo(self.m, out)

    def conjugate(self) -> Cyclo:
        return self.galois(-1 % self.m if self.m > 1 else 1)

    def inverse(self) -> Cyclo:
        if not any(self.c):
            raise ZeroDivisionError("inverse of zero")
        others = Cyclo(self.m, [1])
        for j in range(2, self.m):
            if gcd(j, self.m) == 1:
                others = others * self.galois(j)
        norm = (self * others).to_rational()
        return others * Fraction(1, 1) * (Fraction(1) / norm)

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.m)
        return complex(sum(complex(float(a)) * z**k for k, a in enumerate(self.c)))


def _reduce(m: int, prod: list) -> list:
    table = _reduction_table(m)
    deg = len(cyclotomic_poly(m)) - 1
    out = list(prod[:deg]) + [0] * max(0, deg - len(prod))
    for k in range(deg, len(prod)):
        a = prod[k]
        if a:
            row = table[k] if k < len(table) else _power(m, k)
            for t in range(deg):
                if row[t]:
                    out[t] += a * row[t]
    return out


@lru_cache(maxsize=None)
def _power(m: int, k: int) -> tuple[int, ...]:
    return _reduction_table(m)[k % m]


# ---------------------------------------------------------------------------
# matrices (lists of rows)


def zeros(n: int, k: int | None = None) -> list[list[object]]:
    return [[0] * (n if k is None else k) for _ in range(n)]


def identity(n: int) -> list[list[object]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> list[list[object]]:
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def matsub(a: Matrix, b: Matrix) -> list[list[object]]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def freeze(a: Matrix) -> tuple[tuple[object, ...], ...]:
    return tuple(tuple(row) for row in a)


def berkowitz(a: Matrix) -> list[object]:
    """Coefficients of det(xI - A), lowest degree first, without division.

    Grows the leading principal submatrix one row/column at a time using
    det(xI - [[M, c], [r, a]]) = (x - a) p_M(x) - r adj(xI - M) c and the
    expansion of the adjugate in powers of M.
    """
    n = len(a)
    # p holds coefficients highest degree first: p[0] = 1
    p: list[object] = [1]
    for k in range(n):
        akk = a[k][k]
        if k == 0:
            p = [1, -akk]
            continue
        r = [a[k][j] for j in range(k)]
        c = [a[i][k] for i in range(k)]
        # s[t] = r . M^t . c
        s = []
        v = c
        for _ in range(k):
            acc = 0
            for x, y in zip(r, v):
                if x and y:
                    acc = acc + x * y
            s.append(acc)
            nv = []
            for i in range(k):
                acc = 0
                row = a[i]
                for j in range(k):
                    x = row[j]
                    if x:
                        y = v[j]
                        if y:
                            acc = acc + x * y
                nv.append(acc)
            v = nv
        new = [0] * (k + 2)
        for i, ci in enumerate(p):
            new[i] = new[i] + ci
            new[i + 1] = new[i + 1] - akk * ci
        # subtract sum_i x^{k-1-i} sum_{j<=i} p[j] s[i-j]
        for i in range(k):
            acc = 0
            for j in range(i + 1):
                if p[j] and s[i - j]:
                    acc = acc + p[j] * s[i - j]
            new[i + 2] = new[i + 2] - acc
        p = new
    return list(reversed(p))


def _to_field(x: object) -> object:
    if isinstance(x, int):
        return Fraction(x)
    return x


def _inv(x: object) -> object:
    if isinstance(x, Cyclo):
        return x.inverse()
    return 1 / x


def rank(a: Matrix) -> int:
    """Exact rank over Q or Q(zeta_m) by Gaussian elimination."""
    rows = [[_to_field(x) for x in row] for row in a]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = _inv(rows[rk][col])
        for i in range(rk + 1, len(rows)):
            f = rows[i][col]
            if f != 0:
                f = f * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def det(a: Matrix) -> object:
    """Exact determinant by Gaussian elimination (independent of Berkowitz)."""
    rows = [[_to_field(x) for x in row] for row in a]
    n = len(rows)
    sign = 1
    result: object = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        p = rows[col][col]
        result = result * p
        inv = _inv(p)
        for i in range(col + 1, n):
            f = rows[i][col]
            if f != 0:
                f = f * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return result * sign


def to_complex_matrix(a: Matrix):
    import numpy as np

    return np.array([[complex(x) for x in row] for row in a], dtype=complex)


def inverse_matrix(a: Matrix) -> list[list[object]]:
    """Exact inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(a)
    rows = [[_to_field(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = _inv(rows[col][col])
        rows[col] = [x * inv for x in rows[col]]
        for i in range(n):
            if i != col:
                f = rows[i][col]
                if f != 0:
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return [[_simplify(x) for x in row[n:]] for row in rows]


def _simplify(x: object) -> object:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x
